#include "intres/json_io.hpp"

#include <stdexcept>
#include <string>

namespace intres {

namespace {

std::string edge_key(int x, int y) { return std::to_string(x) + "->" + std::to_string(y); }

}  // namespace

json poset_to_json(const Poset& p) {
    json j;
    if (p.is_grid()) {
        j["kind"] = "grid";
        j["m"] = p.grid_m;
        j["n"] = p.grid_n;
    } else {
        j["kind"] = "hasse";
        j["elements"] = p.names;
        json edges = json::array();
        for (auto [a, b] : p.hasse_edges) edges.push_back(json::array({a, b}));
        j["edges"] = std::move(edges);
    }
    return j;
}

std::shared_ptr<const Poset> poset_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "grid") return make_grid(j.at("m").get<int>(), j.at("n").get<int>());
    if (kind == "hasse") {
        auto elements = j.at("elements").get<std::vector<std::string>>();
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw std::invalid_argument("edge must be a pair");
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        return make_poset_from_hasse(elements, edges);
    }
    throw std::invalid_argument("unknown poset kind: " + kind);
}

json interval_to_json(const Interval& iv) {
    json j;
    j["members"] = iv.members;
    if (!iv.staircase.empty()) {
        json stair = json::array();
        for (const auto& st : iv.staircase) stair.push_back(json::array({st.row, st.lo, st.hi}));
        j["staircase"] = std::move(stair);
    }
    return j;
}

Interval interval_from_json(const json& j, const Poset& p) {
    return make_interval(p, j.at("members").get<std::vector<int>>());
}

json matrix_to_json(const FpMatrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(int(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

FpMatrix matrix_from_json(const json& j, int rows, int cols, fp_t p) {
    if (!j.is_array() || int(j.size()) != rows)
        throw std::invalid_argument("matrix needs " + std::to_string(rows) + " rows");
    FpMatrix m(rows, cols, p);
    for (int r = 0; r < rows; ++r) {
        const auto& row = j[r];
        if (!row.is_array() || int(row.size()) != cols)
            throw std::invalid_argument("matrix row needs " + std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c) {
            long long v = row[c].get<long long>() % (long long)(p);
            m.set(r, c, fp_t(v < 0 ? v + p : v));
        }
    }
    return m;
}

json module_to_json(const PersistenceModule& m) {
    const Poset& p = m.poset();
    json j;
    j["poset"] = poset_to_json(p);
    j["field"] = m.field();
    json dims;
    for (int v = 0; v < p.size(); ++v) dims[std::to_string(v)] = m.dim(v);
    j["dims"] = std::move(dims);
    json maps;
    for (std::size_t e = 0; e < p.hasse_edges.size(); ++e) {
        auto [x, y] = p.hasse_edges[e];
        maps[edge_key(x, y)] = matrix_to_json(m.arrow(int(e)));
    }
    j["maps"] = std::move(maps);
    return j;
}

PersistenceModule module_from_json(const json& j) {
    auto p = poset_from_json(j.at("poset"));
    fp_t field = j.at("field").get<fp_t>();
    if (!is_prime(field)) throw std::invalid_argument("field must be a prime");
    const auto& dims_json = j.at("dims");
    std::vector<int> dims(p->size(), 0);
    for (int v = 0; v < p->size(); ++v) {
        int d = dims_json.at(std::to_string(v)).get<int>();
        if (d < 0) throw std::invalid_argument("negative dimension at vertex " + std::to_string(v));
        dims[v] = d;
    }
    const auto& maps_json = j.at("maps");
    std::vector<FpMatrix> arrows;
    arrows.reserve(p->hasse_edges.size());
    for (auto [x, y] : p->hasse_edges)
        arrows.push_back(matrix_from_json(maps_json.at(edge_key(x, y)), dims[y], dims[x], field));
    return PersistenceModule(std::move(p), field, std::move(dims), std::move(arrows));
}

json morphism_to_json(const ModuleMorphism& f) {
    json j;
    j["source"] = module_to_json(f.source);
    j["target"] = module_to_json(f.target);
    json comps;
    for (std::size_t v = 0; v < f.components.size(); ++v)
        comps[std::to_string(v)] = matrix_to_json(f.components[v]);
    j["components"] = std::move(comps);
    return j;
}

json resolution_to_json(const IntervalResolution& r, const IntervalPoset& ip,
                        const ResolutionChecks* checks) {
    json j;
    j["length"] = r.length();
    auto table = r.table();
    json rows = json::array();
    for (int i = 0; i < ip.size(); ++i) {
        bool all_zero = true;
        for (int d : table[i])
            if (d != 0) all_zero = false;
        if (all_zero) continue;
        json row;
        row["interval"] = interval_to_json(ip.at(i));
        row["mults"] = table[i];
        rows.push_back(std::move(row));
    }
    j["table"] = std::move(rows);
    if (checks) {
        json c;
        c["surjective"] = checks->surjective;
        c["exact"] = checks->exact;
        c["approximation"] = checks->approximation;
        j["checks"] = std::move(c);
    }
    return j;
}

json profile_to_json(const CompressedProfile& prof, const IntervalPoset& ip) {
    json j;
    for (const char* key : {"c", "delta"}) {
        const auto& values = key == std::string("c") ? prof.c : prof.delta;
        json list = json::array();
        for (int i = 0; i < ip.size(); ++i) {
            json entry;
            entry["interval"] = interval_to_json(ip.at(i));
            entry["value"] = values[i];
            list.push_back(std::move(entry));
        }
        j[key] = std::move(list);
    }
    return j;
}

json zigzag_to_json(const ZigzagModule& z) {
    json j;
    j["field"] = z.field;
    j["spaces"] = z.spaces;
    json maps = json::array();
    for (const auto& m : z.maps) maps.push_back(matrix_to_json(m));
    j["maps"] = std::move(maps);
    return j;
}

}  // namespace intres
