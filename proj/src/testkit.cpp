#include "intres/testkit.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace intres {

std::vector<Interval> oracle_intervals(const Poset& p) {
    int n = p.size();
    if (n > 20) throw std::invalid_argument("subset oracle limited to 20 vertices");
    std::vector<Interval> out;
    for (std::uint32_t bits = 1; bits < (std::uint32_t(1) << n); ++bits) {
        Bitset s(n);
        for (int v = 0; v < n; ++v)
            if (bits >> v & 1) s.set(v);
        if (!is_connected_subset(p, s)) continue;
        if (!(convex_closure(p, s) == s)) continue;
        out.push_back(make_interval(p, s.to_indices()));
    }
    std::sort(out.begin(), out.end(),
              [](const Interval& a, const Interval& b) { return a.members < b.members; });
    return out;
}

PlantedModule plant(const IntervalPoset& ip, fp_t field, int budget, std::uint64_t seed) {
    if (budget < 0) throw std::invalid_argument("negative plant budget");
    std::mt19937_64 rng(seed);
    std::vector<int> mult(ip.size(), 0);
    std::vector<PersistenceModule> summands;
    for (int t = 0; t < budget; ++t) {
        int j = int(rng() % std::uint64_t(ip.size()));
        ++mult[j];
        summands.push_back(interval_module(ip.poset_ptr(), field, ip.at(j)));
    }
    PersistenceModule sum = direct_sum(ip.poset_ptr(), field, summands);
    return PlantedModule{std::move(mult), scramble(sum, rng()), seed};
}

namespace {

FpMatrix random_matrix(int r, int c, fp_t p, std::mt19937_64& rng) {
    FpMatrix m(r, c, p);
    std::uniform_int_distribution<fp_t> dist(0, p - 1);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.set(i, j, dist(rng));
    return m;
}

/// Random solution of X·b = t, or nullopt: particular solution plus a random
/// combination of the homogeneous ones (which kill im b).
std::optional<FpMatrix> random_solution(const FpMatrix& b, const FpMatrix& t,
                                        std::mt19937_64& rng) {
    auto part_t = solve(transpose(b), transpose(t));
    if (!part_t) return std::nullopt;
    FpMatrix x = transpose(*part_t);
    FpMatrix k = kernel_basis(transpose(b));  // cols: functionals vanishing on im b
    if (k.cols() > 0) {
        FpMatrix c = random_matrix(x.rows(), k.cols(), b.modulus(), rng);
        x = add(x, mul(c, transpose(k)));
    }
    return x;
}

}  // namespace

PersistenceModule random_module_perturbed(std::shared_ptr<const Poset> grid, fp_t field,
                                          int dim_budget, std::uint64_t seed) {
    const Poset& p = *grid;
    if (!p.is_grid()) throw std::invalid_argument("perturbed generator requires a grid poset");
    if (dim_budget < 0) throw std::invalid_argument("negative dims budget");
    std::mt19937_64 rng(seed);
    int m = p.grid_m, n = p.grid_n;
    std::vector<int> dims(p.size(), 0);
    for (int t = 0; t < dim_budget; ++t) ++dims[rng() % std::uint64_t(p.size())];
    std::vector<FpMatrix> arrows(p.hasse_edges.size(), FpMatrix());
    auto horiz = [&](int i, int j) { return p.edge_index(p.vertex_at(i, j), p.vertex_at(i + 1, j)); };
    auto vert = [&](int i, int j) { return p.edge_index(p.vertex_at(i, j), p.vertex_at(i, j + 1)); };
    auto dim_at = [&](int i, int j) { return dims[p.vertex_at(i, j)]; };
    for (int i = 1; i < m; ++i)
        arrows[horiz(i, 1)] = random_matrix(dim_at(i + 1, 1), dim_at(i, 1), field, rng);
    for (int j = 1; j < n; ++j) {
        // sample the verticals j -> j+1, then solve row j+1 horizontals from
        // the unit squares; on failure resample, eventually with zero verticals
        for (int attempt = 0;; ++attempt) {
            bool zero_fallback = attempt >= 20;
            for (int i = 1; i <= m; ++i)
                arrows[vert(i, j)] = zero_fallback
                                         ? FpMatrix(dim_at(i, j + 1), dim_at(i, j), field)
                                         : random_matrix(dim_at(i, j + 1), dim_at(i, j), field, rng);
            bool ok = true;
            for (int i = 1; i < m; ++i) {
                // c_i · b_i = b_{i+1} · a_i with c_i the unknown top horizontal
                FpMatrix rhs = mul(arrows[vert(i + 1, j)], arrows[horiz(i, j)]);
                auto c = random_solution(arrows[vert(i, j)], rhs, rng);
                if (!c) { ok = false; break; }
                arrows[horiz(i, j + 1)] = std::move(*c);
            }
            if (ok) break;
        }
    }
    return PersistenceModule(grid, field, std::move(dims), std::move(arrows));
}

PersistenceModule random_submodule(const PersistenceModule& m, std::uint64_t seed) {
    const Poset& p = m.poset();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<fp_t> dist(0, m.field() - 1);
    std::vector<RowSpace> spans;
    for (int v = 0; v < p.size(); ++v) spans.emplace_back(m.dim(v), m.field());
    int total = std::max(1, m.total_dim());
    int picks = 1 + int(rng() % std::uint64_t(total));
    for (int t = 0; t < picks; ++t) {
        int v = int(rng() % std::uint64_t(p.size()));
        if (m.dim(v) == 0) continue;
        std::vector<fp_t> vec(m.dim(v));
        for (auto& x : vec) x = dist(rng);
        spans[v].insert(vec);
    }
    // close the spans under all arrow maps
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t e = 0; e < p.hasse_edges.size(); ++e) {
            auto [x, y] = p.hasse_edges[e];
            FpMatrix pushed = mul(m.arrow(int(e)), transpose(spans[x].basis_matrix()));
            for (int c = 0; c < pushed.cols(); ++c) {
                std::vector<fp_t> vec(pushed.rows());
                for (int r = 0; r < pushed.rows(); ++r) vec[r] = pushed(r, c);
                if (spans[y].insert(vec)) changed = true;
            }
        }
    }
    std::vector<FpMatrix> incl;
    std::vector<int> dims;
    for (int v = 0; v < p.size(); ++v) {
        incl.push_back(transpose(spans[v].basis_matrix()));  // columns span U_v
        dims.push_back(incl.back().cols());
    }
    std::vector<FpMatrix> arrows;
    for (std::size_t e = 0; e < p.hasse_edges.size(); ++e) {
        auto [x, y] = p.hasse_edges[e];
        auto sol = solve(incl[y], mul(m.arrow(int(e)), incl[x]));
        if (!sol) throw std::logic_error("submodule spans are not closed");
        arrows.push_back(std::move(*sol));
    }
    return PersistenceModule(m.poset_ptr(), m.field(), std::move(dims), std::move(arrows));
}

PersistenceModule oracle_submodule(std::shared_ptr<const Poset> poset, fp_t field,
                                   const Interval& iv, std::uint64_t seed) {
    return random_submodule(interval_module(std::move(poset), field, iv), seed);
}

}  // namespace intres
