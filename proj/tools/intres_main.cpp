#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "intres/approx.hpp"
#include "intres/artrans.hpp"
#include "intres/errors.hpp"
#include "intres/json_io.hpp"
#include "intres/ladder.hpp"
#include "intres/testkit.hpp"

using namespace intres;

namespace {

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read " + path);
    return json::parse(in);
}

std::shared_ptr<const Poset> resolve_poset(const std::vector<int>& grid,
                                           const std::string& poset_file) {
    if (!grid.empty() && !poset_file.empty())
        throw std::invalid_argument("give either --grid or --poset, not both");
    if (!grid.empty()) return make_grid(grid[0], grid[1]);
    if (!poset_file.empty()) return poset_from_json(read_json_file(poset_file));
    throw std::invalid_argument("a poset is required: --grid M N or --poset FILE");
}

PersistenceModule load_module(const std::string& path) {
    return module_from_json(read_json_file(path));
}

std::string joined_members(const Interval& iv) {
    std::string out;
    for (std::size_t i = 0; i < iv.members.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(iv.members[i]);
    }
    return out;
}

std::vector<int> parse_member_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw std::invalid_argument("empty entry in member list");
        out.push_back(std::stoi(item));
    }
    if (out.empty()) throw std::invalid_argument("empty member list");
    return out;
}

void cmd_intervals(const std::vector<int>& grid, const std::string& poset_file,
                   const std::string& format) {
    IntervalPoset ip(resolve_poset(grid, poset_file));
    if (format == "tsv") {
        for (int i = 0; i < ip.size(); ++i)
            std::cout << i << "\t" << joined_members(ip.at(i)) << "\n";
        return;
    }
    json j;
    j["count"] = ip.size();
    json list = json::array();
    for (int i = 0; i < ip.size(); ++i) list.push_back(interval_to_json(ip.at(i)));
    j["intervals"] = std::move(list);
    emit(j);
}

void cmd_resolve(const std::string& module_file, int max_depth, const std::string& format) {
    auto m = load_module(module_file);
    IntervalPoset ip(m.poset_ptr());
    auto res = interval_resolution(m, ip, max_depth);
    ResolutionChecks checks = ResolutionEngine(ip).verify(m, res);
    if (format == "tsv") {
        std::cout << "length\t" << res.length() << "\n";
        auto table = res.table();
        for (int i = 0; i < ip.size(); ++i) {
            bool all_zero = true;
            for (int d : table[i])
                if (d != 0) all_zero = false;
            if (all_zero) continue;
            std::cout << joined_members(ip.at(i));
            for (int d : table[i]) std::cout << "\t" << d;
            std::cout << "\n";
        }
    } else {
        emit(resolution_to_json(res, ip, &checks));
    }
    if (!checks.all()) throw internal_inconsistency("resolution failed verification");
}

void cmd_intdim(const std::string& module_file, int max_depth, const std::string& format) {
    auto m = load_module(module_file);
    IntervalPoset ip(m.poset_ptr());
    int d = interval_resolution(m, ip, max_depth).length();
    if (format == "tsv") {
        std::cout << d << "\n";
    } else {
        json j;
        j["intdim"] = d;
        emit(j);
    }
}

void cmd_intgldim(const std::vector<int>& grid, const std::string& poset_file, fp_t field,
                  int jobs, int max_depth, const std::string& format) {
    if (!is_prime(field)) throw std::invalid_argument("field must be a prime");
    IntervalPoset ip(resolve_poset(grid, poset_file));
    auto sweep = translate_sweep(ip, field, jobs, max_depth);
    int via_tau = 0, via_mirror = 0;
    for (int d : sweep.tau_lengths) via_tau = std::max(via_tau, d);
    for (int d : sweep.mirrored_lengths) via_mirror = std::max(via_mirror, d);
    if (via_tau != via_mirror)
        throw internal_inconsistency("translate and inverse translate give different maxima");
    if (format == "tsv") {
        std::cout << "intgldim\t" << via_tau << "\n";
        for (int i = 0; i < ip.size(); ++i)
            std::cout << joined_members(ip.at(i)) << "\t" << sweep.tau_lengths[i] << "\n";
        return;
    }
    json j;
    j["intgldim"] = via_tau;
    json per = json::array();
    for (int i = 0; i < ip.size(); ++i) {
        json row;
        row["interval"] = interval_to_json(ip.at(i));
        row["translate_dim"] = sweep.tau_lengths[i];
        per.push_back(std::move(row));
    }
    j["per_interval"] = std::move(per);
    emit(j);
}

void cmd_tau(const std::string& module_file, bool inverse) {
    auto m = load_module(module_file);
    emit(module_to_json(inverse ? tau_inverse(m) : tau(m)));
}

void cmd_compress(const std::string& module_file, const std::string& members_csv) {
    auto m = load_module(module_file);
    auto iv = make_interval(m.poset(), parse_member_list(members_csv));
    emit(zigzag_to_json(compress(m, iv)));
}

void cmd_delta(const std::string& module_file, int jobs, const std::string& format) {
    auto m = load_module(module_file);
    IntervalPoset ip(m.poset_ptr());
    auto prof = interval_approximation_delta(m, ip, jobs);
    if (format == "tsv") {
        for (int i = 0; i < ip.size(); ++i)
            std::cout << joined_members(ip.at(i)) << "\t" << prof.c[i] << "\t" << prof.delta[i]
                      << "\n";
        return;
    }
    emit(profile_to_json(prof, ip));
}

void cmd_random(const std::vector<int>& grid, const std::string& poset_file, fp_t field,
                int budget, std::uint64_t seed, const std::string& mode) {
    if (!is_prime(field)) throw std::invalid_argument("field must be a prime");
    auto p = resolve_poset(grid, poset_file);
    if (mode == "planted") {
        IntervalPoset ip(p);
        emit(module_to_json(plant(ip, field, budget, seed).module));
    } else {
        emit(module_to_json(random_module_perturbed(p, field, budget, seed)));
    }
}

void cmd_check(const std::string& module_file, int max_depth, int jobs) {
    auto m = load_module(module_file);
    IntervalPoset ip(m.poset_ptr());
    json report;
    bool ok = check_commutativity(m);
    report["commutative"] = ok;
    auto res = interval_resolution(m, ip, max_depth);
    auto checks = ResolutionEngine(ip).verify(m, res);
    report["resolution_length"] = res.length();
    json cj;
    cj["surjective"] = checks.surjective;
    cj["exact"] = checks.exact;
    cj["approximation"] = checks.approximation;
    report["checks"] = std::move(cj);
    ok = ok && checks.all();
    const Poset& p = m.poset();
    if (p.is_grid() && p.grid_n == 2) {
        // two-row grid: compressed multiplicities must match the resolution
        auto prof = interval_approximation_delta(m, ip, jobs);
        auto euler = euler_profile(res);
        bool delta_ok = prof.delta == euler;
        bool c_ok = true;
        for (int i = 0; i < ip.size() && c_ok; ++i) {
            int upper = 0;
            for (int j = 0; j < ip.size(); ++j)
                if (ip.contained_in(i, j)) upper += euler[j];
            c_ok = prof.c[i] == upper;
        }
        report["delta_matches_resolution"] = delta_ok;
        report["compression_matches_resolution"] = c_ok;
        ok = ok && delta_ok && c_ok;
    }
    emit(report);
    if (!ok) throw internal_inconsistency("module failed invariant checks");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"interval resolutions and compressed invariants of persistence modules"};
    app.require_subcommand(1);

    std::vector<int> grid;
    std::string poset_file, module_file, members_csv, mode = "planted", format = "json";
    fp_t field = 2;
    int max_depth = -1, jobs = 1, budget = 8;
    std::uint64_t seed = 0;
    bool inverse = false;

    auto add_poset_opts = [&](CLI::App* cmd) {
        cmd->add_option("--grid", grid, "grid sides m n")->expected(2);
        cmd->add_option("--poset", poset_file, "poset description file");
    };
    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"json", "tsv"}));
    };
    auto add_module = [&](CLI::App* cmd) {
        cmd->add_option("--module", module_file, "module file")->required();
    };
    auto add_depth = [&](CLI::App* cmd) {
        cmd->add_option("--max-depth", max_depth, "resolution depth budget");
    };
    auto add_jobs = [&](CLI::App* cmd) {
        cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    };

    auto* intervals = app.add_subcommand("intervals", "list the intervals of a poset");
    add_poset_opts(intervals);
    add_format(intervals);
    intervals->callback([&] { cmd_intervals(grid, poset_file, format); });

    auto* resolve = app.add_subcommand("resolve", "interval resolution of a module");
    add_module(resolve);
    add_depth(resolve);
    add_format(resolve);
    resolve->callback([&] { cmd_resolve(module_file, max_depth, format); });

    auto* intdim = app.add_subcommand("intdim", "interval resolution dimension of a module");
    add_module(intdim);
    add_depth(intdim);
    add_format(intdim);
    intdim->callback([&] { cmd_intdim(module_file, max_depth, format); });

    auto* gldim = app.add_subcommand("intgldim", "largest interval resolution dimension over a poset");
    add_poset_opts(gldim);
    gldim->add_option("--field", field, "prime field size");
    add_jobs(gldim);
    add_depth(gldim);
    add_format(gldim);
    gldim->callback([&] { cmd_intgldim(grid, poset_file, field, jobs, max_depth, format); });

    auto* tau_cmd = app.add_subcommand("tau", "Auslander-Reiten translate of a module");
    add_module(tau_cmd);
    tau_cmd->add_flag("--inverse", inverse, "apply the inverse translate");
    tau_cmd->callback([&] { cmd_tau(module_file, inverse); });

    auto* compress_cmd = app.add_subcommand("compress", "compress a ladder module at an interval");
    add_module(compress_cmd);
    compress_cmd->add_option("--members", members_csv, "interval members, comma separated")
        ->required();
    compress_cmd->callback([&] { cmd_compress(module_file, members_csv); });

    auto* delta_cmd = app.add_subcommand("delta", "compressed multiplicities and their inversion");
    add_module(delta_cmd);
    add_jobs(delta_cmd);
    add_format(delta_cmd);
    delta_cmd->callback([&] { cmd_delta(module_file, jobs, format); });

    auto* random_cmd = app.add_subcommand("random", "generate a seeded random module");
    add_poset_opts(random_cmd);
    random_cmd->add_option("--field", field, "prime field size");
    random_cmd->add_option("--budget", budget, "total dimension budget")->check(CLI::NonNegativeNumber);
    random_cmd->add_option("--seed", seed, "generator seed");
    random_cmd->add_option("--mode", mode, "planted or perturbed")
        ->check(CLI::IsMember({"planted", "perturbed"}));
    random_cmd->callback([&] { cmd_random(grid, poset_file, field, budget, seed, mode); });

    auto* check_cmd = app.add_subcommand("check", "run the invariant suite on a module");
    add_module(check_cmd);
    add_depth(check_cmd);
    add_jobs(check_cmd);
    check_cmd->callback([&] { cmd_check(module_file, max_depth, jobs); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << json{{"error", e.what()}}.dump(2) << "\n";
        return 2;
    } catch (const depth_exceeded& e) {
        std::cout << json{{"error", e.what()}}.dump(2) << "\n";
        return 3;
    } catch (const join_missing& e) {
        std::cout << json{{"error", e.what()}}.dump(2) << "\n";
        return 4;
    } catch (const internal_inconsistency& e) {
        std::cout << json{{"error", e.what()}}.dump(2) << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cout << json{{"error", e.what()}}.dump(2) << "\n";
        return 2;
    }
    return 0;
}
