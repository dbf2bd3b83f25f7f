// Acceptance run: prints one PASS/FAIL line per criterion and exits nonzero
// on any failure. Runtime budgets are stated for an 8-core machine and are
// scaled up proportionally when fewer cores are available.
#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "intres/approx.hpp"
#include "intres/artrans.hpp"
#include "intres/errors.hpp"
#include "intres/ladder.hpp"
#include "intres/module.hpp"
#include "intres/poset.hpp"
#include "intres/testkit.hpp"

using namespace intres;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof buf, pattern, args);
    va_end(args);
    return buf;
}

struct Criterion {
    explicit Criterion(std::string n) : name(std::move(n)) {}

    std::string name;
    bool pass = true;
    std::string info;
    std::string problems;
    int problem_count = 0;

    void fail(const std::string& why) {
        pass = false;
        if (++problem_count > 3) return;
        if (!problems.empty()) problems += "; ";
        problems += why;
    }
    std::string detail() const {
        if (pass) return info;
        std::string d = info.empty() ? problems : info + " ; " + problems;
        if (problem_count > 3) d += fmt(" (+%d more)", problem_count - 3);
        return d;
    }
};

struct Soundness {
    long verified = 0;
    long violations = 0;
    void absorb(const ResolutionChecks& c) {
        ++verified;
        if (!c.all()) ++violations;
    }
};

FpMatrix mat(int rows, int cols, fp_t p, std::vector<int> entries) {
    FpMatrix m(rows, cols, p);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m.set(r, c, fp_t(entries[std::size_t(r) * cols + c]) % p);
    return m;
}

// The fixed known-answer module on the length-four ladder: spaces
// 0,k,k^2,k below and k,k^2,k,0 above, with the stated structure maps.
PersistenceModule example_ladder_module(fp_t field) {
    auto p = make_grid(4, 2);
    std::vector<FpMatrix> arrows(p->hasse_edges.size());
    auto put = [&](int u, int v, FpMatrix m) { arrows[p->edge_index(u, v)] = std::move(m); };
    put(0, 1, mat(1, 0, field, {}));
    put(1, 2, mat(2, 1, field, {1, 0}));
    put(2, 3, mat(1, 2, field, {1, 1}));
    put(4, 5, mat(2, 1, field, {1, 1}));
    put(5, 6, mat(1, 2, field, {0, 1}));
    put(6, 7, mat(0, 1, field, {}));
    put(0, 4, mat(1, 0, field, {}));
    put(1, 5, mat(2, 1, field, {0, 1}));
    put(2, 6, mat(1, 2, field, {1, 0}));
    put(3, 7, mat(0, 1, field, {}));
    return PersistenceModule(p, field, {0, 1, 2, 1, 1, 2, 1, 0}, std::move(arrows));
}

}  // namespace

int main() {
    auto t_start = Clock::now();
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    int jobs = int(hw);
    double budget_scale = std::max(1.0, 8.0 / double(hw));
    std::fprintf(stderr, "[acceptance] %u hardware threads, budget scale %.1fx\n", hw,
                 budget_scale);

    Criterion c1("intgldim-small-grid-table");
    Criterion c2("ladder-example-compressed-multiplicities");
    Criterion c3("compressed-multiplicity-vs-resolution");
    Criterion c4("delta-planted-recovery-and-euler");
    Criterion c5("translate-two-sided-agreement");
    Criterion c6("resolution-soundness");
    Criterion c7("interval-submodule-dimension-zero");
    Criterion c8("interval-enumeration-oracle");
    Soundness sound;

    // --- criteria 1 and 5, feeding sampled resolutions into criterion 6 ---
    struct GridCase {
        int m, n, expected;
        double budget;
    };
    const std::vector<GridCase> grid_table = {
        {2, 2, 0, 60},   {2, 3, 1, 60},   {2, 4, 2, 60},
        {2, 5, 2, 60},   {2, 6, 2, 60},   {3, 3, 2, 60},
        {3, 4, 3, 1800}, {3, 5, 4, 1800}, {4, 4, 4, 1800},
    };
    std::string c1_info;
    int agreeing_grids = 0;
    for (const auto& gc : grid_table) {
        std::fprintf(stderr, "[acceptance] intgldim grid %dx%d\n", gc.m, gc.n);
        auto t0 = Clock::now();
        auto grid = make_grid(gc.m, gc.n);
        IntervalPoset ip(grid);
        TranslateSweep sweep = translate_sweep(ip, 2, jobs);
        int via_tau = *std::max_element(sweep.tau_lengths.begin(), sweep.tau_lengths.end());
        int via_mirror =
            *std::max_element(sweep.mirrored_lengths.begin(), sweep.mirrored_lengths.end());
        double dt = seconds_since(t0);
        c1_info += fmt("%dx%d=%d(%.1fs) ", gc.m, gc.n, via_tau, dt);
        if (via_tau != gc.expected)
            c1.fail(fmt("grid %dx%d gave %d, expected %d", gc.m, gc.n, via_tau, gc.expected));
        if (dt > gc.budget * budget_scale)
            c1.fail(fmt("grid %dx%d took %.1fs, budget %.0fs", gc.m, gc.n, dt,
                        gc.budget * budget_scale));
        if (via_tau != via_mirror)
            c5.fail(fmt("grid %dx%d: translate max %d vs mirrored max %d", gc.m, gc.n, via_tau,
                        via_mirror));
        else
            ++agreeing_grids;

        // Soundness sampling: every interval on posets up to 12 vertices,
        // a fixed spread of 15 per side on the two larger grids.
        std::vector<int> picks;
        if (grid->size() <= 12) {
            picks.resize(ip.size());
            std::iota(picks.begin(), picks.end(), 0);
        } else {
            for (int k = 0; k < 15; ++k) picks.push_back(int(std::int64_t(k) * ip.size() / 15));
        }
        IntervalPoset ip_op(grid->opposite());
        ResolutionEngine engine(ip), engine_op(ip_op);
        for (int idx : picks) {
            auto tv = tau(interval_module(grid, 2, ip.at(idx)));
            auto r = engine.resolve(tv);
            if (r.length() != sweep.tau_lengths[idx])
                c6.fail(fmt("grid %dx%d interval %d: sweep says %d, fresh resolve %d", gc.m, gc.n,
                            idx, sweep.tau_lengths[idx], r.length()));
            sound.absorb(engine.verify(tv, r));
            auto tw = tau(interval_module(ip_op.poset_ptr(), 2, ip_op.at(idx)));
            auto rw = engine_op.resolve(tw);
            if (rw.length() != sweep.mirrored_lengths[idx])
                c6.fail(fmt("grid %dx%d mirrored interval %d: sweep says %d, fresh resolve %d",
                            gc.m, gc.n, idx, sweep.mirrored_lengths[idx], rw.length()));
            sound.absorb(engine_op.verify(tw, rw));
        }
    }
    c1.info = c1_info;
    c5.info = fmt("translate and mirrored-translate maxima agree on %d/%d grids", agreeing_grids,
                  int(grid_table.size()));

    // --- criterion 2: known compressed multiplicities on the fixed module ---
    {
        auto t0 = Clock::now();
        auto m = example_ladder_module(2);
        const auto& p = m.poset();
        int ci = compressed_multiplicity(m, make_interval(p, {1, 2, 4, 5, 6}));
        int cj = compressed_multiplicity(m, make_interval(p, {1, 2, 3, 5, 6}));
        double dt = seconds_since(t0);
        c2.info = fmt("c=%d on lower[2,3]+upper[1,3], c=%d on lower[2,4]+upper[2,3] (%.3fs)", ci,
                      cj, dt);
        if (ci != 0) c2.fail(fmt("expected 0, got %d", ci));
        if (cj != 1) c2.fail(fmt("expected 1, got %d", cj));
        if (dt > 1.0 * budget_scale) c2.fail(fmt("took %.3fs, budget %.1fs", dt, budget_scale));
    }

    // --- criteria 3 and 4 over a shared pool of two-row samples ---
    std::fprintf(stderr, "[acceptance] ladder sample pool\n");
    const fp_t fields[3] = {2, 3, 5};
    std::map<int, std::unique_ptr<IntervalPoset>> ladder_ip;
    std::map<int, std::unique_ptr<ResolutionEngine>> ladder_engine;
    for (int n = 2; n <= 6; ++n) {
        ladder_ip[n] = std::make_unique<IntervalPoset>(make_grid(n, 2));
        ladder_engine[n] = std::make_unique<ResolutionEngine>(*ladder_ip[n]);
    }
    const int planted_per_n[7] = {0, 0, 30, 40, 40, 45, 50};
    const int perturbed_per_n[7] = {0, 0, 25, 25, 25, 25, 0};
    long mixed_samples = 0, planted_samples = 0, value_checks = 0;
    for (int n = 2; n <= 6; ++n) {
        auto& ip = *ladder_ip[n];
        auto& engine = *ladder_engine[n];
        auto grid = ip.poset_ptr();
        int np = planted_per_n[n], nq = perturbed_per_n[n];
        for (int k = 0; k < np + nq; ++k) {
            bool is_planted = k < np;
            fp_t field = fields[(n + k) % 3];
            std::uint64_t seed = 90210 + std::uint64_t(n) * 1000 + std::uint64_t(k);
            std::vector<int> mults;
            PersistenceModule m = [&] {
                if (is_planted) {
                    PlantedModule pm = plant(ip, field, 2 + k % 9, seed);
                    mults = pm.multiplicities;
                    return pm.module;
                }
                return random_module_perturbed(grid, field, 4 + k % 7, seed);
            }();
            auto r = engine.resolve(m);
            sound.absorb(engine.verify(m, r));
            auto euler = euler_profile(r);
            auto prof = interval_approximation_delta(m, ip, jobs);
            if (n <= 5) {
                ++mixed_samples;
                for (int i = 0; i < ip.size(); ++i) {
                    long up = 0;
                    for (int j = 0; j < ip.size(); ++j)
                        if (ip.contained_in(i, j)) up += euler[j];
                    ++value_checks;
                    if (prof.c[i] != up) {
                        c3.fail(fmt("n=%d seed %llu interval %d: c=%d, resolution sum %ld", n,
                                    (unsigned long long)seed, i, prof.c[i], up));
                        break;
                    }
                }
            }
            if (is_planted) {
                ++planted_samples;
                if (prof.delta != mults)
                    c4.fail(fmt("n=%d seed %llu: delta differs from planted multiplicities", n,
                                (unsigned long long)seed));
            }
            if (prof.delta != euler)
                c4.fail(fmt("n=%d seed %llu %s: delta differs from resolution alternating sum", n,
                            (unsigned long long)seed, is_planted ? "planted" : "perturbed"));
        }
        std::fprintf(stderr, "[acceptance]   n=%d done (%.1fs elapsed)\n", n,
                     seconds_since(t_start));
    }
    if (mixed_samples < 200) c3.fail(fmt("only %ld mixed samples", mixed_samples));
    if (planted_samples < 200) c4.fail(fmt("only %ld planted samples", planted_samples));
    c3.info = fmt("%ld mixed samples over two-row grids n=2..5, %ld interval values matched",
                  mixed_samples, value_checks);
    c4.info = fmt("%ld planted recoveries up to n=6, alternating-sum identity on all samples",
                  planted_samples);

    // --- criterion 7: submodules of interval modules resolve in one step ---
    std::fprintf(stderr, "[acceptance] interval submodules\n");
    {
        const std::vector<std::pair<int, int>> shapes = {{2, 2}, {2, 3}, {3, 2}, {2, 4}, {4, 2},
                                                         {3, 3}, {3, 4}, {4, 3}, {4, 4}};
        struct ShapeCtx {
            std::shared_ptr<const Poset> grid;
            std::unique_ptr<IntervalPoset> ip;
            std::unique_ptr<ResolutionEngine> engine;
        };
        std::vector<ShapeCtx> ctxs;
        for (auto [sm, sn] : shapes) {
            ShapeCtx ctx;
            ctx.grid = make_grid(sm, sn);
            ctx.ip = std::make_unique<IntervalPoset>(ctx.grid);
            ctx.engine = std::make_unique<ResolutionEngine>(*ctx.ip);
            ctxs.push_back(std::move(ctx));
        }
        std::mt19937_64 rng(424242);
        int zero_dim = 0;
        const int total = 500;
        for (int k = 0; k < total; ++k) {
            auto& ctx = ctxs[std::size_t(k) % ctxs.size()];
            fp_t field = fields[k % 3];
            int idx = int(rng() % std::uint64_t(ctx.ip->size()));
            auto sub = oracle_submodule(ctx.grid, field, ctx.ip->at(idx), rng());
            auto r = ctx.engine->resolve(sub);
            if (r.length() == 0)
                ++zero_dim;
            else
                c7.fail(fmt("sample %d on grid %dx%d interval %d: dimension %d", k,
                            ctx.grid->grid_m, ctx.grid->grid_n, idx, r.length()));
        }
        c7.info = fmt("%d/%d random submodules of interval modules have dimension 0", zero_dim,
                      total);
    }

    // --- criterion 8: enumeration against the subset-scan oracle ---
    {
        int grids_checked = 0;
        for (int gm = 1; gm <= 12; ++gm) {
            for (int gn = 1; gm * gn <= 12; ++gn) {
                auto grid = make_grid(gm, gn);
                IntervalPoset ip(grid);
                std::set<std::vector<int>> swept;
                for (int i = 0; i < ip.size(); ++i) swept.insert(ip.at(i).members);
                std::set<std::vector<int>> oracle;
                for (const auto& iv : oracle_intervals(*grid)) oracle.insert(iv.members);
                ++grids_checked;
                if (swept != oracle)
                    c8.fail(fmt("grid %dx%d: staircase sweep and subset oracle differ", gm, gn));
                if (gm == 2 && gn == 2 && ip.size() != 11)
                    c8.fail(fmt("grid 2x2 has %d intervals, expected 11", ip.size()));
            }
        }
        int chains_checked = 0;
        for (int n = 1; n <= 8; ++n) {
            IntervalPoset ip(make_chain(n));
            ++chains_checked;
            if (ip.size() != n * (n + 1) / 2)
                c8.fail(fmt("chain(%d) has %d intervals, expected %d", n, ip.size(),
                            n * (n + 1) / 2));
        }
        c8.info = fmt("%d grids matched the subset oracle, %d chain counts matched",
                      grids_checked, chains_checked);
    }

    // --- criterion 6 wrap-up ---
    if (sound.violations > 0)
        c6.fail(fmt("%ld of %ld verified resolutions violated a soundness check",
                    sound.violations, sound.verified));
    c6.info = fmt("%ld resolutions verified surjective+exact+approximating (all two-row samples, "
                  "all translate resolutions on posets up to 12 vertices, 15-per-side spread on "
                  "3x5 and 4x4)",
                  sound.verified);

    bool all_pass = true;
    for (const Criterion* c : {&c1, &c2, &c3, &c4, &c5, &c6, &c7, &c8}) {
        std::printf("%s %s: %s\n", c->pass ? "PASS" : "FAIL", c->name.c_str(),
                    c->detail().c_str());
        all_pass = all_pass && c->pass;
    }
    std::fprintf(stderr, "[acceptance] total %.1fs\n", seconds_since(t_start));
    return all_pass ? 0 : 1;
}
