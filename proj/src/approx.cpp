#include "intres/approx.hpp"

#include <algorithm>
#include <deque>
#include <optional>

#include "intres/errors.hpp"

namespace intres {

std::vector<std::vector<int>> IntervalResolution::table() const {
    int count = interval_count();
    std::vector<std::vector<int>> t(count, std::vector<int>(steps.size(), 0));
    for (std::size_t i = 0; i < steps.size(); ++i)
        for (int j = 0; j < count; ++j) t[j][i] = steps[i].multiplicities[j];
    return t;
}

ResolutionEngine::ResolutionEngine(const IntervalPoset& ip) : ip_(ip) {
    const Poset& p = ip_.poset();
    min_vertices_.reserve(ip_.size());
    for (int i = 0; i < ip_.size(); ++i) {
        std::vector<int> mins;
        for (int v : ip_.at(i).members) {
            bool minimal = true;
            for (int u : p.down_covers[v])
                if (ip_.mask(i).test(u)) { minimal = false; break; }
            if (minimal) mins.push_back(v);
        }
        min_vertices_.push_back(std::move(mins));
    }
}

const std::vector<Bitset>& ResolutionEngine::pair_homs(int i, int j) const {
    std::uint64_t key = std::uint64_t(i) << 32 | std::uint64_t(j);
    if (auto it = pair_cache_.find(key); it != pair_cache_.end()) return it->second;
    const Poset& p = ip_.poset();
    std::vector<Bitset> result;
    Bitset common = ip_.mask(i) & ip_.mask(j);
    if (common.any()) {
        // connected components of i∩j in the Hasse graph
        Bitset seen(p.size());
        for (int v : common.to_indices()) {
            if (seen.test(v)) continue;
            Bitset comp(p.size());
            std::deque<int> q{v};
            comp.set(v);
            seen.set(v);
            while (!q.empty()) {
                int x = q.front();
                q.pop_front();
                for (const auto& adj : {p.up_covers[x], p.down_covers[x]})
                    for (int w : adj)
                        if (common.test(w) && !seen.test(w)) {
                            comp.set(w);
                            seen.set(w);
                            q.push_back(w);
                        }
            }
            // reject components hit from i∖j below or leaking into j∖i above
            bool ok = true;
            for (int x : comp.to_indices()) {
                for (int u : p.down_covers[x])
                    if (ip_.mask(i).test(u) && !common.test(u)) { ok = false; break; }
                if (!ok) break;
                for (int w : p.up_covers[x])
                    if (ip_.mask(j).test(w) && !common.test(w)) { ok = false; break; }
                if (!ok) break;
            }
            if (ok) result.push_back(std::move(comp));
        }
    }
    return pair_cache_.emplace(key, std::move(result)).first->second;
}

namespace {

/// Values of a morphism stacked over the minimal vertices of an interval,
/// optionally cut down to a support mask (entries off the mask are zero).
std::vector<fp_t> stacked_values(const PersistenceModule& m, const std::vector<int>& mins,
                                 const std::vector<FpMatrix>& components, const Bitset* mask) {
    std::vector<fp_t> u;
    for (int x : mins) {
        int d = m.dim(x);
        if (mask && !mask->test(x)) {
            u.insert(u.end(), d, 0);
        } else {
            const FpMatrix& c = components[x];
            for (int r = 0; r < d; ++r) u.push_back(c.cols() == 1 ? c(r, 0) : 0);
        }
    }
    return u;
}

}  // namespace

ApproximationStep ResolutionEngine::approximate(const PersistenceModule& m) const {
    const Poset& p = ip_.poset();
    fp_t field = m.field();
    if (&p != &m.poset()) throw std::invalid_argument("module and interval poset mismatch");
    Bitset supp = m.support();
    // Hom(V_J, M) for every interval J meeting the support
    std::vector<std::optional<HomBasis>> homs(ip_.size());
    for (int j = 0; j < ip_.size(); ++j) {
        if (!ip_.mask(j).intersects(supp)) continue;
        HomBasis h = hom_from_interval(ip_.at(j), m);
        if (h.dimension() > 0) homs[j] = std::move(h);
    }
    std::vector<int> mult(ip_.size(), 0);
    std::vector<int> summand_intervals;
    std::vector<std::vector<FpMatrix>> chosen;  // components of each chosen summand map
    for (int i = 0; i < ip_.size(); ++i) {
        if (!homs[i]) continue;
        const std::vector<int>& mins = min_vertices_[i];
        int ncols = 0;
        for (int x : mins) ncols += m.dim(x);
        RowSpace span(ncols, field);
        // radical: everything factoring through a different interval module
        for (int j = 0; j < ip_.size(); ++j) {
            if (j == i || !homs[j]) continue;
            const std::vector<Bitset>& hs = pair_homs(i, j);
            for (const Bitset& comp : hs)
                for (int g = 0; g < homs[j]->dimension(); ++g)
                    span.insert(stacked_values(m, mins, homs[j]->components(g), &comp));
        }
        // representatives of Hom(V_I, M) modulo that span
        for (int g = 0; g < homs[i]->dimension(); ++g) {
            if (span.insert(stacked_values(m, mins, homs[i]->components(g), nullptr))) {
                ++mult[i];
                summand_intervals.push_back(i);
                chosen.push_back(homs[i]->components(g));
            }
        }
    }
    // assemble the cover ⊕ V_J^{d_J} -> M
    std::vector<PersistenceModule> summand_modules;
    summand_modules.reserve(chosen.size());
    for (int idx : summand_intervals)
        summand_modules.push_back(interval_module(m.poset_ptr(), field, ip_.at(idx)));
    PersistenceModule source = direct_sum(m.poset_ptr(), field, summand_modules);
    std::vector<FpMatrix> cover_components;
    for (int x = 0; x < p.size(); ++x) {
        if (chosen.empty()) {
            cover_components.push_back(FpMatrix(m.dim(x), 0, field));
            continue;
        }
        std::vector<FpMatrix> cols;
        cols.reserve(chosen.size());
        for (const auto& comps : chosen) cols.push_back(comps[x]);
        cover_components.push_back(hstack(cols));
    }
    ModuleMorphism cover(std::move(source), m, std::move(cover_components));
    for (int x = 0; x < p.size(); ++x)
        if (rank(cover.components[x]) != m.dim(x))
            throw internal_inconsistency("approximation cover is not surjective");
    auto [ker, incl] = kernel(cover);
    (void)incl;
    return ApproximationStep{std::move(mult), std::move(summand_intervals), std::move(cover),
                             std::move(ker)};
}

IntervalResolution ResolutionEngine::resolve(const PersistenceModule& m, int max_depth) const {
    if (max_depth < 0) max_depth = ip_.poset().size() * ip_.size();
    IntervalResolution res;
    const PersistenceModule* target = &m;
    for (int depth = 0;; ++depth) {
        res.steps.push_back(approximate(*target));
        if (res.steps.back().kernel_module.is_zero()) break;
        if (depth >= max_depth)
            throw depth_exceeded("kernel still nonzero after " + std::to_string(max_depth) +
                                 " approximation steps");
        target = &res.steps.back().kernel_module;
    }
    return res;
}

ResolutionChecks ResolutionEngine::verify(const PersistenceModule& m,
                                          const IntervalResolution& r) const {
    const Poset& p = ip_.poset();
    ResolutionChecks checks;
    checks.surjective = true;
    checks.exact = true;
    checks.approximation = true;
    const PersistenceModule* target = &m;
    for (std::size_t step = 0; step < r.steps.size(); ++step) {
        const ApproximationStep& s = r.steps[step];
        for (int x = 0; x < p.size(); ++x) {
            int rk = rank(s.cover.components[x]);
            if (rk != target->dim(x)) checks.surjective = false;
            // exactness: image dimension in X_{step-1} equals the kernel there
            if (s.cover.source.dim(x) - rk != s.kernel_module.dim(x)) checks.exact = false;
        }
        if (!s.kernel_module.is_zero() && step + 1 >= r.steps.size()) checks.exact = false;
        // approximation property: Hom(V_K, -) applied to the cover stays onto
        for (int k = 0; k < ip_.size() && checks.approximation; ++k) {
            HomBasis hk = hom_from_interval(ip_.at(k), *target);
            const std::vector<int>& mins = min_vertices_[k];
            int ncols = 0;
            for (int x : mins) ncols += target->dim(x);
            RowSpace image(ncols, m.field());
            for (std::size_t summand = 0; summand < s.summand_intervals.size(); ++summand) {
                int i = s.summand_intervals[summand];
                // component matrix of that summand map inside the block cover
                std::vector<FpMatrix> comps(p.size());
                for (int x = 0; x < p.size(); ++x) {
                    int off = 0;
                    for (std::size_t t = 0; t < summand; ++t)
                        if (ip_.mask(s.summand_intervals[t]).test(x)) ++off;
                    FpMatrix c(target->dim(x), ip_.mask(i).test(x) ? 1 : 0, m.field());
                    if (c.cols() == 1)
                        for (int row = 0; row < c.rows(); ++row)
                            c.set(row, 0, s.cover.components[x](row, off));
                    comps[x] = std::move(c);
                }
                for (const Bitset& comp_mask : pair_homs(k, i))
                    image.insert(stacked_values(*target, mins, comps, &comp_mask));
            }
            if (image.rank() != hk.dimension()) checks.approximation = false;
        }
        target = &s.kernel_module;
    }
    return checks;
}

ApproximationStep minimal_right_interval_approximation(const PersistenceModule& m,
                                                       const IntervalPoset& ip) {
    return ResolutionEngine(ip).approximate(m);
}

IntervalResolution interval_resolution(const PersistenceModule& m, const IntervalPoset& ip,
                                       int max_depth) {
    return ResolutionEngine(ip).resolve(m, max_depth);
}

int interval_dimension(const PersistenceModule& m, const IntervalPoset& ip) {
    return interval_resolution(m, ip).length();
}

std::vector<int> euler_profile(const IntervalResolution& r) {
    std::vector<int> delta(r.interval_count(), 0);
    for (std::size_t i = 0; i < r.steps.size(); ++i)
        for (std::size_t j = 0; j < delta.size(); ++j)
            delta[j] += (i % 2 == 0 ? 1 : -1) * r.steps[i].multiplicities[j];
    return delta;
}

}  // namespace intres
