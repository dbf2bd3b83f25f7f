#include "intres/ladder.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <stdexcept>
#include <thread>

#include "intres/errors.hpp"

namespace intres {

namespace {

// Tails and heads of the zigzag arrows 2->1, 2->3, 4->3, 4->5 (0-based ids).
constexpr std::array<int, 4> arrow_tail = {1, 1, 3, 3};
constexpr std::array<int, 4> arrow_head = {0, 2, 2, 4};

}  // namespace

std::shared_ptr<const Poset> zigzag_poset() {
    static std::shared_ptr<const Poset> zz = make_poset_from_hasse(
        {"1", "2", "3", "4", "5"}, {{1, 0}, {1, 2}, {3, 2}, {3, 4}});
    return zz;
}

Interval zigzag_range(int lo, int hi) {
    if (lo < 1 || hi > 5 || lo > hi) throw std::invalid_argument("zigzag range out of bounds");
    std::vector<int> members;
    for (int v = lo; v <= hi; ++v) members.push_back(v - 1);
    return make_interval(*zigzag_poset(), std::move(members));
}

XiMorphism xi(const Interval& iv, const Poset& ladder) {
    if (!ladder.is_grid() || ladder.grid_n != 2)
        throw std::invalid_argument("xi: poset is not a two-row grid");
    if (iv.members.empty()) throw std::invalid_argument("xi: empty interval");
    int n = ladder.grid_m;
    // Row-wise column spans: bottom [i,j], top [k,l]; 0 marks an absent row.
    int i = 0, j = 0, k = 0, l = 0;
    for (int v : iv.members) {
        if (v < 0 || v >= 2 * n) throw std::invalid_argument("xi: member out of range");
        auto [col, row] = ladder.coords(v);
        if (row == 1) {
            if (i == 0) i = col;
            j = col;
        } else {
            if (k == 0) k = col;
            l = col;
        }
    }
    auto x = [&](int c) { return ladder.vertex_at(c, 1); };
    auto y = [&](int c) { return ladder.vertex_at(c, 2); };
    int span = (i ? j - i + 1 : 0) + (k ? l - k + 1 : 0);
    if (span != int(iv.members.size())) throw std::invalid_argument("xi: not a ladder interval");
    XiMorphism out;
    if (i && k) {
        if (!(k <= i && i <= l && l <= j)) throw std::invalid_argument("xi: not a ladder interval");
        out.vertex_images = {y(l), y(k), y(i), x(i), x(j)};
        out.arrow_images = {{{y(k), y(l)}, {y(k), y(i)}, {x(i), y(i)}, {x(i), x(j)}}};
    } else if (i) {
        out.vertex_images = {x(j), x(i), x(i), x(i), x(j)};
        out.arrow_images = {{{x(i), x(j)}, {x(i), x(i)}, {x(i), x(i)}, {x(i), x(j)}}};
    } else {
        out.vertex_images = {y(l), y(k), y(k), y(k), y(l)};
        out.arrow_images = {{{y(k), y(l)}, {y(k), y(k)}, {y(k), y(k)}, {y(k), y(l)}}};
    }
    return out;
}

PersistenceModule ZigzagModule::as_module() const {
    return PersistenceModule(zigzag_poset(), field,
                             std::vector<int>(spaces.begin(), spaces.end()), maps);
}

bool ZigzagModule::is_zero() const {
    return std::all_of(spaces.begin(), spaces.end(), [](int d) { return d == 0; });
}

ZigzagModule compress(const PersistenceModule& m, const Interval& iv) {
    XiMorphism f = xi(iv, m.poset());
    ZigzagModule out;
    out.field = m.field();
    for (int v = 0; v < 5; ++v) out.spaces[v] = m.dim(f.vertex_images[v]);
    out.maps.reserve(4);
    for (int t = 0; t < 4; ++t)
        out.maps.push_back(m.map_between(f.arrow_images[t].first, f.arrow_images[t].second));
    return out;
}

int zigzag_top_multiplicity(const ZigzagModule& n) {
    auto mod = n.as_module();
    auto hom_dim = [&](int lo, int hi) {
        return hom_from_interval(zigzag_range(lo, hi), mod).dimension();
    };
    int mult = hom_dim(1, 5) - hom_dim(2, 5) - hom_dim(1, 4) + hom_dim(2, 4);
    if (mult < 0) throw internal_inconsistency("zigzag top multiplicity came out negative");
    return mult;
}

int compressed_multiplicity(const PersistenceModule& m, const Interval& iv) {
    return zigzag_top_multiplicity(compress(m, iv));
}

CompressedProfile interval_approximation_delta(const PersistenceModule& m, const IntervalPoset& ip,
                                               int jobs) {
    if (&m.poset() != &ip.poset())
        throw std::invalid_argument("module and interval order live on different posets");
    int n = ip.size();
    CompressedProfile prof;
    prof.c.assign(n, 0);
    prof.delta.assign(n, 0);
    if (n == 0) return prof;
    jobs = std::clamp(jobs, 1, n);
    std::atomic<int> cursor{0};
    std::vector<std::exception_ptr> errors(jobs);
    auto work = [&](int w) {
        try {
            for (;;) {
                int idx = cursor.fetch_add(1);
                if (idx >= n) break;
                prof.c[idx] = compressed_multiplicity(m, ip.at(idx));
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int w = 0; w < jobs; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    for (int jdx = 0; jdx < n; ++jdx) {
        const auto& cov = ip.covers_of(jdx);
        for (unsigned s = 0; s < (1u << cov.size()); ++s) {
            std::vector<int> ids{jdx};
            for (int b = 0; b < int(cov.size()); ++b)
                if (s >> b & 1u) ids.push_back(cov[b]);
            auto top = ip.join(ids);
            if (!top) throw join_missing("no join above the covers of " + std::to_string(jdx));
            prof.delta[jdx] += (std::popcount(s) % 2 ? -1 : 1) * prof.c[*top];
        }
    }
    return prof;
}

}  // namespace intres
