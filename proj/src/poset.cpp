#include "intres/poset.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace intres {

namespace {

/// Computes derived fields (covers, closures) from names + hasse_edges.
void finish(Poset& p) {
    int n = p.size();
    p.up_covers.assign(n, {});
    p.down_covers.assign(n, {});
    p.edge_lookup.clear();
    for (int e = 0; e < int(p.hasse_edges.size()); ++e) {
        auto [a, b] = p.hasse_edges[e];
        p.up_covers[a].push_back(b);
        p.down_covers[b].push_back(a);
        p.edge_lookup.emplace(std::uint64_t(a) << 32 | std::uint64_t(b), e);
    }
    for (int v = 0; v < n; ++v) {
        std::sort(p.up_covers[v].begin(), p.up_covers[v].end());
        std::sort(p.down_covers[v].begin(), p.down_covers[v].end());
    }
    // topological order (Kahn); rejects cycles
    std::vector<int> indeg(n, 0), topo;
    for (auto [a, b] : p.hasse_edges) ++indeg[b];
    std::deque<int> q;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) q.push_back(v);
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        topo.push_back(v);
        for (int w : p.up_covers[v])
            if (--indeg[w] == 0) q.push_back(w);
    }
    if (int(topo.size()) != n) throw std::invalid_argument("order relation contains a cycle");
    p.up_set.assign(n, Bitset(n));
    p.down_set.assign(n, Bitset(n));
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        int v = *it;
        p.up_set[v].set(v);
        for (int w : p.up_covers[v]) p.up_set[v] |= p.up_set[w];
    }
    for (int v : topo) {
        p.down_set[v].set(v);
        for (int u : p.down_covers[v]) p.down_set[v] |= p.down_set[u];
    }
}

}  // namespace

int Poset::edge_index(int a, int b) const {
    auto it = edge_lookup.find(std::uint64_t(a) << 32 | std::uint64_t(b));
    return it == edge_lookup.end() ? -1 : it->second;
}

int Poset::vertex_at(int i, int j) const {
    if (!is_grid()) throw std::logic_error("vertex_at on a non-grid poset");
    if (i < 1 || i > grid_m || j < 1 || j > grid_n)
        throw std::invalid_argument("grid coordinate out of range");
    return (j - 1) * grid_m + (i - 1);
}

std::pair<int, int> Poset::coords(int v) const {
    if (!is_grid()) throw std::logic_error("coords on a non-grid poset");
    return {v % grid_m + 1, v / grid_m + 1};
}

std::shared_ptr<const Poset> Poset::opposite() const {
    auto op = std::make_shared<Poset>();
    op->names = names;
    for (auto [a, b] : hasse_edges) op->hasse_edges.emplace_back(b, a);
    finish(*op);
    return op;
}

std::shared_ptr<const Poset> make_grid(int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("grid sides must be positive");
    auto p = std::make_shared<Poset>();
    p->grid_m = m;
    p->grid_n = n;
    for (int j = 1; j <= n; ++j)
        for (int i = 1; i <= m; ++i)
            p->names.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
    for (int j = 1; j <= n; ++j)
        for (int i = 1; i <= m; ++i) {
            int v = (j - 1) * m + (i - 1);
            if (i < m) p->hasse_edges.emplace_back(v, v + 1);  // step right
            if (j < n) p->hasse_edges.emplace_back(v, v + m);  // step up
        }
    finish(*p);
    return p;
}

std::shared_ptr<const Poset> make_chain(int n) {
    if (n < 1) throw std::invalid_argument("chain length must be positive");
    auto p = std::make_shared<Poset>();
    for (int i = 1; i <= n; ++i) p->names.push_back(std::to_string(i));
    for (int i = 0; i + 1 < n; ++i) p->hasse_edges.emplace_back(i, i + 1);
    finish(*p);
    return p;
}

std::shared_ptr<const Poset> make_poset_from_hasse(const std::vector<std::string>& elements,
                                                   const std::vector<std::pair<int, int>>& edges) {
    {
        std::unordered_set<std::string> seen(elements.begin(), elements.end());
        if (seen.size() != elements.size()) throw std::invalid_argument("duplicate element label");
    }
    auto p = std::make_shared<Poset>();
    p->names = elements;
    int n = p->size();
    std::unordered_set<std::uint64_t> edge_seen;
    for (auto [a, b] : edges) {
        if (a < 0 || a >= n || b < 0 || b >= n) throw std::invalid_argument("edge endpoint out of range");
        if (a == b) throw std::invalid_argument("self-loop in order relation");
        if (!edge_seen.insert(std::uint64_t(a) << 32 | std::uint64_t(b)).second) continue;
        p->hasse_edges.emplace_back(a, b);
    }
    finish(*p);  // validates acyclicity, computes closures
    // drop transitively implied edges, then recompute covers
    std::vector<std::pair<int, int>> reduced;
    for (auto [a, b] : p->hasse_edges) {
        bool implied = false;
        for (int w : p->up_covers[a])
            if (w != b && p->leq(w, b)) { implied = true; break; }
        if (!implied) reduced.push_back({a, b});
    }
    if (reduced.size() != p->hasse_edges.size()) {
        p->hasse_edges = std::move(reduced);
        finish(*p);
    }
    return p;
}

Bitset convex_closure(const Poset& p, const Bitset& seed) {
    // {z : x ≤ z ≤ y for some x, y in seed} = (∪ up-sets) ∩ (∪ down-sets)
    Bitset up(p.size()), down(p.size());
    for (int v : seed.to_indices()) {
        up |= p.up_set[v];
        down |= p.down_set[v];
    }
    return up &= down;
}

bool is_connected_subset(const Poset& p, const Bitset& s) {
    auto idx = s.to_indices();
    if (idx.empty()) return false;
    Bitset seen(p.size());
    std::deque<int> q{idx[0]};
    seen.set(idx[0]);
    int found = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (const auto& adj : {p.up_covers[v], p.down_covers[v]})
            for (int w : adj)
                if (s.test(w) && !seen.test(w)) {
                    seen.set(w);
                    ++found;
                    q.push_back(w);
                }
    }
    return found == int(idx.size());
}

namespace {

std::vector<StairStep> staircase_of(const Poset& p, const std::vector<int>& members) {
    // rows present must be consecutive; each row a contiguous column range
    std::vector<std::pair<int, int>> range(p.grid_n + 1, {0, 0});  // 1-based rows, (lo,hi)
    int row_min = p.grid_n + 1, row_max = 0;
    std::vector<int> row_count(p.grid_n + 1, 0);
    for (int v : members) {
        auto [i, j] = p.coords(v);
        auto& r = range[j];
        if (row_count[j] == 0)
            r = {i, i};
        else {
            r.first = std::min(r.first, i);
            r.second = std::max(r.second, i);
        }
        ++row_count[j];
        row_min = std::min(row_min, j);
        row_max = std::max(row_max, j);
    }
    std::vector<StairStep> stair;
    for (int j = row_min; j <= row_max; ++j) {
        auto [lo, hi] = range[j];
        if (row_count[j] != hi - lo + 1)
            throw std::invalid_argument("grid interval has a non-contiguous row");
        stair.push_back({j, lo, hi});
    }
    for (std::size_t k = 0; k + 1 < stair.size(); ++k) {
        // one row up: starts no later, ends no later, still overlapping
        bool ok = stair[k + 1].lo <= stair[k].lo && stair[k].lo <= stair[k + 1].hi &&
                  stair[k + 1].hi <= stair[k].hi;
        if (!ok) throw std::invalid_argument("grid interval rows do not form a staircase");
    }
    return stair;
}

}  // namespace

Interval make_interval(const Poset& p, std::vector<int> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty()) throw std::invalid_argument("interval must be nonempty");
    Bitset mask(p.size());
    for (int v : members) {
        if (v < 0 || v >= p.size()) throw std::invalid_argument("interval member out of range");
        mask.set(v);
    }
    if (!is_connected_subset(p, mask)) throw std::invalid_argument("interval members are not connected");
    if (!(convex_closure(p, mask) == mask)) throw std::invalid_argument("interval members are not convex");
    Interval iv;
    iv.members = std::move(members);
    if (p.is_grid()) iv.staircase = staircase_of(p, iv.members);
    return iv;
}

namespace {

/// Staircase sweep: every grid interval is a stack of rows s..t with
/// lo_{r+1} <= lo_r <= hi_{r+1} <= hi_r.
std::vector<Bitset> enumerate_grid(const Poset& p) {
    std::vector<Bitset> out;
    int m = p.grid_m, n = p.grid_n;
    std::vector<StairStep> stair;
    auto emit = [&]() {
        Bitset mask(p.size());
        for (const auto& st : stair)
            for (int i = st.lo; i <= st.hi; ++i) mask.set(p.vertex_at(i, st.row));
        out.push_back(std::move(mask));
    };
    auto extend = [&](auto&& self, int row) -> void {
        emit();
        if (row > n) return;
        auto [prev_row, prev_lo, prev_hi] = stair.back();
        if (row != prev_row + 1) return;
        for (int lo = 1; lo <= prev_lo; ++lo)
            for (int hi = prev_lo; hi <= prev_hi; ++hi) {
                stair.push_back({row, lo, hi});
                self(self, row + 1);
                stair.pop_back();
            }
    };
    for (int s = 1; s <= n; ++s)
        for (int lo = 1; lo <= m; ++lo)
            for (int hi = lo; hi <= m; ++hi) {
                stair.push_back({s, lo, hi});
                extend(extend, s + 1);
                stair.pop_back();
            }
    return out;
}

/// General search: grow intervals one Hasse-adjacent vertex at a time and
/// close convexly. Every interval is reachable this way from a singleton.
std::vector<Bitset> enumerate_general(const Poset& p) {
    std::vector<Bitset> out;
    std::unordered_set<Bitset, BitsetHash> seen;
    std::deque<Bitset> queue;
    for (int v = 0; v < p.size(); ++v) {
        Bitset s(p.size());
        s.set(v);
        if (seen.insert(s).second) {
            out.push_back(s);
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        Bitset cur = std::move(queue.front());
        queue.pop_front();
        for (int v : cur.to_indices())
            for (const auto& adj : {p.up_covers[v], p.down_covers[v]})
                for (int w : adj) {
                    if (cur.test(w)) continue;
                    Bitset grown = cur;
                    grown.set(w);
                    Bitset closed = convex_closure(p, grown);
                    if (seen.insert(closed).second) {
                        out.push_back(closed);
                        queue.push_back(closed);
                    }
                }
    }
    return out;
}

}  // namespace

IntervalPoset::IntervalPoset(std::shared_ptr<const Poset> p) : poset_(std::move(p)) {
    std::vector<Bitset> masks = poset_->is_grid() ? enumerate_grid(*poset_) : enumerate_general(*poset_);
    intervals_.reserve(masks.size());
    for (const auto& mask : masks) intervals_.push_back(make_interval(*poset_, mask.to_indices()));
    std::sort(intervals_.begin(), intervals_.end(),
              [](const Interval& a, const Interval& b) { return a.members < b.members; });
    masks_.reserve(intervals_.size());
    for (const auto& iv : intervals_) {
        Bitset mask(poset_->size());
        for (int v : iv.members) mask.set(v);
        masks_.push_back(std::move(mask));
    }
    for (int i = 0; i < size(); ++i) lookup_.emplace(masks_[i], i);
    if (int(lookup_.size()) != size()) throw std::logic_error("duplicate interval in enumeration");
    build_covers();
}

int IntervalPoset::index_of(const std::vector<int>& members) const {
    Bitset mask(poset_->size());
    for (int v : members) {
        if (v < 0 || v >= poset_->size()) return -1;
        mask.set(v);
    }
    return index_of_mask(mask);
}

int IntervalPoset::index_of_mask(const Bitset& mask) const {
    auto it = lookup_.find(mask);
    return it == lookup_.end() ? -1 : it->second;
}

void IntervalPoset::build_covers() {
    int k = size();
    // strict supersets of each interval, in ascending size
    std::vector<int> by_size(k);
    for (int i = 0; i < k; ++i) by_size[i] = i;
    std::stable_sort(by_size.begin(), by_size.end(),
                     [&](int a, int b) { return masks_[a].count() < masks_[b].count(); });
    cover_lists_.assign(k, {});
    for (int i = 0; i < k; ++i) {
        std::vector<int>& covers = cover_lists_[i];
        for (int j : by_size) {
            if (masks_[j].count() <= masks_[i].count()) continue;
            if (!masks_[i].is_subset_of(masks_[j])) continue;
            bool minimal = true;
            for (int c : covers)
                if (masks_[c].is_subset_of(masks_[j])) { minimal = false; break; }
            if (minimal) covers.push_back(j);
        }
        std::sort(covers.begin(), covers.end());
    }
}

std::optional<int> IntervalPoset::join(const std::vector<int>& idxs) const {
    if (idxs.empty()) throw std::invalid_argument("join of an empty family");
    Bitset u(poset_->size());
    for (int i : idxs) u |= masks_[std::size_t(i)];
    // fast path: the convex closure of the union is already an interval
    Bitset closed = convex_closure(*poset_, u);
    if (int idx = index_of_mask(closed); idx >= 0) return idx;
    // otherwise scan all upper bounds for a minimum
    int best = -1;
    for (int j = 0; j < size(); ++j) {
        if (!closed.is_subset_of(masks_[j])) continue;
        if (best < 0 || masks_[j].count() < masks_[best].count()) best = j;
    }
    if (best < 0) return std::nullopt;
    for (int j = 0; j < size(); ++j)
        if (closed.is_subset_of(masks_[j]) && !masks_[best].is_subset_of(masks_[j]))
            return std::nullopt;  // no minimum upper bound
    return best;
}

}  // namespace intres
