#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "intres/bitset.hpp"

namespace intres {

/// Finite poset on dense vertex ids 0..size-1, presented by its Hasse diagram.
/// leq is the cached reflexive-transitive closure of the cover edges.
struct Poset {
    std::vector<std::string> names;               // display labels
    std::vector<std::pair<int, int>> hasse_edges; // (lower, upper) cover pairs
    std::vector<std::vector<int>> up_covers;      // v -> all w with v ⋖ w
    std::vector<std::vector<int>> down_covers;    // v -> all u with u ⋖ v
    std::vector<Bitset> up_set;                   // up_set[v].test(w) iff v ≤ w
    std::vector<Bitset> down_set;                 // down_set[v].test(u) iff u ≤ v
    int grid_m = 0, grid_n = 0;                   // > 0 when built as a grid

    int size() const { return int(names.size()); }
    bool leq(int a, int b) const { return up_set[a].test(b); }
    bool is_grid() const { return grid_m > 0; }

    /// Position of cover (a,b) in hasse_edges; -1 when not an edge.
    int edge_index(int a, int b) const;

    /// 1-based grid coordinates (column i in 1..m, row j in 1..n).
    int vertex_at(int i, int j) const;
    std::pair<int, int> coords(int v) const;

    /// Same vertices, reversed order. Grid labeling is not preserved.
    std::shared_ptr<const Poset> opposite() const;

    std::unordered_map<std::uint64_t, int> edge_lookup;  // (a<<32|b) -> index
};

/// Product order on {1..m} x {1..n}; Hasse edges are unit steps right and up.
std::shared_ptr<const Poset> make_grid(int m, int n);

/// Total order 1 < 2 < ... < n.
std::shared_ptr<const Poset> make_chain(int n);

/// Poset from labeled elements and (lower, upper) edges given by element index.
/// Accepts any acyclic edge set; transitively implied edges are dropped so the
/// stored hasse_edges are the true covers.
std::shared_ptr<const Poset> make_poset_from_hasse(const std::vector<std::string>& elements,
                                                   const std::vector<std::pair<int, int>>& edges);

/// One row of a staircase: columns [lo, hi] of row `row` (all 1-based).
struct StairStep {
    int row = 0, lo = 0, hi = 0;
    bool operator==(const StairStep&) const = default;
};

/// A connected convex subset. Over grids, `staircase` carries the row-wise
/// [lo,hi] description (consecutive rows r, r+1 satisfy
/// lo_{r+1} <= lo_r <= hi_{r+1} <= hi_r).
struct Interval {
    std::vector<int> members;          // sorted dense vertex ids
    std::vector<StairStep> staircase;  // nonempty only over grid posets
    bool operator==(const Interval& o) const { return members == o.members; }
};

/// Validates connectivity and convexity, sorts members, and fills in the
/// staircase descriptor when the ambient poset is a grid.
Interval make_interval(const Poset& p, std::vector<int> members);

/// Smallest convex subset containing `seed` (not necessarily connected).
Bitset convex_closure(const Poset& p, const Bitset& seed);

/// Nonempty and connected in the underlying Hasse graph.
bool is_connected_subset(const Poset& p, const Bitset& s);

/// All intervals of a poset, ordered by containment. Construction enumerates
/// every interval (staircase sweep on grids, closure search in general),
/// sorts them lexicographically by member set, and precomputes covers.
class IntervalPoset {
public:
    explicit IntervalPoset(std::shared_ptr<const Poset> p);

    const Poset& poset() const { return *poset_; }
    const std::shared_ptr<const Poset>& poset_ptr() const { return poset_; }

    int size() const { return int(intervals_.size()); }
    const Interval& at(int idx) const { return intervals_[idx]; }
    const std::vector<Interval>& intervals() const { return intervals_; }
    const Bitset& mask(int idx) const { return masks_[idx]; }

    /// Index of the interval with the given (sorted) member set, or -1.
    int index_of(const std::vector<int>& members) const;
    int index_of_mask(const Bitset& mask) const;

    /// I_i ≤ I_j in the containment order (membership inclusion).
    bool contained_in(int i, int j) const { return masks_[i].is_subset_of(masks_[j]); }

    /// Up-covers: the minimal intervals strictly containing interval idx.
    const std::vector<int>& covers_of(int idx) const { return cover_lists_[idx]; }

    /// Least upper bound in the containment order, or nullopt when the set of
    /// upper bounds has no minimum.
    std::optional<int> join(const std::vector<int>& idxs) const;

private:
    std::shared_ptr<const Poset> poset_;
    std::vector<Interval> intervals_;
    std::vector<Bitset> masks_;
    std::vector<std::vector<int>> cover_lists_;
    std::unordered_map<Bitset, int, BitsetHash> lookup_;
    void build_covers();
};

}  // namespace intres
