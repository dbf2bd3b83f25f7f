#pragma once

#include <unordered_map>
#include <vector>

#include "intres/module.hpp"
#include "intres/poset.hpp"

namespace intres {

/// One minimal right approximation: a surjection ⊕_J V_J^{d_J} -> target
/// through which every map from an interval module factors, with no
/// droppable summand.
struct ApproximationStep {
    std::vector<int> multiplicities;     // d_J, indexed parallel to the IntervalPoset
    std::vector<int> summand_intervals;  // interval index of each cover summand, in order
    ModuleMorphism cover;
    PersistenceModule kernel_module;
};

/// Iterated approximations 0 -> X_r -> ... -> X_0 -> M -> 0; the last kernel
/// is zero and every earlier one is not.
struct IntervalResolution {
    std::vector<ApproximationStep> steps;  // always at least one
    int length() const { return int(steps.size()) - 1; }
    int interval_count() const { return int(steps.front().multiplicities.size()); }
    /// table[J][i] = d_J at step i
    std::vector<std::vector<int>> table() const;
};

struct ResolutionChecks {
    bool surjective = false;     // every cover epi at every vertex
    bool exact = false;          // rank/nullity bookkeeping of the assembled sequence
    bool approximation = false;  // ∀K: dim im Hom(V_K, f_i) = dim Hom(V_K, target_i)
    bool all() const { return surjective && exact && approximation; }
};

/// Shared workspace for resolving many modules over one interval poset:
/// memoizes the module-independent Hom(V_I, V_J) tables. Not thread-safe;
/// use one engine per worker.
class ResolutionEngine {
public:
    explicit ResolutionEngine(const IntervalPoset& ip);

    const IntervalPoset& intervals() const { return ip_; }

    ApproximationStep approximate(const PersistenceModule& m) const;

    /// max_depth < 0 selects the default budget |P| * |𝕀|.
    IntervalResolution resolve(const PersistenceModule& m, int max_depth = -1) const;

    ResolutionChecks verify(const PersistenceModule& m, const IntervalResolution& r) const;

    /// Basis of Hom(V_i, V_j) as indicator masks: the connected pieces of
    /// i∩j with no entry edge from i∖j and no exit edge into j∖i.
    const std::vector<Bitset>& pair_homs(int i, int j) const;

private:
    const IntervalPoset& ip_;
    std::vector<std::vector<int>> min_vertices_;  // minimal members of each interval
    mutable std::unordered_map<std::uint64_t, std::vector<Bitset>> pair_cache_;
};

ApproximationStep minimal_right_interval_approximation(const PersistenceModule& m,
                                                       const IntervalPoset& ip);
IntervalResolution interval_resolution(const PersistenceModule& m, const IntervalPoset& ip,
                                       int max_depth = -1);
int interval_dimension(const PersistenceModule& m, const IntervalPoset& ip);

/// J ↦ Σ_i (−1)^i d_J^{(i)}; may be negative for general modules.
std::vector<int> euler_profile(const IntervalResolution& r);

}  // namespace intres
