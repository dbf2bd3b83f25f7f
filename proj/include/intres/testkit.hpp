#pragma once

#include <cstdint>
#include <vector>

#include "intres/module.hpp"
#include "intres/poset.hpp"

namespace intres {

/// Brute-force interval enumeration: checks every nonempty subset for
/// connectivity and convexity. Exponential; refuses posets over 20 vertices.
std::vector<Interval> oracle_intervals(const Poset& p);

/// An interval-decomposable module with known multiplicities, hidden behind
/// a random change of basis.
struct PlantedModule {
    std::vector<int> multiplicities;  // indexed parallel to the IntervalPoset
    PersistenceModule module;         // scrambled ⊕ V_J^{m_J}
    std::uint64_t seed;
};

/// Distributes `budget` interval summands uniformly over 𝕀 and scrambles.
PlantedModule plant(const IntervalPoset& ip, fp_t field, int budget, std::uint64_t seed);

/// Generic (usually non-interval-decomposable) module over a grid: random
/// dims, then arrow matrices sampled square by square with rejection so that
/// every unit square commutes.
PersistenceModule random_module_perturbed(std::shared_ptr<const Poset> grid, fp_t field,
                                          int dim_budget, std::uint64_t seed);

/// Submodule generated by random vectors at random vertices (spans closed
/// under all arrow maps), with the induced arrows.
PersistenceModule random_submodule(const PersistenceModule& m, std::uint64_t seed);

/// Random submodule of the interval module V_I.
PersistenceModule oracle_submodule(std::shared_ptr<const Poset> poset, fp_t field,
                                   const Interval& iv, std::uint64_t seed);

}  // namespace intres
