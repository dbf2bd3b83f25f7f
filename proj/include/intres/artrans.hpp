#pragma once

#include <memory>
#include <vector>

#include "intres/approx.hpp"
#include "intres/module.hpp"

namespace intres {

/// Per-vertex dimension of M(x) modulo the span of the images of all
/// incoming arrow maps (the radical at x).
std::vector<int> top_dims(const PersistenceModule& m);

/// Direct sum of indecomposable projectives with the given apex vertices
/// (repetitions allowed); summand order follows `apexes`.
PersistenceModule projective_sum(std::shared_ptr<const Poset> poset, fp_t field,
                                 const std::vector<int>& apexes);

/// A morphism between sums of projectives is determined by one scalar per
/// summand pair, attached to the segment targets[j] <= sources[i]; entry
/// (i, j) of `scalars` must be zero whenever that relation fails.
ModuleMorphism realize_projective_morphism(std::shared_ptr<const Poset> poset, fp_t field,
                                           const std::vector<int>& sources,
                                           const std::vector<int>& targets,
                                           const FpMatrix& scalars);

/// Minimal presentation P1 -> P0 -> M -> 0: both maps are projective covers,
/// so no P1 summand maps isomorphically onto a P0 summand.
struct ProjectivePresentation {
    std::vector<int> p1_vertices, p0_vertices;  // summand apexes, with multiplicity
    FpMatrix segment_scalars;                   // rows: P1 summands, cols: P0 summands
    ModuleMorphism p1_to_p0, p0_to_m;
};

ProjectivePresentation minimal_projective_presentation(const PersistenceModule& m);

/// Splits off summand pairs joined by an invertible scalar on an
/// equal-vertex segment, shrinking the data in place. Output of
/// minimal_projective_presentation is already reduced; this handles
/// externally supplied presentations.
void minimize_segments(std::vector<int>& sources, std::vector<int>& targets, FpMatrix& scalars);

/// Transpose over the opposite poset: the cokernel of the transposed
/// segment matrix of a minimal presentation, re-read over reversed covers.
/// Zero exactly on projectives. The second overload reuses a caller-held
/// reversal so results stay comparable across calls.
PersistenceModule transpose(const PersistenceModule& m);
PersistenceModule transpose(const PersistenceModule& m, std::shared_ptr<const Poset> reversed);

/// Vector-space dual over the opposite poset: dimensions kept, arrow
/// matrices transposed onto the reversed edges.
PersistenceModule dual(const PersistenceModule& m);
PersistenceModule dual(const PersistenceModule& m, std::shared_ptr<const Poset> reversed);

/// Auslander-Reiten translate dual(transpose(M)), re-attached to the
/// original poset. Zero exactly on projectives.
PersistenceModule tau(const PersistenceModule& m);
/// Inverse translate transpose(dual(M)); zero exactly on injectives.
PersistenceModule tau_inverse(const PersistenceModule& m);

/// Resolution lengths of the translated interval modules: tau_lengths[i] is
/// interval_dimension(tau(V_I_i)); mirrored_lengths holds the same sweep over
/// the opposite poset, which reads the inverse-translate side through
/// vector-space duality (coresolutions there become resolutions).
struct TranslateSweep {
    std::vector<int> tau_lengths;
    std::vector<int> mirrored_lengths;
};
/// `jobs` distributes the per-interval work across threads.
TranslateSweep translate_sweep(const IntervalPoset& ip, fp_t field, int jobs = 1,
                               int max_depth = -1);

/// Largest resolution length any module over the poset can attain: the
/// maximum of interval_dimension(tau(V_I)) over all intervals I. The maxima
/// of both translate_sweep sides must agree; disagreement throws.
int intgldim(const IntervalPoset& ip, fp_t field, int jobs = 1, int max_depth = -1);

}  // namespace intres
