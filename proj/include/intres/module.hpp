#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "intres/fp_matrix.hpp"
#include "intres/poset.hpp"

namespace intres {

/// A functor P -> vect_{F_p}: one space per vertex, one matrix per Hasse edge,
/// with full commutativity (the composite along any path x -> y depends only
/// on the endpoints). Commutativity and shapes are validated on construction.
class PersistenceModule {
public:
    /// arrows are indexed parallel to poset->hasse_edges, shaped dims[y] x dims[x].
    PersistenceModule(std::shared_ptr<const Poset> poset, fp_t field, std::vector<int> dims,
                      std::vector<FpMatrix> arrows);

    const Poset& poset() const { return *poset_; }
    const std::shared_ptr<const Poset>& poset_ptr() const { return poset_; }
    fp_t field() const { return field_; }

    int dim(int v) const { return dims_[v]; }
    const std::vector<int>& dims() const { return dims_; }
    const FpMatrix& arrow(int edge_idx) const { return arrows_[edge_idx]; }
    const FpMatrix& arrow(int x, int y) const;  // along the cover x ⋖ y
    const std::vector<FpMatrix>& arrows() const { return arrows_; }

    /// Composite map M(x -> y) for any x ≤ y (identity when x == y).
    FpMatrix map_between(int x, int y) const;

    int total_dim() const;
    bool is_zero() const { return total_dim() == 0; }
    Bitset support() const;

private:
    std::shared_ptr<const Poset> poset_;
    fp_t field_ = 2;
    std::vector<int> dims_;
    std::vector<FpMatrix> arrows_;
};

/// Path-independence of all arrow composites; true for every constructed
/// module (construction rejects violations), exposed for external data.
bool check_commutativity(const PersistenceModule& m);

PersistenceModule zero_module(std::shared_ptr<const Poset> poset, fp_t field);

/// The thin module supported on an interval: k on members, identity arrows inside.
PersistenceModule interval_module(std::shared_ptr<const Poset> poset, fp_t field, const Interval& iv);

/// Indecomposable projective at x: interval module on the principal up-set.
PersistenceModule projective_at(std::shared_ptr<const Poset> poset, fp_t field, int x);
/// Indecomposable injective at x: interval module on the principal down-set.
PersistenceModule injective_at(std::shared_ptr<const Poset> poset, fp_t field, int x);

PersistenceModule direct_sum(std::shared_ptr<const Poset> poset, fp_t field,
                             const std::vector<PersistenceModule>& ms);

/// Conjugates every space by a seeded random invertible matrix; the result is
/// isomorphic to the input but no longer visibly decomposed.
PersistenceModule scramble(const PersistenceModule& m, std::uint64_t seed);

/// A natural transformation between modules over the same poset; the
/// intertwining relations are validated on construction.
struct ModuleMorphism {
    ModuleMorphism(PersistenceModule source, PersistenceModule target,
                   std::vector<FpMatrix> components);

    PersistenceModule source, target;
    std::vector<FpMatrix> components;  // per vertex, shaped target.dim(x) x source.dim(x)

    bool is_zero() const;
};

ModuleMorphism identity_morphism(const PersistenceModule& m);
ModuleMorphism zero_morphism(const PersistenceModule& source, const PersistenceModule& target);
ModuleMorphism compose(const ModuleMorphism& g, const ModuleMorphism& f);  // g ∘ f

/// A deterministic basis of Hom(source, target), stored as per-vertex
/// component matrices for each basis element.
class HomBasis {
public:
    HomBasis(PersistenceModule source, PersistenceModule target,
             std::vector<std::vector<FpMatrix>> elements);

    int dimension() const { return int(elements_.size()); }
    const PersistenceModule& source() const { return source_; }
    const PersistenceModule& target() const { return target_; }
    const std::vector<FpMatrix>& components(int i) const { return elements_[i]; }

    ModuleMorphism morphism(int i) const;
    /// The linear combination sum_i coeffs[i] * basis[i].
    ModuleMorphism combine(std::span<const fp_t> coeffs) const;

private:
    PersistenceModule source_, target_;
    std::vector<std::vector<FpMatrix>> elements_;
};

/// Basis of all natural transformations source => target, by solving the
/// intertwining system over all Hasse edges.
HomBasis hom_basis(const PersistenceModule& source, const PersistenceModule& target);

/// Same result as hom_basis(interval_module(I), target) but solved by
/// propagating from the minimal vertices of I. Returns the same dimension;
/// basis vectors may differ by a change of basis.
HomBasis hom_from_interval(const Interval& iv, const PersistenceModule& target);

/// Vertexwise kernel with induced arrows, plus the inclusion morphism.
std::pair<PersistenceModule, ModuleMorphism> kernel(const ModuleMorphism& f);
/// Vertexwise cokernel with induced arrows, plus the projection morphism.
std::pair<PersistenceModule, ModuleMorphism> cokernel(const ModuleMorphism& f);

}  // namespace intres
