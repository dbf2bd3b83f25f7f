#pragma once

#include <array>
#include <memory>
#include <utility>
#include <vector>

#include "intres/module.hpp"
#include "intres/poset.hpp"

namespace intres {

/// The five-vertex zigzag 1 <- 2 -> 3 <- 4 -> 5 (dense ids 0..4), with the
/// four arrows stored in that order. One shared instance for the process.
std::shared_ptr<const Poset> zigzag_poset();

/// The interval {lo..hi} of the zigzag, 1-based endpoints.
Interval zigzag_range(int lo, int hi);

/// Vertex and arrow images of the compression morphism attached to one
/// interval of a two-row grid. Arrow images are segments (from, to) between
/// comparable grid vertices; from equals the image of the arrow's tail and
/// to the image of its head, so functoriality holds by construction.
struct XiMorphism {
    std::array<int, 5> vertex_images;
    std::array<std::pair<int, int>, 4> arrow_images;
};

/// The compression morphism for an interval of a ladder (grid n x 2).
/// Two-row intervals [x_i,x_j] ⊔ [y_k,y_l] map the zigzag onto the corners
/// (y_l, y_k, y_i, x_i, x_j); one-row intervals collapse the middle three
/// vertices onto the low end. Rejects posets that are not two-row grids.
XiMorphism xi(const Interval& iv, const Poset& ladder);

/// A representation of the zigzag: five spaces and four maps along the
/// arrows, with no commutativity constraints. maps[t] is shaped
/// spaces[head] x spaces[tail] of arrow t.
struct ZigzagModule {
    fp_t field = 2;
    std::array<int, 5> spaces{};
    std::vector<FpMatrix> maps;

    /// The same data as a module over zigzag_poset().
    PersistenceModule as_module() const;
    bool is_zero() const;
};

/// Restriction of a ladder module along the compression morphism of iv:
/// spaces at the vertex images, maps the composites along the arrow images.
ZigzagModule compress(const PersistenceModule& m, const Interval& iv);

/// Multiplicity of the full zigzag interval module as a direct summand,
/// read off hom dimensions against the four ranges <1,5>, <2,5>, <1,4>,
/// <2,4> (the almost split sequence ending the full interval).
int zigzag_top_multiplicity(const ZigzagModule& n);

/// zigzag_top_multiplicity(compress(m, iv)): how often the fully compressed
/// interval survives inside the compression of m at iv.
int compressed_multiplicity(const PersistenceModule& m, const Interval& iv);

/// Compressed multiplicities c and their Mobius inversion delta over the
/// containment order of intervals, both indexed parallel to the
/// IntervalPoset. delta is nonnegative on interval-decomposable inputs.
struct CompressedProfile {
    std::vector<int> c;
    std::vector<int> delta;
};

/// c on every interval (parallel map across `jobs` threads), then
/// delta(J) = sum over subsets S of the covers of J of
/// (-1)^|S| c(join(S ∪ {J})). Throws join_missing if a needed join does
/// not exist.
CompressedProfile interval_approximation_delta(const PersistenceModule& m, const IntervalPoset& ip,
                                               int jobs = 1);

}  // namespace intres
