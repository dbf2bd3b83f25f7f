#include "intres/artrans.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>
#include <utility>

#include "intres/errors.hpp"

namespace intres {

namespace {

/// Rows spanning the radical at x: the images of all incoming arrow maps.
RowSpace radical_space(const PersistenceModule& m, int x) {
    RowSpace rad(m.dim(x), m.field());
    std::vector<fp_t> row(m.dim(x));
    for (int y : m.poset().down_covers[x]) {
        const FpMatrix& a = m.arrow(y, x);
        for (int c = 0; c < a.cols(); ++c) {
            for (int r = 0; r < a.rows(); ++r) row[r] = a(r, c);
            rad.insert(row);
        }
    }
    return rad;
}

/// Standard basis vectors of M(x) that descend to a basis of the top,
/// reported as (apex vertex, coordinate) pairs grouped by vertex.
std::pair<std::vector<int>, std::vector<int>> top_generators(const PersistenceModule& m) {
    std::vector<int> apexes, coords;
    std::vector<fp_t> e;
    for (int x = 0; x < m.poset().size(); ++x) {
        RowSpace span = radical_space(m, x);
        for (int c = 0; c < m.dim(x); ++c) {
            e.assign(m.dim(x), 0);
            e[c] = 1;
            if (span.insert(e)) {
                apexes.push_back(x);
                coords.push_back(c);
            }
        }
    }
    return {std::move(apexes), std::move(coords)};
}

/// Summand indices whose projective is supported at each vertex, in order.
std::vector<std::vector<int>> summands_present(const Poset& p, const std::vector<int>& apexes) {
    std::vector<std::vector<int>> present(p.size());
    for (int z = 0; z < p.size(); ++z)
        for (int i = 0; i < int(apexes.size()); ++i)
            if (p.leq(apexes[i], z)) present[z].push_back(i);
    return present;
}

/// The projective cover determined by chosen top generators: summand i sends
/// its apex generator to the coords[i]-th basis vector of M(apexes[i]).
ModuleMorphism cover_morphism(const PersistenceModule& m, const std::vector<int>& apexes,
                              const std::vector<int>& coords) {
    const Poset& p = m.poset();
    PersistenceModule p0 = projective_sum(m.poset_ptr(), m.field(), apexes);
    auto present = summands_present(p, apexes);
    std::vector<FpMatrix> comps;
    comps.reserve(p.size());
    for (int z = 0; z < p.size(); ++z) {
        FpMatrix c(m.dim(z), p0.dim(z), m.field());
        for (int col = 0; col < int(present[z].size()); ++col) {
            int i = present[z][col];
            FpMatrix path = m.map_between(apexes[i], z);
            for (int r = 0; r < m.dim(z); ++r) c.set(r, col, path(r, coords[i]));
        }
        if (rank(c) != m.dim(z))
            throw internal_inconsistency("top generators fail to generate at " +
                                         p.names[z]);
        comps.push_back(std::move(c));
    }
    return ModuleMorphism(std::move(p0), m, std::move(comps));
}

/// Shared direction-reversal core of dual(): same spaces, transposed arrows
/// attached to the reversed edges of `rev`.
PersistenceModule dual_to(const PersistenceModule& m, std::shared_ptr<const Poset> rev) {
    const Poset& q = m.poset();
    const Poset& r = *rev;
    if (r.size() != q.size() || r.hasse_edges.size() != q.hasse_edges.size())
        throw std::invalid_argument("poset is not a reversal of the module's poset");
    std::vector<FpMatrix> arrows;
    arrows.reserve(r.hasse_edges.size());
    for (auto [a, b] : r.hasse_edges) {
        int e = q.edge_index(b, a);
        if (e < 0) throw std::invalid_argument("poset is not a reversal of the module's poset");
        arrows.push_back(transpose(m.arrow(e)));
    }
    return PersistenceModule(std::move(rev), m.field(), m.dims(), std::move(arrows));
}

/// Shared core of transpose(): cokernel of the transposed presentation
/// matrix realized over `rev`.
PersistenceModule transpose_to(const PersistenceModule& m, std::shared_ptr<const Poset> rev) {
    auto pres = minimal_projective_presentation(m);
    ModuleMorphism f = realize_projective_morphism(std::move(rev), m.field(), pres.p0_vertices,
                                                   pres.p1_vertices,
                                                   transpose(pres.segment_scalars));
    return cokernel(f).first;
}

}  // namespace

std::vector<int> top_dims(const PersistenceModule& m) {
    std::vector<int> t(m.poset().size());
    for (int x = 0; x < m.poset().size(); ++x) t[x] = m.dim(x) - radical_space(m, x).rank();
    return t;
}

PersistenceModule projective_sum(std::shared_ptr<const Poset> poset, fp_t field,
                                 const std::vector<int>& apexes) {
    std::vector<PersistenceModule> parts;
    parts.reserve(apexes.size());
    for (int x : apexes) parts.push_back(projective_at(poset, field, x));
    return direct_sum(std::move(poset), field, parts);
}

ModuleMorphism realize_projective_morphism(std::shared_ptr<const Poset> poset, fp_t field,
                                           const std::vector<int>& sources,
                                           const std::vector<int>& targets,
                                           const FpMatrix& scalars) {
    const Poset& p = *poset;
    if (scalars.rows() != int(sources.size()) || scalars.cols() != int(targets.size()))
        throw std::invalid_argument("segment scalar shape mismatch");
    if (scalars.modulus() != field) throw std::invalid_argument("segment scalar modulus mismatch");
    for (int i = 0; i < scalars.rows(); ++i)
        for (int j = 0; j < scalars.cols(); ++j)
            if (scalars(i, j) != 0 && !p.leq(targets[j], sources[i]))
                throw std::invalid_argument("scalar attached to a missing segment");
    PersistenceModule src = projective_sum(poset, field, sources);
    PersistenceModule tgt = projective_sum(poset, field, targets);
    auto src_present = summands_present(p, sources);
    auto tgt_present = summands_present(p, targets);
    std::vector<FpMatrix> comps;
    comps.reserve(p.size());
    for (int z = 0; z < p.size(); ++z) {
        FpMatrix c(tgt.dim(z), src.dim(z), field);
        for (int col = 0; col < int(src_present[z].size()); ++col)
            for (int row = 0; row < int(tgt_present[z].size()); ++row)
                c.set(row, col, scalars(src_present[z][col], tgt_present[z][row]));
        comps.push_back(std::move(c));
    }
    return ModuleMorphism(std::move(src), std::move(tgt), std::move(comps));
}

ProjectivePresentation minimal_projective_presentation(const PersistenceModule& m) {
    const Poset& p = m.poset();
    auto [ap0, c0] = top_generators(m);
    ModuleMorphism p0_to_m = cover_morphism(m, ap0, c0);
    auto [ker, incl] = kernel(p0_to_m);
    auto [ap1, c1] = top_generators(ker);
    ModuleMorphism p1_to_p0 = compose(incl, cover_morphism(ker, ap1, c1));

    auto p0_present = summands_present(p, ap0);
    auto p1_present = summands_present(p, ap1);
    FpMatrix scalars(int(ap1.size()), int(ap0.size()), m.field());
    for (int z = 0; z < p.size(); ++z)
        for (int col = 0; col < int(p1_present[z].size()); ++col) {
            int i = p1_present[z][col];
            if (ap1[i] != z) continue;  // read each generator at its apex
            for (int row = 0; row < int(p0_present[z].size()); ++row)
                scalars.set(i, p0_present[z][row], p1_to_p0.components[z](row, col));
        }
    for (int i = 0; i < scalars.rows(); ++i)
        for (int j = 0; j < scalars.cols(); ++j)
            if (ap1[i] == ap0[j] && scalars(i, j) != 0)
                throw internal_inconsistency("presentation built from covers is not minimal");
    return {std::move(ap1), std::move(ap0), std::move(scalars), std::move(p1_to_p0),
            std::move(p0_to_m)};
}

void minimize_segments(std::vector<int>& sources, std::vector<int>& targets, FpMatrix& scalars) {
    if (scalars.rows() != int(sources.size()) || scalars.cols() != int(targets.size()))
        throw std::invalid_argument("segment scalar shape mismatch");
    FpOps f(scalars.modulus());
    std::vector<char> row_dead(sources.size(), 0), col_dead(targets.size(), 0);
    for (bool progress = true; progress;) {
        progress = false;
        for (int i = 0; i < scalars.rows() && !progress; ++i) {
            if (row_dead[i]) continue;
            for (int j = 0; j < scalars.cols(); ++j) {
                if (col_dead[j] || sources[i] != targets[j] || scalars(i, j) == 0) continue;
                fp_t inv = f.inv(scalars(i, j));
                // clear the pivot column with row operations, then the pivot
                // row with column operations (each stays segment-legal)
                for (int r = 0; r < scalars.rows(); ++r) {
                    if (r == i || row_dead[r] || scalars(r, j) == 0) continue;
                    fp_t mu = f.mul(scalars(r, j), inv);
                    for (int c = 0; c < scalars.cols(); ++c)
                        if (!col_dead[c])
                            scalars.set(r, c, f.sub(scalars(r, c), f.mul(mu, scalars(i, c))));
                }
                for (int c = 0; c < scalars.cols(); ++c)
                    if (c != j && !col_dead[c]) scalars.set(i, c, 0);
                row_dead[i] = col_dead[j] = 1;
                progress = true;
                break;
            }
        }
    }
    std::vector<int> new_sources, new_targets;
    for (int i = 0; i < int(sources.size()); ++i)
        if (!row_dead[i]) new_sources.push_back(sources[i]);
    for (int j = 0; j < int(targets.size()); ++j)
        if (!col_dead[j]) new_targets.push_back(targets[j]);
    FpMatrix reduced(int(new_sources.size()), int(new_targets.size()), scalars.modulus());
    for (int i = 0, r = 0; i < int(sources.size()); ++i) {
        if (row_dead[i]) continue;
        for (int j = 0, c = 0; j < int(targets.size()); ++j)
            if (!col_dead[j]) reduced.set(r, c++, scalars(i, j));
        ++r;
    }
    sources = std::move(new_sources);
    targets = std::move(new_targets);
    scalars = std::move(reduced);
}

PersistenceModule transpose(const PersistenceModule& m) {
    return transpose_to(m, m.poset().opposite());
}

PersistenceModule transpose(const PersistenceModule& m, std::shared_ptr<const Poset> reversed) {
    return transpose_to(m, std::move(reversed));
}

PersistenceModule dual(const PersistenceModule& m) { return dual_to(m, m.poset().opposite()); }

PersistenceModule dual(const PersistenceModule& m, std::shared_ptr<const Poset> reversed) {
    return dual_to(m, std::move(reversed));
}

PersistenceModule tau(const PersistenceModule& m) {
    return dual_to(transpose_to(m, m.poset().opposite()), m.poset_ptr());
}

PersistenceModule tau_inverse(const PersistenceModule& m) {
    return transpose_to(dual_to(m, m.poset().opposite()), m.poset_ptr());
}

TranslateSweep translate_sweep(const IntervalPoset& ip, fp_t field, int jobs, int max_depth) {
    int n = ip.size();
    TranslateSweep sweep;
    if (n == 0) return sweep;
    // Resolving tau_inverse(V_I) itself can give a strictly smaller maximum
    // (seen on the 2x4 grid), because the dual argument bounds the length of
    // interval CO-resolutions. Reading those through vector-space duality
    // turns them into ordinary resolutions of translates over the opposite
    // poset, which is what the mirrored side computes.
    IntervalPoset ip_op(ip.poset().opposite());
    if (ip_op.size() != n) throw internal_inconsistency("opposite poset interval count differs");
    jobs = std::clamp(jobs, 1, 2 * n);
    sweep.tau_lengths.assign(n, 0);
    sweep.mirrored_lengths.assign(n, 0);
    std::atomic<int> cursor{0};
    std::vector<std::exception_ptr> errors(jobs);
    auto work = [&](int w) {
        try {
            ResolutionEngine engine(ip);
            ResolutionEngine engine_op(ip_op);
            for (;;) {
                int t = cursor.fetch_add(1);
                if (t >= 2 * n) break;
                if (t < n) {
                    auto vi = interval_module(ip.poset_ptr(), field, ip.at(t));
                    sweep.tau_lengths[t] = engine.resolve(tau(vi), max_depth).length();
                } else {
                    auto vj = interval_module(ip_op.poset_ptr(), field, ip_op.at(t - n));
                    sweep.mirrored_lengths[t - n] = engine_op.resolve(tau(vj), max_depth).length();
                }
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
    return sweep;
}

int intgldim(const IntervalPoset& ip, fp_t field, int jobs, int max_depth) {
    if (ip.size() == 0) return 0;
    auto sweep = translate_sweep(ip, field, jobs, max_depth);
    int via_tau = *std::max_element(sweep.tau_lengths.begin(), sweep.tau_lengths.end());
    int via_dual = *std::max_element(sweep.mirrored_lengths.begin(), sweep.mirrored_lengths.end());
    if (via_tau != via_dual)
        throw internal_inconsistency("translate and inverse translate give different maxima");
    return via_tau;
}

}  // namespace intres
