#include "intres/module.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

namespace intres {

namespace {

/// Any linear extension: sorting by down-set size works because a < b forces
/// |down(a)| < |down(b)|.
std::vector<int> topo_order(const Poset& p) {
    std::vector<int> order(p.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return p.down_set[a].count() < p.down_set[b].count();
    });
    return order;
}

std::string vertex_label(const Poset& p, int v) { return p.names[v]; }

}  // namespace

PersistenceModule::PersistenceModule(std::shared_ptr<const Poset> poset, fp_t field,
                                     std::vector<int> dims, std::vector<FpMatrix> arrows)
    : poset_(std::move(poset)), field_(field), dims_(std::move(dims)), arrows_(std::move(arrows)) {
    FpOps check_field(field_);
    (void)check_field;
    const Poset& p = *poset_;
    if (int(dims_.size()) != p.size()) throw std::invalid_argument("dims size mismatch");
    for (int d : dims_)
        if (d < 0) throw std::invalid_argument("negative dimension");
    if (arrows_.size() != p.hasse_edges.size()) throw std::invalid_argument("arrow count mismatch");
    for (std::size_t e = 0; e < arrows_.size(); ++e) {
        auto [x, y] = p.hasse_edges[e];
        const FpMatrix& a = arrows_[e];
        if (a.rows() != dims_[y] || a.cols() != dims_[x])
            throw std::invalid_argument("arrow shape mismatch on edge " + vertex_label(p, x) + "->" +
                                        vertex_label(p, y));
        if (a.modulus() != field_) throw std::invalid_argument("arrow modulus mismatch");
    }
    if (!check_commutativity(*this))
        throw std::invalid_argument("arrow maps are not path-independent");
}

const FpMatrix& PersistenceModule::arrow(int x, int y) const {
    int e = poset_->edge_index(x, y);
    if (e < 0) throw std::invalid_argument("not a Hasse edge");
    return arrows_[e];
}

FpMatrix PersistenceModule::map_between(int x, int y) const {
    const Poset& p = *poset_;
    if (!p.leq(x, y)) throw std::invalid_argument("map_between requires x ≤ y");
    FpMatrix acc = FpMatrix::identity(dims_[x], field_);
    int cur = x;
    while (cur != y) {
        int next = -1;
        for (int u : p.up_covers[cur])
            if (p.leq(u, y)) { next = u; break; }  // up_covers sorted: deterministic
        acc = mul(arrow(cur, next), acc);
        cur = next;
    }
    return acc;
}

int PersistenceModule::total_dim() const {
    return std::accumulate(dims_.begin(), dims_.end(), 0);
}

Bitset PersistenceModule::support() const {
    Bitset s(poset_->size());
    for (int v = 0; v < poset_->size(); ++v)
        if (dims_[v] > 0) s.set(v);
    return s;
}

bool check_commutativity(const PersistenceModule& m) {
    const Poset& p = m.poset();
    auto order = topo_order(p);
    for (int x = 0; x < p.size(); ++x) {
        std::vector<std::optional<FpMatrix>> to(p.size());
        to[x] = FpMatrix::identity(m.dim(x), m.field());
        for (int y : order) {
            if (y == x || !p.leq(x, y)) continue;
            for (int u : p.down_covers[y]) {
                if (!p.leq(x, u)) continue;
                FpMatrix cand = mul(m.arrow(u, y), *to[u]);
                if (!to[y])
                    to[y] = std::move(cand);
                else if (!(*to[y] == cand))
                    return false;
            }
        }
    }
    return true;
}

PersistenceModule zero_module(std::shared_ptr<const Poset> poset, fp_t field) {
    const Poset& p = *poset;
    std::vector<int> dims(p.size(), 0);
    std::vector<FpMatrix> arrows(p.hasse_edges.size(), FpMatrix(0, 0, field));
    return PersistenceModule(poset, field, std::move(dims), std::move(arrows));
}

PersistenceModule interval_module(std::shared_ptr<const Poset> poset, fp_t field,
                                  const Interval& iv) {
    const Poset& p = *poset;
    Interval checked = make_interval(p, iv.members);  // rejects non-intervals
    std::vector<int> dims(p.size(), 0);
    for (int v : checked.members) dims[v] = 1;
    std::vector<FpMatrix> arrows;
    arrows.reserve(p.hasse_edges.size());
    for (auto [x, y] : p.hasse_edges) {
        FpMatrix a(dims[y], dims[x], field);
        if (dims[x] == 1 && dims[y] == 1) a.set(0, 0, 1);
        arrows.push_back(std::move(a));
    }
    return PersistenceModule(poset, field, std::move(dims), std::move(arrows));
}

PersistenceModule projective_at(std::shared_ptr<const Poset> poset, fp_t field, int x) {
    if (x < 0 || x >= poset->size()) throw std::invalid_argument("vertex out of range");
    return interval_module(poset, field, make_interval(*poset, poset->up_set[x].to_indices()));
}

PersistenceModule injective_at(std::shared_ptr<const Poset> poset, fp_t field, int x) {
    if (x < 0 || x >= poset->size()) throw std::invalid_argument("vertex out of range");
    return interval_module(poset, field, make_interval(*poset, poset->down_set[x].to_indices()));
}

PersistenceModule direct_sum(std::shared_ptr<const Poset> poset, fp_t field,
                             const std::vector<PersistenceModule>& ms) {
    const Poset& p = *poset;
    for (const auto& m : ms) {
        if (&m.poset() != &p) throw std::invalid_argument("direct_sum: poset mismatch");
        if (m.field() != field) throw std::invalid_argument("direct_sum: field mismatch");
    }
    std::vector<int> dims(p.size(), 0);
    for (const auto& m : ms)
        for (int v = 0; v < p.size(); ++v) dims[v] += m.dim(v);
    std::vector<FpMatrix> arrows;
    arrows.reserve(p.hasse_edges.size());
    for (std::size_t e = 0; e < p.hasse_edges.size(); ++e) {
        auto [x, y] = p.hasse_edges[e];
        if (ms.empty()) {
            arrows.push_back(FpMatrix(0, 0, field));
            continue;
        }
        std::vector<FpMatrix> blocks;
        blocks.reserve(ms.size());
        for (const auto& m : ms) blocks.push_back(m.arrow(int(e)));
        FpMatrix a = block_diag(blocks);
        (void)x;
        (void)y;
        arrows.push_back(std::move(a));
    }
    return PersistenceModule(poset, field, std::move(dims), std::move(arrows));
}

namespace {

FpMatrix random_invertible(int n, fp_t p, std::mt19937_64& rng) {
    std::uniform_int_distribution<fp_t> dist(0, p - 1);
    std::uniform_int_distribution<fp_t> nonzero(1, p - 1);
    FpMatrix lower = FpMatrix::identity(n, p), upper = FpMatrix::identity(n, p);
    for (int i = 0; i < n; ++i) {
        upper.set(i, i, nonzero(rng));
        for (int j = 0; j < i; ++j) lower.set(i, j, dist(rng));
        for (int j = i + 1; j < n; ++j) upper.set(i, j, dist(rng));
    }
    return mul(lower, upper);
}

}  // namespace

PersistenceModule scramble(const PersistenceModule& m, std::uint64_t seed) {
    const Poset& p = m.poset();
    std::mt19937_64 rng(seed);
    std::vector<FpMatrix> s, s_inv;
    for (int v = 0; v < p.size(); ++v) {
        FpMatrix sv = random_invertible(m.dim(v), m.field(), rng);
        auto inv = invert(sv);
        if (!inv) throw std::logic_error("scramble produced a singular matrix");
        s.push_back(std::move(sv));
        s_inv.push_back(std::move(*inv));
    }
    std::vector<FpMatrix> arrows;
    for (std::size_t e = 0; e < p.hasse_edges.size(); ++e) {
        auto [x, y] = p.hasse_edges[e];
        arrows.push_back(mul(s[y], mul(m.arrow(int(e)), s_inv[x])));
    }
    return PersistenceModule(m.poset_ptr(), m.field(), m.dims(), std::move(arrows));
}

ModuleMorphism::ModuleMorphism(PersistenceModule source_in, PersistenceModule target_in,
                               std::vector<FpMatrix> components_in)
    : source(std::move(source_in)), target(std::move(target_in)), components(std::move(components_in)) {
    const Poset& p = source.poset();
    if (&p != &target.poset()) throw std::invalid_argument("morphism endpoints over different posets");
    if (source.field() != target.field()) throw std::invalid_argument("morphism field mismatch");
    if (int(components.size()) != p.size()) throw std::invalid_argument("component count mismatch");
    for (int v = 0; v < p.size(); ++v) {
        const FpMatrix& c = components[v];
        if (c.rows() != target.dim(v) || c.cols() != source.dim(v) || c.modulus() != source.field())
            throw std::invalid_argument("component shape mismatch at " + vertex_label(p, v));
    }
    for (std::size_t e = 0; e < p.hasse_edges.size(); ++e) {
        auto [x, y] = p.hasse_edges[e];
        if (!(mul(components[y], source.arrow(int(e))) == mul(target.arrow(int(e)), components[x])))
            throw std::invalid_argument("components are not natural on edge " + vertex_label(p, x) +
                                        "->" + vertex_label(p, y));
    }
}

bool ModuleMorphism::is_zero() const {
    return std::all_of(components.begin(), components.end(),
                       [](const FpMatrix& c) { return c.is_zero(); });
}

ModuleMorphism identity_morphism(const PersistenceModule& m) {
    std::vector<FpMatrix> comps;
    for (int v = 0; v < m.poset().size(); ++v)
        comps.push_back(FpMatrix::identity(m.dim(v), m.field()));
    return ModuleMorphism(m, m, std::move(comps));
}

ModuleMorphism zero_morphism(const PersistenceModule& source, const PersistenceModule& target) {
    std::vector<FpMatrix> comps;
    for (int v = 0; v < source.poset().size(); ++v)
        comps.push_back(FpMatrix(target.dim(v), source.dim(v), source.field()));
    return ModuleMorphism(source, target, std::move(comps));
}

ModuleMorphism compose(const ModuleMorphism& g, const ModuleMorphism& f) {
    if (&g.source.poset() != &f.target.poset() || !(g.source.dims() == f.target.dims()))
        throw std::invalid_argument("compose: middle modules do not match");
    std::vector<FpMatrix> comps;
    for (std::size_t v = 0; v < f.components.size(); ++v)
        comps.push_back(mul(g.components[v], f.components[v]));
    return ModuleMorphism(f.source, g.target, std::move(comps));
}

HomBasis::HomBasis(PersistenceModule source, PersistenceModule target,
                   std::vector<std::vector<FpMatrix>> elements)
    : source_(std::move(source)), target_(std::move(target)), elements_(std::move(elements)) {}

ModuleMorphism HomBasis::morphism(int i) const {
    return ModuleMorphism(source_, target_, elements_[i]);
}

ModuleMorphism HomBasis::combine(std::span<const fp_t> coeffs) const {
    if (int(coeffs.size()) != dimension()) throw std::invalid_argument("combine: coefficient count");
    FpOps ops(source_.field());
    std::vector<FpMatrix> comps;
    for (int v = 0; v < source_.poset().size(); ++v) {
        FpMatrix acc(target_.dim(v), source_.dim(v), source_.field());
        for (int i = 0; i < dimension(); ++i) {
            fp_t c = coeffs[i];
            if (c == 0) continue;
            const FpMatrix& b = elements_[i][v];
            for (std::size_t k = 0; k < acc.data().size(); ++k)
                acc.data()[k] = ops.add(acc.data()[k], ops.mul(c, b.data()[k]));
        }
        comps.push_back(std::move(acc));
    }
    return ModuleMorphism(source_, target_, comps);
}

HomBasis hom_basis(const PersistenceModule& source, const PersistenceModule& target) {
    const Poset& p = source.poset();
    if (&p != &target.poset()) throw std::invalid_argument("hom_basis: poset mismatch");
    if (source.field() != target.field()) throw std::invalid_argument("hom_basis: field mismatch");
    fp_t field = source.field();
    // unknowns: entries of F_v (target.dim(v) x source.dim(v)), row-major, vertex-ascending
    std::vector<int> offset(p.size() + 1, 0);
    for (int v = 0; v < p.size(); ++v)
        offset[v + 1] = offset[v] + target.dim(v) * source.dim(v);
    int unknowns = offset[p.size()];
    int rows = 0;
    for (auto [x, y] : p.hasse_edges) rows += target.dim(y) * source.dim(x);
    FpMatrix sys(rows, unknowns, field);
    FpOps ops(field);
    int r0 = 0;
    for (std::size_t e = 0; e < p.hasse_edges.size(); ++e) {
        auto [x, y] = p.hasse_edges[e];
        const FpMatrix& ma = source.arrow(int(e));  // dim_s(y) x dim_s(x)
        const FpMatrix& na = target.arrow(int(e));  // dim_t(y) x dim_t(x)
        // (F_y · ma − na · F_x)(r,c) = 0 for r < dim_t(y), c < dim_s(x)
        for (int r = 0; r < target.dim(y); ++r)
            for (int c = 0; c < source.dim(x); ++c) {
                int row = r0 + r * source.dim(x) + c;
                for (int k = 0; k < source.dim(y); ++k)
                    sys.set(row, offset[y] + r * source.dim(y) + k, ma(k, c));
                for (int k = 0; k < target.dim(x); ++k) {
                    int col = offset[x] + k * source.dim(x) + c;
                    sys.set(row, col, ops.sub(sys(row, col), na(r, k)));
                }
            }
        r0 += target.dim(y) * source.dim(x);
    }
    FpMatrix null = kernel_basis(sys);
    std::vector<std::vector<FpMatrix>> elements;
    for (int j = 0; j < null.cols(); ++j) {
        std::vector<FpMatrix> comps;
        for (int v = 0; v < p.size(); ++v) {
            FpMatrix f(target.dim(v), source.dim(v), field);
            for (int r = 0; r < target.dim(v); ++r)
                for (int c = 0; c < source.dim(v); ++c)
                    f.set(r, c, null(offset[v] + r * source.dim(v) + c, j));
            comps.push_back(std::move(f));
        }
        elements.push_back(std::move(comps));
    }
    return HomBasis(source, target, std::move(elements));
}

HomBasis hom_from_interval(const Interval& iv, const PersistenceModule& target) {
    const Poset& p = target.poset();
    fp_t field = target.field();
    PersistenceModule source = interval_module(target.poset_ptr(), field, iv);
    Bitset in_iv(p.size());
    for (int v : iv.members) in_iv.set(v);
    // unknowns: target fibers at the minimal vertices of the interval
    std::vector<int> offset_at(p.size(), -1);
    int unknowns = 0;
    for (int v : iv.members) {
        bool minimal = true;
        for (int u : p.down_covers[v])
            if (in_iv.test(u)) { minimal = false; break; }
        if (minimal) {
            offset_at[v] = unknowns;
            unknowns += target.dim(v);
        }
    }
    // transfer matrices T_v (dim(v) x unknowns) by propagation in a linear extension
    std::vector<int> members = iv.members;
    std::stable_sort(members.begin(), members.end(), [&](int a, int b) {
        return p.down_set[a].count() < p.down_set[b].count();
    });
    std::vector<FpMatrix> transfer(p.size());
    std::vector<FpMatrix> constraints;
    for (int v : members) {
        if (offset_at[v] >= 0) {
            FpMatrix t(target.dim(v), unknowns, field);
            for (int r = 0; r < target.dim(v); ++r) t.set(r, offset_at[v] + r, 1);
            transfer[v] = std::move(t);
            continue;
        }
        bool first = true;
        for (int u : p.down_covers[v]) {
            if (!in_iv.test(u)) continue;
            FpMatrix cand = mul(target.arrow(u, v), transfer[u]);
            if (first) {
                transfer[v] = std::move(cand);
                first = false;
            } else {
                constraints.push_back(sub(cand, transfer[v]));
            }
        }
    }
    // arrows leaving the interval upward must kill the section
    for (int v : iv.members)
        for (int w : p.up_covers[v])
            if (!in_iv.test(w)) constraints.push_back(mul(target.arrow(v, w), transfer[v]));
    FpMatrix sys = constraints.empty() ? FpMatrix(0, unknowns, field) : vstack(constraints);
    FpMatrix null = kernel_basis(sys);
    std::vector<std::vector<FpMatrix>> elements;
    for (int j = 0; j < null.cols(); ++j) {
        FpMatrix u(unknowns, 1, field);
        for (int r = 0; r < unknowns; ++r) u.set(r, 0, null(r, j));
        std::vector<FpMatrix> comps;
        for (int v = 0; v < p.size(); ++v) {
            if (in_iv.test(v))
                comps.push_back(mul(transfer[v], u));
            else
                comps.push_back(FpMatrix(target.dim(v), 0, field));
        }
        elements.push_back(std::move(comps));
    }
    return HomBasis(std::move(source), target, std::move(elements));
}

std::pair<PersistenceModule, ModuleMorphism> kernel(const ModuleMorphism& f) {
    const Poset& p = f.source.poset();
    fp_t field = f.source.field();
    std::vector<FpMatrix> incl;
    std::vector<int> dims;
    for (int v = 0; v < p.size(); ++v) {
        incl.push_back(kernel_basis(f.components[v]));
        dims.push_back(incl.back().cols());
    }
    std::vector<FpMatrix> arrows;
    for (std::size_t e = 0; e < p.hasse_edges.size(); ++e) {
        auto [x, y] = p.hasse_edges[e];
        auto sol = solve(incl[y], mul(f.source.arrow(int(e)), incl[x]));
        if (!sol) throw std::logic_error("kernel: arrows do not restrict");
        arrows.push_back(std::move(*sol));
    }
    PersistenceModule k(f.source.poset_ptr(), field, std::move(dims), std::move(arrows));
    ModuleMorphism inclusion(k, f.source, std::move(incl));
    return {std::move(k), std::move(inclusion)};
}

std::pair<PersistenceModule, ModuleMorphism> cokernel(const ModuleMorphism& f) {
    const Poset& p = f.source.poset();
    fp_t field = f.target.field();
    FpOps ops(field);
    std::vector<FpMatrix> proj, section;
    std::vector<int> dims;
    for (int v = 0; v < p.size(); ++v) {
        int n = f.target.dim(v);
        RrefResult rr = rref(transpose(f.components[v]));  // rows span the image
        std::vector<bool> is_pivot(n, false);
        for (int c : rr.pivot_cols) is_pivot[c] = true;
        int q = n - rr.rank;
        FpMatrix qm(q, n, field), sm(n, q, field);
        int out = 0;
        for (int c = 0; c < n; ++c) {
            if (is_pivot[c]) continue;
            qm.set(out, c, 1);
            for (int i = 0; i < rr.rank; ++i) qm.set(out, rr.pivot_cols[i], ops.neg(rr.reduced(i, c)));
            sm.set(c, out, 1);
            ++out;
        }
        proj.push_back(std::move(qm));
        section.push_back(std::move(sm));
        dims.push_back(q);
    }
    std::vector<FpMatrix> arrows;
    for (std::size_t e = 0; e < p.hasse_edges.size(); ++e) {
        auto [x, y] = p.hasse_edges[e];
        arrows.push_back(mul(proj[y], mul(f.target.arrow(int(e)), section[x])));
    }
    PersistenceModule c(f.target.poset_ptr(), field, std::move(dims), std::move(arrows));
    ModuleMorphism projection(f.target, c, std::move(proj));
    return {std::move(c), std::move(projection)};
}

}  // namespace intres
