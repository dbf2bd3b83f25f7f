#include "intres/fp_matrix.hpp"

#include <algorithm>
#include <array>
#include <cassert>

namespace intres {

bool is_prime(fp_t p) {
    if (p < 2) return false;
    for (fp_t d = 2; std::uint64_t(d) * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

FpOps::FpOps(fp_t modulus) : p(modulus) {
    if (!is_prime(p) || p >= (fp_t(1) << 16))
        throw std::invalid_argument("modulus must be a prime < 2^16");
    magic = (std::uint64_t(1) << 32) / p;
}

fp_t FpOps::inv(fp_t a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    // extended Euclid
    std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    assert(r == 1);
    if (t < 0) t += p;
    return fp_t(t);
}

FpMatrix::FpMatrix(int rows, int cols, fp_t p) : rows_(rows), cols_(cols), p_(p) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
    FpOps check(p);  // validates the modulus
    (void)check;
    data_.assign(std::size_t(rows) * cols, 0);
}

FpMatrix FpMatrix::identity(int n, fp_t p) {
    FpMatrix m(n, n, p);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

bool FpMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](fp_t v) { return v == 0; });
}

namespace {

// dst += f * src, starting at column `from`
void axpy(std::span<fp_t> dst, std::span<const fp_t> src, fp_t f, int from, const FpOps& ops) {
    if (f == 0) return;
    for (std::size_t i = from; i < dst.size(); ++i)
        dst[i] = ops.reduce(dst[i] + std::uint64_t(f) * src[i]);
}

}  // namespace

RrefResult rref(const FpMatrix& m) {
    RrefResult res;
    res.reduced = m;
    FpOps ops(m.modulus());
    FpMatrix& a = res.reduced;
    int r = 0;
    for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < a.rows(); ++i)
            if (a(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = c; j < a.cols(); ++j) {
                fp_t t = a(r, j);
                a.set(r, j, a(piv, j));
                a.set(piv, j, t);
            }
        fp_t inv = ops.inv(a(r, c));
        if (inv != 1)
            for (int j = c; j < a.cols(); ++j) a.set(r, j, ops.mul(a(r, j), inv));
        for (int i = 0; i < a.rows(); ++i) {
            if (i == r) continue;
            fp_t f = a(i, c);
            if (f != 0) axpy(a.row(i), a.row(r), ops.p - f, c, ops);
        }
        res.pivot_cols.push_back(c);
        ++r;
    }
    res.rank = r;
    return res;
}

int rank(const FpMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    RowSpace rs(m.cols(), m.modulus());
    int full = std::min(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i) {
        rs.insert(m.row(i));
        if (rs.rank() == full) break;
    }
    return rs.rank();
}

FpMatrix kernel_basis(const FpMatrix& m) {
    RrefResult rr = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : rr.pivot_cols) is_pivot[c] = true;
    int nullity = m.cols() - rr.rank;
    FpMatrix k(m.cols(), nullity, m.modulus());
    FpOps ops(m.modulus());
    int out = 0;
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        k.set(c, out, 1);
        for (int i = 0; i < rr.rank; ++i)
            k.set(rr.pivot_cols[i], out, ops.neg(rr.reduced(i, c)));
        ++out;
    }
    return k;
}

FpMatrix image_basis(const FpMatrix& m) {
    RrefResult rr = rref(m);
    FpMatrix b(m.rows(), rr.rank, m.modulus());
    for (int j = 0; j < rr.rank; ++j)
        for (int i = 0; i < m.rows(); ++i) b.set(i, j, m(i, rr.pivot_cols[j]));
    return b;
}

std::optional<FpMatrix> solve(const FpMatrix& a, const FpMatrix& b) {
    if (a.rows() != b.rows() || a.modulus() != b.modulus())
        throw std::invalid_argument("solve: shape/modulus mismatch");
    std::array<FpMatrix, 2> both{a, b};
    RrefResult rr = rref(hstack(both));
    // inconsistent iff some pivot lands in the b-block
    for (int c : rr.pivot_cols)
        if (c >= a.cols()) return std::nullopt;
    FpMatrix x(a.cols(), b.cols(), a.modulus());
    for (int i = 0; i < rr.rank; ++i)
        for (int j = 0; j < b.cols(); ++j) x.set(rr.pivot_cols[i], j, rr.reduced(i, a.cols() + j));
    return x;
}

std::optional<FpMatrix> invert(const FpMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("invert: matrix not square");
    std::array<FpMatrix, 2> both{m, FpMatrix::identity(m.rows(), m.modulus())};
    RrefResult rr = rref(hstack(both));
    // singular iff some pivot escapes the left block
    for (int c : rr.pivot_cols)
        if (c >= m.cols()) return std::nullopt;
    FpMatrix inv(m.rows(), m.rows(), m.modulus());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.rows(); ++j) inv.set(i, j, rr.reduced(i, m.cols() + j));
    return inv;
}

FpMatrix mul(const FpMatrix& a, const FpMatrix& b) {
    if (a.cols() != b.rows() || a.modulus() != b.modulus())
        throw std::invalid_argument("mul: shape/modulus mismatch");
    FpMatrix c(a.rows(), b.cols(), a.modulus());
    FpOps ops(a.modulus());
    for (int i = 0; i < a.rows(); ++i) {
        auto ci = c.row(i);
        for (int k = 0; k < a.cols(); ++k) {
            fp_t f = a(i, k);
            if (f == 0) continue;
            auto bk = b.row(k);
            for (int j = 0; j < b.cols(); ++j)
                ci[j] = ops.reduce(ci[j] + std::uint64_t(f) * bk[j]);
        }
    }
    return c;
}

FpMatrix add(const FpMatrix& a, const FpMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.modulus() != b.modulus())
        throw std::invalid_argument("add: shape/modulus mismatch");
    FpMatrix c = a;
    FpOps ops(a.modulus());
    for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] = ops.add(c.data()[i], b.data()[i]);
    return c;
}

FpMatrix sub(const FpMatrix& a, const FpMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.modulus() != b.modulus())
        throw std::invalid_argument("sub: shape/modulus mismatch");
    FpMatrix c = a;
    FpOps ops(a.modulus());
    for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] = ops.sub(c.data()[i], b.data()[i]);
    return c;
}

FpMatrix transpose(const FpMatrix& m) {
    FpMatrix t(m.cols(), m.rows(), m.modulus());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) t.set(j, i, m(i, j));
    return t;
}

FpMatrix hstack(std::span<const FpMatrix> ms) {
    if (ms.empty()) throw std::invalid_argument("hstack: empty input");
    int r = ms[0].rows(), c = 0;
    for (const auto& m : ms) {
        if (m.rows() != r || m.modulus() != ms[0].modulus())
            throw std::invalid_argument("hstack: row/modulus mismatch");
        c += m.cols();
    }
    FpMatrix out(r, c, ms[0].modulus());
    int off = 0;
    for (const auto& m : ms) {
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < m.cols(); ++j) out.set(i, off + j, m(i, j));
        off += m.cols();
    }
    return out;
}

FpMatrix vstack(std::span<const FpMatrix> ms) {
    if (ms.empty()) throw std::invalid_argument("vstack: empty input");
    int c = ms[0].cols(), r = 0;
    for (const auto& m : ms) {
        if (m.cols() != c || m.modulus() != ms[0].modulus())
            throw std::invalid_argument("vstack: col/modulus mismatch");
        r += m.rows();
    }
    FpMatrix out(r, c, ms[0].modulus());
    int off = 0;
    for (const auto& m : ms) {
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < c; ++j) out.set(off + i, j, m(i, j));
        off += m.rows();
    }
    return out;
}

FpMatrix block_diag(std::span<const FpMatrix> ms) {
    if (ms.empty()) throw std::invalid_argument("block_diag: empty input");
    int r = 0, c = 0;
    for (const auto& m : ms) {
        if (m.modulus() != ms[0].modulus()) throw std::invalid_argument("block_diag: modulus mismatch");
        r += m.rows();
        c += m.cols();
    }
    FpMatrix out(r, c, ms[0].modulus());
    int ro = 0, co = 0;
    for (const auto& m : ms) {
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) out.set(ro + i, co + j, m(i, j));
        ro += m.rows();
        co += m.cols();
    }
    return out;
}

RowSpace::RowSpace(int ncols, fp_t p) : ncols_(ncols), ops_(p) {}

bool RowSpace::insert(std::span<const fp_t> v) {
    if (int(v.size()) != ncols_) throw std::invalid_argument("RowSpace: bad row length");
    std::vector<fp_t> w(v.begin(), v.end());
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        fp_t f = w[pivots_[k]];
        if (f != 0) axpy(w, rows_[k], ops_.p - f, pivots_[k], ops_);
    }
    int piv = -1;
    for (int j = 0; j < ncols_; ++j)
        if (w[j] != 0) { piv = j; break; }
    if (piv < 0) return false;
    fp_t inv = ops_.inv(w[piv]);
    if (inv != 1)
        for (int j = piv; j < ncols_; ++j) w[j] = ops_.mul(w[j], inv);
    // keep rows sorted by pivot column for deterministic reduction order
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(w));
    pivots_.insert(pivots_.begin() + pos, piv);
    return true;
}

std::vector<fp_t> RowSpace::reduce(std::span<const fp_t> v) const {
    if (int(v.size()) != ncols_) throw std::invalid_argument("RowSpace: bad row length");
    std::vector<fp_t> w(v.begin(), v.end());
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        fp_t f = w[pivots_[k]];
        if (f != 0) axpy(w, rows_[k], ops_.p - f, pivots_[k], ops_);
    }
    return w;
}

bool RowSpace::contains(std::span<const fp_t> v) const {
    auto w = reduce(v);
    return std::all_of(w.begin(), w.end(), [](fp_t x) { return x == 0; });
}

FpMatrix RowSpace::basis_matrix() const {
    FpMatrix b(rank(), ncols_, ops_.p);
    for (int i = 0; i < rank(); ++i)
        for (int j = 0; j < ncols_; ++j) b.set(i, j, rows_[i][j]);
    return b;
}

}  // namespace intres
