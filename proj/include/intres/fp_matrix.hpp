#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace intres {

using fp_t = std::uint32_t;

bool is_prime(fp_t p);

/// Barrett reduction helper for a fixed modulus p < 2^16.
/// Reduces any x < 2^32; entries stay in [0,p) so a*b+c never overflows.
struct FpOps {
    fp_t p = 2;
    std::uint64_t magic = 0;  // floor(2^32 / p)

    FpOps() = default;
    explicit FpOps(fp_t modulus);

    fp_t reduce(std::uint64_t x) const {
        std::uint64_t q = (x * magic) >> 32;
        std::uint64_t r = x - q * p;
        while (r >= p) r -= p;
        return static_cast<fp_t>(r);
    }
    fp_t add(fp_t a, fp_t b) const {
        fp_t s = a + b;
        return s >= p ? s - p : s;
    }
    fp_t sub(fp_t a, fp_t b) const { return a >= b ? a - b : a + p - b; }
    fp_t mul(fp_t a, fp_t b) const { return reduce(std::uint64_t(a) * b); }
    fp_t neg(fp_t a) const { return a == 0 ? 0 : p - a; }
    fp_t inv(fp_t a) const;
};

/// Dense row-major matrix over F_p. 0xN and Nx0 shapes are legal values.
class FpMatrix {
public:
    FpMatrix() = default;
    FpMatrix(int rows, int cols, fp_t p);

    static FpMatrix identity(int n, fp_t p);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    fp_t modulus() const { return p_; }

    fp_t operator()(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }
    void set(int r, int c, fp_t v) { data_[std::size_t(r) * cols_ + c] = v; }

    std::span<const fp_t> row(int r) const { return {data_.data() + std::size_t(r) * cols_, std::size_t(cols_)}; }
    std::span<fp_t> row(int r) { return {data_.data() + std::size_t(r) * cols_, std::size_t(cols_)}; }
    const std::vector<fp_t>& data() const { return data_; }
    std::vector<fp_t>& data() { return data_; }

    bool is_zero() const;
    bool operator==(const FpMatrix& o) const = default;

private:
    int rows_ = 0, cols_ = 0;
    fp_t p_ = 2;
    std::vector<fp_t> data_;
};

struct RrefResult {
    FpMatrix reduced;
    std::vector<int> pivot_cols;
    int rank = 0;
};

/// Reduced row echelon form with first-nonzero-column pivoting; fully
/// deterministic, pivots normalized to 1.
RrefResult rref(const FpMatrix& m);

int rank(const FpMatrix& m);

/// Columns span the null space {x : m x = 0}; deterministic basis with the
/// free variable at each non-pivot column set to 1.
FpMatrix kernel_basis(const FpMatrix& m);

/// Columns form a basis of the column space (the pivot columns of m).
FpMatrix image_basis(const FpMatrix& m);

/// One solution X of A X = B, or nullopt when inconsistent.
std::optional<FpMatrix> solve(const FpMatrix& a, const FpMatrix& b);

std::optional<FpMatrix> invert(const FpMatrix& m);

FpMatrix mul(const FpMatrix& a, const FpMatrix& b);
FpMatrix add(const FpMatrix& a, const FpMatrix& b);
FpMatrix sub(const FpMatrix& a, const FpMatrix& b);
FpMatrix transpose(const FpMatrix& m);

FpMatrix hstack(std::span<const FpMatrix> ms);
FpMatrix vstack(std::span<const FpMatrix> ms);
/// Block-diagonal assembly.
FpMatrix block_diag(std::span<const FpMatrix> ms);

inline FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) { return mul(a, b); }

/// Incremental echelonized row accumulator: the workhorse for span/rank
/// bookkeeping where rows arrive one at a time.
class RowSpace {
public:
    RowSpace(int ncols, fp_t p);

    /// Reduce v against the stored rows and keep it if independent.
    /// Returns true when the rank grew.
    bool insert(std::span<const fp_t> v);

    /// Residue of v modulo the current row space (zero iff v is in the span).
    std::vector<fp_t> reduce(std::span<const fp_t> v) const;

    bool contains(std::span<const fp_t> v) const;

    int rank() const { return int(rows_.size()); }
    int cols() const { return ncols_; }
    FpMatrix basis_matrix() const;

private:
    int ncols_;
    FpOps ops_;
    std::vector<std::vector<fp_t>> rows_;  // echelonized, pivot entries 1
    std::vector<int> pivots_;              // pivot column of each stored row
};

}  // namespace intres
