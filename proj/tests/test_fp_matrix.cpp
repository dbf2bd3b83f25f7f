#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "intres/fp_matrix.hpp"

using namespace intres;

namespace {

FpMatrix random_matrix(int r, int c, fp_t p, std::mt19937_64& rng) {
    FpMatrix m(r, c, p);
    std::uniform_int_distribution<fp_t> dist(0, p - 1);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.set(i, j, dist(rng));
    return m;
}

FpMatrix from_rows(std::vector<std::vector<fp_t>> rows, fp_t p) {
    int r = int(rows.size()), c = rows.empty() ? 0 : int(rows[0].size());
    FpMatrix m(r, c, p);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    return m;
}

}  // namespace

TEST_CASE("primality check") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(65521));
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(4));
    CHECK_FALSE(is_prime(65535));
}

TEST_CASE("modulus validation") {
    CHECK_THROWS_AS(FpOps(4), std::invalid_argument);
    CHECK_THROWS_AS(FpOps(1), std::invalid_argument);
    CHECK_THROWS_AS(FpOps(65537), std::invalid_argument);  // >= 2^16
    CHECK_THROWS_AS(FpMatrix(2, 2, 6), std::invalid_argument);
}

TEST_CASE("field arithmetic agrees with plain modular arithmetic") {
    std::mt19937_64 rng(7);
    for (fp_t p : {fp_t(2), fp_t(3), fp_t(5), fp_t(101), fp_t(65521)}) {
        FpOps ops(p);
        std::uniform_int_distribution<fp_t> dist(0, p - 1);
        for (int it = 0; it < 200; ++it) {
            fp_t a = dist(rng), b = dist(rng);
            CHECK(ops.add(a, b) == (a + b) % p);
            CHECK(ops.sub(a, b) == (a + p - b) % p);
            CHECK(ops.mul(a, b) == fp_t(std::uint64_t(a) * b % p));
            CHECK(ops.neg(a) == (p - a) % p);
        }
        std::uniform_int_distribution<std::uint64_t> wide(0, (std::uint64_t(1) << 32) - 1);
        for (int it = 0; it < 200; ++it) {
            std::uint64_t x = wide(rng);
            CHECK(ops.reduce(x) == fp_t(x % p));
        }
        for (fp_t a = 1; a < std::min<fp_t>(p, 500); ++a) CHECK(ops.mul(a, ops.inv(a)) == 1);
        CHECK(ops.mul(p - 1, ops.inv(p - 1)) == 1);
        CHECK_THROWS_AS(ops.inv(0), std::domain_error);
    }
}

TEST_CASE("rref of identity is itself with full rank") {
    for (int k : {1, 2, 5}) {
        auto id = FpMatrix::identity(k, 5);
        auto rr = rref(id);
        CHECK(rr.reduced == id);
        CHECK(rr.rank == k);
        CHECK(rr.pivot_cols.size() == std::size_t(k));
    }
}

TEST_CASE("rref of zero matrix is itself with rank 0") {
    FpMatrix z(3, 4, 3);
    auto rr = rref(z);
    CHECK(rr.reduced == z);
    CHECK(rr.rank == 0);
    CHECK(rr.pivot_cols.empty());
}

TEST_CASE("all-ones 2x2 over F_2 has rank 1") {
    auto m = from_rows({{1, 1}, {1, 1}}, 2);
    CHECK(rank(m) == 1);
    auto rr = rref(m);
    CHECK(rr.reduced == from_rows({{1, 1}, {0, 0}}, 2));
}

TEST_CASE("rref is idempotent") {
    std::mt19937_64 rng(11);
    for (fp_t p : {fp_t(2), fp_t(3), fp_t(7)}) {
        for (int it = 0; it < 20; ++it) {
            auto a = random_matrix(4, 6, p, rng);
            auto r1 = rref(a);
            auto r2 = rref(r1.reduced);
            CHECK(r1.reduced == r2.reduced);
            CHECK(r1.rank == r2.rank);
        }
    }
}

TEST_CASE("rank plus nullity equals column count") {
    std::mt19937_64 rng(13);
    for (fp_t p : {fp_t(2), fp_t(3), fp_t(5)}) {
        for (int it = 0; it < 30; ++it) {
            int r = 1 + int(rng() % 6), c = 1 + int(rng() % 6);
            auto a = random_matrix(r, c, p, rng);
            auto k = kernel_basis(a);
            CHECK(rank(a) + k.cols() == c);
            CHECK(mul(a, k).is_zero());
        }
    }
}

TEST_CASE("kernel of identity is trivial") {
    auto k = kernel_basis(FpMatrix::identity(4, 2));
    CHECK(k.rows() == 4);
    CHECK(k.cols() == 0);
}

TEST_CASE("image basis spans the column space") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 20; ++it) {
        auto a = random_matrix(5, 4, 3, rng);
        auto b = image_basis(a);
        CHECK(b.cols() == rank(a));
        CHECK(rank(b) == b.cols());
        // every column of a lies in the span of b
        std::array<FpMatrix, 2> both{b, a};
        CHECK(rank(hstack(both)) == rank(b));
    }
}

TEST_CASE("solve recovers a consistent system") {
    std::mt19937_64 rng(19);
    for (fp_t p : {fp_t(2), fp_t(5)}) {
        for (int it = 0; it < 30; ++it) {
            auto a = random_matrix(4, 3, p, rng);
            auto x = random_matrix(3, 2, p, rng);
            auto b = mul(a, x);
            auto sol = solve(a, b);
            REQUIRE(sol.has_value());
            CHECK(mul(a, *sol) == b);
        }
    }
}

TEST_CASE("solve reports inconsistency") {
    auto a = from_rows({{1, 0}, {0, 0}}, 2);
    auto b = from_rows({{0}, {1}}, 2);
    CHECK_FALSE(solve(a, b).has_value());
}

TEST_CASE("invert round-trips and rejects singular input") {
    std::mt19937_64 rng(23);
    int found = 0;
    while (found < 10) {
        auto a = random_matrix(4, 4, 5, rng);
        auto inv = invert(a);
        if (!inv) {
            CHECK(rank(a) < 4);
            continue;
        }
        ++found;
        CHECK(mul(a, *inv) == FpMatrix::identity(4, 5));
        CHECK(mul(*inv, a) == FpMatrix::identity(4, 5));
    }
    CHECK_FALSE(invert(from_rows({{1, 1}, {1, 1}}, 2)).has_value());
}

TEST_CASE("product rank is bounded by factor ranks") {
    std::mt19937_64 rng(29);
    for (int it = 0; it < 30; ++it) {
        auto a = random_matrix(4, 5, 3, rng);
        auto b = random_matrix(5, 4, 3, rng);
        CHECK(rank(mul(a, b)) <= std::min(rank(a), rank(b)));
    }
}

TEST_CASE("transpose preserves rank and entries") {
    std::mt19937_64 rng(31);
    auto a = random_matrix(3, 5, 7, rng);
    auto t = transpose(a);
    CHECK(t.rows() == 5);
    CHECK(t.cols() == 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 5; ++j) CHECK(t(j, i) == a(i, j));
    CHECK(rank(t) == rank(a));
    CHECK(transpose(t) == a);
}

TEST_CASE("stacking shapes") {
    auto a = from_rows({{1, 2}, {3, 4}}, 5);
    auto b = from_rows({{0, 1}}, 5);
    std::array<FpMatrix, 2> vs{a, b};
    auto v = vstack(vs);
    CHECK(v.rows() == 3);
    CHECK(v(2, 1) == 1);
    auto c = from_rows({{1}, {0}}, 5);
    std::array<FpMatrix, 2> hs{a, c};
    auto h = hstack(hs);
    CHECK(h.cols() == 3);
    CHECK(h(0, 2) == 1);
    std::array<FpMatrix, 2> ds{a, c};
    auto d = block_diag(ds);
    CHECK(d.rows() == 4);
    CHECK(d.cols() == 3);
    CHECK(d(0, 0) == 1);
    CHECK(d(2, 2) == 1);
    CHECK(d(3, 2) == 0);
    CHECK(d(0, 2) == 0);
}

TEST_CASE("empty shapes are legal values") {
    FpMatrix e(0, 3, 2);
    CHECK(e.is_zero());
    CHECK(rank(e) == 0);
    auto k = kernel_basis(e);  // everything is in the kernel
    CHECK(k.rows() == 3);
    CHECK(k.cols() == 3);
    FpMatrix f(3, 0, 2);
    CHECK(rank(f) == 0);
    CHECK(mul(f, FpMatrix(0, 2, 2)).is_zero());
}

TEST_CASE("row space accumulator tracks rank incrementally") {
    std::mt19937_64 rng(37);
    for (fp_t p : {fp_t(2), fp_t(5)}) {
        for (int it = 0; it < 20; ++it) {
            int r = 1 + int(rng() % 7), c = 1 + int(rng() % 5);
            auto a = random_matrix(r, c, p, rng);
            RowSpace rs(c, p);
            int grew = 0;
            for (int i = 0; i < r; ++i)
                if (rs.insert(a.row(i))) ++grew;
            CHECK(grew == rank(a));
            CHECK(rs.rank() == rank(a));
            // each original row reduces to zero
            for (int i = 0; i < r; ++i) CHECK(rs.contains(a.row(i)));
            // basis matrix has the same row space
            std::array<FpMatrix, 2> both{rs.basis_matrix(), a};
            CHECK(rank(vstack(both)) == rs.rank());
        }
    }
}

TEST_CASE("row space rejects dependent rows and accepts independent ones") {
    RowSpace rs(3, 2);
    std::vector<fp_t> v1{1, 1, 0}, v2{0, 1, 1}, v3{1, 0, 1}, v4{1, 1, 1};
    CHECK(rs.insert(v1));
    CHECK(rs.insert(v2));
    CHECK_FALSE(rs.insert(v3));  // v1 + v2 over F_2
    CHECK(rs.insert(v4));
    CHECK(rs.rank() == 3);
    CHECK(rs.contains(std::vector<fp_t>{0, 0, 1}));
}
