#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "intres/module.hpp"
#include "intres/testkit.hpp"

using namespace intres;

TEST_CASE("interval module on a chain") {
    auto p = make_chain(3);
    IntervalPoset ip(p);
    auto full = interval_module(p, 2, ip.at(ip.index_of({0, 1, 2})));
    CHECK(full.dims() == std::vector<int>{1, 1, 1});
    CHECK(full.arrow(0, 1) == FpMatrix::identity(1, 2));
    CHECK(full.arrow(1, 2) == FpMatrix::identity(1, 2));
    auto simple = interval_module(p, 2, ip.at(ip.index_of({1})));
    CHECK(simple.dims() == std::vector<int>{0, 1, 0});
    CHECK(simple.total_dim() == 1);
}

TEST_CASE("interval module of a staircase in grid (6,4)") {
    auto p = make_grid(6, 4);
    std::vector<int> members;
    for (int i = 5; i <= 6; ++i) members.push_back(p->vertex_at(i, 1));
    for (int i = 3; i <= 5; ++i) members.push_back(p->vertex_at(i, 2));
    for (int i = 3; i <= 4; ++i) members.push_back(p->vertex_at(i, 3));
    auto iv = make_interval(*p, members);
    REQUIRE(iv.staircase.size() == 3);
    CHECK(iv.staircase[0] == StairStep{1, 5, 6});
    CHECK(iv.staircase[1] == StairStep{2, 3, 5});
    CHECK(iv.staircase[2] == StairStep{3, 3, 4});
    auto v = interval_module(p, 2, iv);
    CHECK(v.total_dim() == 7);
    for (int x : members) CHECK(v.dim(x) == 1);
    // identity on internal edges, e.g. (5,1)->(5,2)
    CHECK(v.arrow(p->vertex_at(5, 1), p->vertex_at(5, 2)) == FpMatrix::identity(1, 2));
}

TEST_CASE("interval module rejects non-intervals") {
    auto p = make_grid(2, 2);
    Interval bad;
    bad.members = {p->vertex_at(2, 1), p->vertex_at(1, 2)};  // antichain
    CHECK_THROWS_AS(interval_module(p, 2, bad), std::invalid_argument);
}

TEST_CASE("commutativity is enforced") {
    auto p = make_grid(2, 2);
    // square with maps 1,1,1,0 cannot commute
    std::vector<int> dims{1, 1, 1, 1};
    std::vector<FpMatrix> arrows;
    for (std::size_t e = 0; e < p->hasse_edges.size(); ++e) arrows.push_back(FpMatrix(1, 1, 2));
    for (auto& a : arrows) a.set(0, 0, 1);
    arrows[3].set(0, 0, 0);
    CHECK_THROWS_AS(PersistenceModule(p, 2, dims, arrows), std::invalid_argument);
}

TEST_CASE("projectives and injectives") {
    auto c2 = make_chain(2);
    CHECK(projective_at(c2, 2, 0).dims() == std::vector<int>{1, 1});
    CHECK(projective_at(c2, 2, 1).dims() == std::vector<int>{0, 1});
    CHECK(injective_at(c2, 2, 0).dims() == std::vector<int>{1, 0});
    auto sq = make_grid(2, 2);
    CHECK(projective_at(sq, 2, sq->vertex_at(1, 1)).total_dim() == 4);
    CHECK(injective_at(sq, 2, sq->vertex_at(2, 2)).total_dim() == 4);
    CHECK(injective_at(sq, 2, sq->vertex_at(1, 1)).total_dim() == 1);
}

TEST_CASE("direct sum dims add and empty sum is zero") {
    auto p = make_grid(2, 2);
    IntervalPoset ip(p);
    auto z = direct_sum(p, 3, {});
    CHECK(z.is_zero());
    auto a = interval_module(p, 3, ip.at(0));
    auto b = interval_module(p, 3, ip.at(ip.size() - 1));
    auto s = direct_sum(p, 3, {a, b});
    for (int v = 0; v < p->size(); ++v) CHECK(s.dim(v) == a.dim(v) + b.dim(v));
}

TEST_CASE("Yoneda: hom from a projective has the fiber dimension") {
    for (fp_t field : {fp_t(2), fp_t(5)}) {
        auto p = make_grid(3, 2);
        IntervalPoset ip(p);
        auto m = plant(ip, field, 4, 99 + field).module;
        for (int x = 0; x < p->size(); ++x) {
            auto h = hom_basis(projective_at(p, field, x), m);
            CHECK(h.dimension() == m.dim(x));
        }
    }
}

TEST_CASE("hom of an interval module with itself is one-dimensional") {
    for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}}) {
        auto p = make_grid(m, n);
        IntervalPoset ip(p);
        for (int i = 0; i < ip.size(); ++i) {
            auto v = interval_module(p, 2, ip.at(i));
            CHECK(hom_basis(v, v).dimension() == 1);
            CHECK(hom_from_interval(ip.at(i), v).dimension() == 1);
        }
    }
}

TEST_CASE("no homs between far-apart simples") {
    auto p = make_grid(2, 2);
    IntervalPoset ip(p);
    auto bottom = interval_module(p, 2, ip.at(ip.index_of({p->vertex_at(1, 1)})));
    auto top = interval_module(p, 2, ip.at(ip.index_of({p->vertex_at(2, 2)})));
    CHECK(hom_basis(bottom, top).dimension() == 0);
    CHECK(hom_basis(top, bottom).dimension() == 0);
}

TEST_CASE("hom dimension is additive over direct sums") {
    auto p = make_grid(2, 2);
    IntervalPoset ip(p);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        auto a = plant(ip, 3, 2, rng()).module;
        auto b = plant(ip, 3, 2, rng()).module;
        auto x = plant(ip, 3, 3, rng()).module;
        auto ab = direct_sum(p, 3, {a, b});
        CHECK(hom_basis(ab, x).dimension() ==
              hom_basis(a, x).dimension() + hom_basis(b, x).dimension());
        CHECK(hom_basis(x, ab).dimension() ==
              hom_basis(x, a).dimension() + hom_basis(x, b).dimension());
    }
}

TEST_CASE("scramble preserves dims and hom dimensions") {
    auto p = make_grid(2, 2);
    IntervalPoset ip(p);
    auto m = plant(ip, 5, 3, 17).module;
    auto s = scramble(m, 4242);
    CHECK(s.dims() == m.dims());
    for (int i = 0; i < ip.size(); ++i)
        CHECK(hom_from_interval(ip.at(i), m).dimension() ==
              hom_from_interval(ip.at(i), s).dimension());
}

TEST_CASE("interval-source solver matches the generic one") {
    std::mt19937_64 rng(7);
    for (fp_t field : {fp_t(2), fp_t(3)}) {
        auto p = make_grid(3, 2);
        IntervalPoset ip(p);
        for (int trial = 0; trial < 3; ++trial) {
            auto planted = plant(ip, field, 3, rng()).module;
            auto perturbed = random_module_perturbed(p, field, 8, rng());
            for (const auto& m : {planted, perturbed})
                for (int i = 0; i < ip.size(); ++i) {
                    auto fast = hom_from_interval(ip.at(i), m);
                    auto slow = hom_basis(interval_module(p, field, ip.at(i)), m);
                    CHECK(fast.dimension() == slow.dimension());
                    // every fast basis element is a valid morphism
                    for (int k = 0; k < fast.dimension(); ++k) (void)fast.morphism(k);
                }
        }
    }
    // non-grid poset: W-shaped zigzag
    auto w = make_poset_from_hasse({"a", "b", "c", "d", "e"}, {{1, 0}, {1, 2}, {3, 2}, {3, 4}});
    IntervalPoset wip(w);
    auto m = plant(wip, 2, 4, 11).module;
    for (int i = 0; i < wip.size(); ++i)
        CHECK(hom_from_interval(wip.at(i), m).dimension() ==
              hom_basis(interval_module(w, 2, wip.at(i)), m).dimension());
}

TEST_CASE("kernel and cokernel of extreme morphisms") {
    auto p = make_grid(2, 2);
    IntervalPoset ip(p);
    auto m = plant(ip, 2, 3, 23).module;
    auto n = plant(ip, 2, 2, 29).module;
    auto [kid, kid_incl] = kernel(identity_morphism(m));
    CHECK(kid.is_zero());
    auto [kz, kz_incl] = kernel(zero_morphism(m, n));
    CHECK(kz.dims() == m.dims());
    auto [cz, cz_proj] = cokernel(zero_morphism(m, n));
    CHECK(cz.dims() == n.dims());
    auto [cid, cid_proj] = cokernel(identity_morphism(m));
    CHECK(cid.is_zero());
}

TEST_CASE("cokernel projection kills the map") {
    auto p = make_grid(2, 2);
    IntervalPoset ip(p);
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        auto m = plant(ip, 2, 2, rng()).module;
        auto n = plant(ip, 2, 3, rng()).module;
        auto h = hom_basis(m, n);
        if (h.dimension() == 0) continue;
        auto f = h.morphism(int(rng() % std::uint64_t(h.dimension())));
        auto [c, proj] = cokernel(f);
        CHECK(compose(proj, f).is_zero());
        auto [k, incl] = kernel(f);
        CHECK(compose(f, incl).is_zero());
        for (int v = 0; v < p->size(); ++v) {
            CHECK(k.dim(v) == m.dim(v) - rank(f.components[v]));
            CHECK(c.dim(v) == n.dim(v) - rank(f.components[v]));
        }
    }
}

TEST_CASE("map_between composes arrows path-independently") {
    auto p = make_grid(3, 2);
    auto m = random_module_perturbed(p, 5, 10, 77);
    int lo = p->vertex_at(1, 1), hi = p->vertex_at(3, 2);
    // right-right-up
    FpMatrix a = mul(m.arrow(p->vertex_at(3, 1), hi),
                     mul(m.arrow(p->vertex_at(2, 1), p->vertex_at(3, 1)),
                         m.arrow(lo, p->vertex_at(2, 1))));
    // up-right-right
    FpMatrix b = mul(m.arrow(p->vertex_at(2, 2), hi),
                     mul(m.arrow(p->vertex_at(1, 2), p->vertex_at(2, 2)),
                         m.arrow(lo, p->vertex_at(1, 2))));
    CHECK(a == b);
    CHECK(m.map_between(lo, hi) == a);
    CHECK(m.map_between(lo, lo) == FpMatrix::identity(m.dim(lo), 5));
}

TEST_CASE("perturbed generator yields valid modules of the requested size") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        auto p = make_grid(2 + int(rng() % 4), 2);
        auto m = random_module_perturbed(p, 2, 12, rng());
        CHECK(m.total_dim() == 12);
        CHECK(check_commutativity(m));
    }
}

TEST_CASE("random submodules include validly") {
    auto p = make_grid(3, 2);
    IntervalPoset ip(p);
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        int i = int(rng() % std::uint64_t(ip.size()));
        auto v = interval_module(p, 2, ip.at(i));
        auto s = oracle_submodule(p, 2, ip.at(i), rng());
        for (int x = 0; x < p->size(); ++x) CHECK(s.dim(x) <= v.dim(x));
        // also exercise the general version on a fatter module
        auto m = plant(ip, 2, 3, rng()).module;
        auto sub = random_submodule(m, rng());
        for (int x = 0; x < p->size(); ++x) CHECK(sub.dim(x) <= m.dim(x));
    }
}

TEST_CASE("hom basis combine produces natural maps") {
    auto p = make_grid(2, 2);
    IntervalPoset ip(p);
    auto m = plant(ip, 3, 3, 53).module;
    for (int i = 0; i < ip.size(); ++i) {
        auto h = hom_from_interval(ip.at(i), m);
        if (h.dimension() == 0) continue;
        std::vector<fp_t> coeffs(h.dimension(), 2);  // validated on construction
        auto f = h.combine(coeffs);
        CHECK(f.source.dims() == interval_module(p, 3, ip.at(i)).dims());
    }
}
