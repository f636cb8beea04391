#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "tcat/dblgpd.hpp"

using namespace tcat;
using namespace tcat::dblgpd;

namespace {

// one object, one 1-cell, squares a cyclic group: the smallest two-typical
// double groupoid with nontrivial pi2
DoubleGroupoid cyclic_square_dg(int n) {
    DoubleGroupoid g;
    g.points.add("*");
    g.vert = gpd::discrete_groupoid({"*"});
    g.horiz = gpd::discrete_groupoid({"*"});
    for (int i = 0; i < n; ++i) {
        g.squares.add("a" + std::to_string(i));
        g.sq_top.push_back(0);
        g.sq_bot.push_back(0);
        g.sq_left.push_back(0);
        g.sq_right.push_back(0);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            g.vpaste_[pair_key(i, j)] = (i + j) % n;
            g.hpaste_[pair_key(i, j)] = (i + j) % n;
        }
    g.vid = {0};
    g.hid = {0};
    g.vinv.resize((std::size_t)n);
    g.hinv.resize((std::size_t)n);
    for (int i = 0; i < n; ++i) g.vinv[(std::size_t)i] = g.hinv[(std::size_t)i] = (n - i) % n;
    return g;
}

simp::TruncSSet nerve5(const gpd::FinGroupoid& g) { return gpd::nerve(g, 5); }

}  // namespace

TEST_CASE("cyclic square double groupoid is two-typical with the right pi2") {
    for (int n : {1, 2, 3, 4}) {
        auto g = cyclic_square_dg(n);
        REQUIRE(g.validate().empty());
        CHECK(is_weakly_globular(g));
        CHECK(is_symmetric(g).has_value());
        CHECK(is_two_typical(g));
        auto p2 = pi2_at(g, 0);
        if (n == 1)
            CHECK(p2.group.trivial());
        else {
            REQUIRE(p2.group.torsion.size() == 1);
            CHECK(p2.group.torsion[0] == n);
        }
        auto fg = fundamental_groupoid_dg(g);
        CHECK(fg.objects.size() == 1);
        CHECK(fg.arrows.size() == 1);
    }
}

TEST_CASE("corrupted interchange is caught") {
    auto g = cyclic_square_dg(3);
    g.hpaste_[pair_key(1, 1)] = 1;  // should be 2
    CHECK(!g.validate().empty());
}

TEST_CASE("products of double groupoids") {
    auto a = cyclic_square_dg(2);
    auto b = cyclic_square_dg(3);
    auto p = product(a, b);
    REQUIRE(p.validate().empty());
    CHECK(is_two_typical(p));
    auto p2 = pi2_at(p, 0);
    REQUIRE(p2.group.torsion.size() == 1);
    CHECK(p2.group.torsion[0] == 6);
}

TEST_CASE("diagonal nerve of small double groupoids") {
    auto triv = cyclic_square_dg(1);
    auto pt = diagonal_nerve(triv, 3);
    REQUIRE(pt.validate().empty());
    for (int l = 0; l <= 3; ++l) CHECK(pt.size(l) == 1);

    auto g = cyclic_square_dg(2);
    auto x = diagonal_nerve(g, 3);
    REQUIRE(x.validate().empty());
    CHECK(x.size(0) == 1);
    CHECK(x.size(1) == 2);    // 1x1 grids
    CHECK(x.size(2) == 16);   // 2x2 grids of Z/2 squares
    CHECK(x.size(3) == 512);  // 3x3 grids
    // diagonal nerve respects products levelwise
    auto h = cyclic_square_dg(3);
    auto xp = diagonal_nerve(product(g, h), 2);
    auto xg = diagonal_nerve(g, 2);
    auto xh = diagonal_nerve(h, 2);
    for (int l = 0; l <= 2; ++l) CHECK(xp.size(l) == xg.size(l) * xh.size(l));
}

TEST_CASE("pt of the nerve of a groupoid recovers the groupoid") {
    std::vector<gpd::FinGroupoid> fam;
    fam.push_back(gpd::cyclic_groupoid(2));
    fam.push_back(gpd::cyclic_groupoid(3));
    fam.push_back(gpd::indiscrete_groupoid({"a", "b"}));
    fam.push_back(gpd::disjoint_union(gpd::cyclic_groupoid(2), gpd::discrete_groupoid({"z"})));
    for (auto& g : fam) {
        auto pt = pt_of_kan(nerve5(g), true);
        CHECK(pt.dg.validate().empty());
        CHECK(is_weakly_globular(pt.dg));
        CHECK(is_symmetric(pt.dg).has_value());
        auto fg = fundamental_groupoid_dg(pt.dg);
        CHECK(gpd::isomorphic(fg, g));
        for (std::size_t p = 0; p < pt.dg.points.size(); ++p)
            CHECK(pi2_at(pt.dg, (int)p).group.trivial());
    }
}

TEST_CASE("pt of a point is trivial") {
    auto pt = simp::coskeleton(simp::standard_simplex(0, 0), 0, 5);
    auto r = pt_of_kan(pt, true);
    CHECK(r.dg.points.size() == 1);
    CHECK(r.dg.squares.size() == 1);
    CHECK(fundamental_groupoid_dg(r.dg).arrows.size() == 1);
}

TEST_CASE("pt rejects shallow or non-fibrant input") {
    CHECK_THROWS_AS(pt_of_kan(simp::standard_simplex(2, 4)), PreconditionFailed);
    CHECK_THROWS_AS(pt_of_kan(simp::standard_simplex(1, 5)), PreconditionFailed);
}

TEST_CASE("pt round trip through the diagonal nerve of a 1-type model") {
    auto g = gpd::cyclic_groupoid(2);
    auto h = pt_of_kan(nerve5(g)).dg;
    auto x = diagonal_nerve(h, 5);
    REQUIRE(simp::is_csk2_fibrant(x));
    auto r = pt_of_kan(x);
    auto fg = fundamental_groupoid_dg(r.dg);
    // the composite inflates objects; recovery is up to equivalence, with the
    // homotopy invariants exact
    CHECK(gpd::equivalent(fg, g));
    CHECK(gpd::equivalent(fg, fundamental_groupoid_dg(h)));
    for (std::size_t p = 0; p < r.dg.points.size(); ++p)
        CHECK(pi2_at(r.dg, (int)p).group.trivial());
}

TEST_CASE("pt preserves binary products via the canonical comparison") {
    auto ga = gpd::cyclic_groupoid(2);
    auto gb = gpd::indiscrete_groupoid({"x", "y"});
    auto na = nerve5(ga), nb = nerve5(gb);
    auto prod = simp::product(na, nb);
    auto ptp = pt_of_kan(prod);
    auto pa = pt_of_kan(na), pb = pt_of_kan(nb);
    auto direct = product(pa.dg, pb.dg);
    // the canonical map on classes: a product simplex is a pair (s, t)
    // points
    REQUIRE(ptp.dg.points.size() == direct.points.size());
    // the class maps induce a bijection on squares
    std::vector<int> sq_map(ptp.dg.squares.size(), -1);
    for (std::size_t y = 0; y < prod.size(3); ++y) {
        std::size_t a = y / nb.size(3), b = y % nb.size(3);
        int img = (int)((std::size_t)pa.sq_class[a] * pb.dg.squares.size() +
                        (std::size_t)pb.sq_class[b]);
        int src = ptp.sq_class[y];
        if (sq_map[(std::size_t)src] < 0)
            sq_map[(std::size_t)src] = img;
        else
            CHECK(sq_map[(std::size_t)src] == img);
    }
    std::set<int> hit(sq_map.begin(), sq_map.end());
    CHECK(hit.size() == ptp.dg.squares.size());
    CHECK(ptp.dg.squares.size() == direct.squares.size());
}
