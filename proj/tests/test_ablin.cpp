#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tcat/ablin.hpp"

using namespace tcat::ablin;

namespace {

IntMatrix from_rows(const std::vector<std::vector<long long>>& rows) {
    std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    return m;
}

void check_snf_contract(const IntMatrix& m) {
    SNF s = smith_normal_form(m);
    CHECK(s.u * m * s.v == s.d);
    CHECK(det_abs(s.u) == 1);
    CHECK(det_abs(s.v) == 1);
    for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) {
        CHECK(s.d(i, i) >= 0);
        if (i + 1 < std::min(m.rows(), m.cols()) && s.d(i + 1, i + 1) != 0)
            CHECK(s.d(i + 1, i + 1) % (s.d(i, i) == 0 ? Int(1) : s.d(i, i)) == 0);
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i != j && j < m.cols() && i < m.rows()) CHECK(s.d(i, j) == 0);
    }
}

}  // namespace

TEST_CASE("snf diag(2,3) gives diag(1,6)") {
    auto d = oracle::naive_snf_diag({{2, 0}, {0, 3}});
    REQUIRE(d == std::vector<long long>{1, 6});
    SNF s = smith_normal_form(from_rows({{2, 0}, {0, 3}}));
    CHECK(s.d(0, 0) == 1);
    CHECK(s.d(1, 1) == 6);
    check_snf_contract(from_rows({{2, 0}, {0, 3}}));
}

TEST_CASE("snf identity and zero") {
    SNF s = smith_normal_form(IntMatrix::identity(3));
    CHECK(s.d.is_identity());
    SNF z = smith_normal_form(IntMatrix(2, 3));
    CHECK(z.d.is_zero());
    CHECK(z.rank == 0);
}

TEST_CASE("snf agrees with elementary-reduction oracle on random matrices") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<int> dim(0, 6), val(-9, 9);
    for (int iter = 0; iter < 200; ++iter) {
        std::size_t r = (std::size_t)dim(rng), c = (std::size_t)dim(rng);
        std::vector<std::vector<long long>> rows(r, std::vector<long long>(c));
        for (auto& row : rows)
            for (auto& x : row) x = val(rng);
        IntMatrix m = from_rows(rows);
        check_snf_contract(m);
        SNF s = smith_normal_form(m);
        auto expect = oracle::naive_snf_diag(rows);
        REQUIRE(s.rank == expect.size());
        for (std::size_t i = 0; i < expect.size(); ++i) CHECK(s.d(i, i) == expect[i]);
    }
}

TEST_CASE("homology basic cases") {
    // out = 0 (1x1), in = [2] -> Z/2
    IntMatrix out(1, 1), in = from_rows({{2}});
    FGAbGroup h = homology(out, in);
    CHECK(h.rank == 0);
    REQUIRE(h.torsion.size() == 1);
    CHECK(h.torsion[0] == 2);

    // out = identity, in = 0 -> trivial
    FGAbGroup t = homology(IntMatrix::identity(2), IntMatrix(2, 2));
    CHECK(t.trivial());

    // out = 0 (0x1), in = 0 (1x0) -> Z
    FGAbGroup f = homology(IntMatrix(0, 1), IntMatrix(1, 0));
    CHECK(f.rank == 1);
    CHECK(f.torsion.empty());
}

TEST_CASE("homology rejects non-composable pair") {
    IntMatrix out = from_rows({{1}});
    IntMatrix in = from_rows({{1}});
    CHECK_THROWS_AS(homology(out, in), CompositionNonzero);
}

TEST_CASE("homology is invariant under unimodular basis change") {
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<int> val(-4, 4), shearv(-2, 2);
    for (int iter = 0; iter < 50; ++iter) {
        IntMatrix in(4, 2), out(2, 4);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) in(i, j) = val(rng);
        out(0, 2) = val(rng);  // out kills the coordinates that in hits
        out(1, 3) = val(rng);
        FGAbGroup h = homology(out, in);

        // conjugate the middle Z^4 by a product of shears; track the inverse
        IntMatrix p = IntMatrix::identity(4), pinv = IntMatrix::identity(4);
        for (int s = 0; s < 6; ++s) {
            std::size_t i = rng() % 4, j = rng() % 4;
            if (i == j) continue;
            int v = shearv(rng);
            IntMatrix sh = IntMatrix::identity(4), shinv = IntMatrix::identity(4);
            sh(i, j) = v;
            shinv(i, j) = -v;
            p = sh * p;
            pinv = pinv * shinv;
        }
        CHECK((p * pinv).is_identity());
        FGAbGroup h2 = homology(out * pinv, p * in);
        CHECK(h == h2);
        // basis changes on the outer groups
        IntMatrix v2 = IntMatrix::identity(2);
        v2(0, 1) = shearv(rng);
        CHECK(homology(v2 * out, in * v2) == h);
    }
}

TEST_CASE("canonical form idempotence") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> val(0, 12);
    for (int iter = 0; iter < 100; ++iter) {
        std::vector<Int> t;
        for (int k = 0; k < 4; ++k) t.push_back(val(rng));
        FGAbGroup g = normalize_group((std::size_t)(rng() % 3), t);
        FGAbGroup g2 = normalize_group(g.rank, g.torsion);
        CHECK(g == g2);
        for (std::size_t i = 0; i + 1 < g.torsion.size(); ++i)
            CHECK(g.torsion[i + 1] % g.torsion[i] == 0);
        for (const auto& d : g.torsion) CHECK(d >= 2);
    }
}

TEST_CASE("presented cohomology matches free homology on free complexes") {
    // 0 -> Z^2 --[[2,0],[0,3]]--> Z^2 -> 0 at the middle spot
    FGAbGroup z2;
    z2.rank = 2;
    AbHom a{z2, z2, from_rows({{2, 0}, {0, 3}})};
    AbHom b = AbHom::zero(z2, FGAbGroup{});
    auto h = presented_cohomology(a, b);
    FGAbGroup direct = homology(IntMatrix(0, 2), a.matrix);
    CHECK(h.group == direct);
}

TEST_CASE("presented cohomology with torsion coefficients") {
    // complex 0 -> Z/4 --*2--> Z/4 -> 0
    FGAbGroup z4;
    z4.torsion = {4};
    AbHom a{z4, z4, from_rows({{2}})};
    AbHom b{z4, z4, from_rows({{2}})};
    auto h = presented_cohomology(a, b);  // ker(2)/im(2) = {0,2}/{0,2} = 0
    CHECK(h.group.trivial());

    AbHom zero = AbHom::zero(z4, z4);
    auto h2 = presented_cohomology(zero, zero).group;  // Z/4
    CHECK(h2.rank == 0);
    REQUIRE(h2.torsion.size() == 1);
    CHECK(h2.torsion[0] == 4);
}

TEST_CASE("class_of and is_coboundary") {
    FGAbGroup z;
    z.rank = 1;
    AbHom a{z, z, from_rows({{2}})};   // im = 2Z
    AbHom b = AbHom::zero(z, FGAbGroup{});
    auto h = presented_cohomology(a, b);
    REQUIRE(h.group.torsion.size() == 1);
    CHECK(h.group.torsion[0] == 2);
    CHECK(is_coboundary(h, z, b, {4}));
    CHECK(!is_coboundary(h, z, b, {3}));
    auto c1 = class_of(h, z, b, {1});
    auto c3 = class_of(h, z, b, {3});
    CHECK(c1 == c3);
}

TEST_CASE("bar oracle sanity: H^*(Z/2; Z) trivial action") {
    auto g = oracle::cyclic_group(2);
    FGAbGroup z;
    z.rank = 1;
    std::vector<IntMatrix> act(2, IntMatrix::identity(1));
    auto h0 = oracle::bar_cohomology(g, z, act, 0);
    CHECK((h0.rank == 1 && h0.torsion.empty()));
    auto h1 = oracle::bar_cohomology(g, z, act, 1);
    CHECK(h1.trivial());
    auto h2 = oracle::bar_cohomology(g, z, act, 2);
    CHECK((h2.rank == 0 && h2.torsion == std::vector<Int>{2}));
    auto h3 = oracle::bar_cohomology(g, z, act, 3);
    CHECK(h3.trivial());
    auto h4 = oracle::bar_cohomology(g, z, act, 4);
    CHECK((h4.rank == 0 && h4.torsion == std::vector<Int>{2}));
}

TEST_CASE("bar oracle sanity: sign action of Z/2 on Z") {
    auto g = oracle::cyclic_group(2);
    FGAbGroup z;
    z.rank = 1;
    IntMatrix minus(1, 1);
    minus(0, 0) = -1;
    std::vector<IntMatrix> act{IntMatrix::identity(1), minus};
    CHECK(oracle::bar_cohomology(g, z, act, 0).trivial());
    auto h1 = oracle::bar_cohomology(g, z, act, 1);
    CHECK((h1.rank == 0 && h1.torsion == std::vector<Int>{2}));
    CHECK(oracle::bar_cohomology(g, z, act, 2).trivial());
    auto h3 = oracle::bar_cohomology(g, z, act, 3);
    CHECK((h3.rank == 0 && h3.torsion == std::vector<Int>{2}));
}
