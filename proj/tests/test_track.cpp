#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "tcat/track.hpp"

using namespace tcat;
using namespace tcat::track;
using ablin::FGAbGroup;
using ablin::Int;

namespace {

FGAbGroup zmod(int n) {
    FGAbGroup g;
    g.torsion = {n};
    return g;
}

gpd::FinCat one_object_group(int n) { return (gpd::FinCat)gpd::cyclic_groupoid(n); }

gpd::FinCat point_cat() { return (gpd::FinCat)gpd::discrete_groupoid({"*"}); }

}  // namespace

TEST_CASE("discrete track categories validate") {
    CHECK(validate_track(discrete_track(one_object_group(3))).empty());
    CHECK(validate_track(discrete_track((gpd::FinCat)gpd::indiscrete_groupoid({"a", "b"}))).empty());
}

TEST_CASE("one object, one 1-cell, tracks Z/2 validates; corrupted table caught") {
    auto d0 = discrete_track(point_cat());
    auto mod = natsys_to_module(d0, constant_natsys(d0, zmod(2)));
    REQUIRE(validate_track(mod.m).empty());
    CHECK(mod.m.tracks.size() == 2);

    auto bad = mod.m;
    bad.vcomp[pair_key(1, 1)] = 1;  // corrupt the composition table
    CHECK(!validate_track(bad).empty());
}

TEST_CASE("homotopy category") {
    auto d = discrete_track(one_object_group(3));
    auto ho = homotopy_category(d);
    CHECK(ho.arrows.size() == 3);

    auto d0 = discrete_track(point_cat());
    auto m = natsys_to_module(d0, constant_natsys(d0, zmod(3))).m;
    auto ho2 = homotopy_category(m);  // all tracks are endo: still one cell class
    CHECK(ho2.arrows.size() == 1);

    auto p = product_track(d, d);
    CHECK(validate_track(p).empty());
    CHECK(homotopy_category(p).arrows.size() == 9);
}

TEST_CASE("factorization category of a one-object discrete group") {
    for (int n : {2, 3}) {
        auto d = discrete_track(one_object_group(n));
        auto fac = fac_category(d);
        CHECK(fac.cat.validate().empty());  // includes associativity on all triples
        CHECK(fac.cat.objects.size() == (std::size_t)n);
        std::map<std::pair<int, int>, int> cnt;
        for (std::size_t a = 0; a < fac.cat.arrows.size(); ++a)
            ++cnt[{fac.cat.src[a], fac.cat.tgt[a]}];
        for (auto& [k, v] : cnt) CHECK(v == n);  // h free, k determined by k f h = g
        CHECK(fac.cat.arrows.size() == (std::size_t)(n * n * n));
    }
    auto dpt = discrete_track((gpd::FinCat)gpd::discrete_groupoid({"a", "b"}));
    auto fpt = fac_category(dpt);
    CHECK(fpt.cat.objects.size() == 2);
    CHECK(fpt.cat.arrows.size() == 2);
}

TEST_CASE("free natural system fibers") {
    auto d = discrete_track(one_object_group(2));
    auto fac = fac_category(d);
    std::vector<int> gens = {1, 0};  // singleton at the identity cell
    auto fk = free_natural_system(gens, d, fac);
    for (std::size_t g = 0; g < 2; ++g) {
        int hom = 0;
        for (std::size_t a = 0; a < fac.cat.arrows.size(); ++a)
            if (fac.obj_cell[(std::size_t)fac.cat.src[a]] == 0 &&
                fac.obj_cell[(std::size_t)fac.cat.tgt[a]] == (int)g)
                ++hom;
        CHECK((int)fk.fiber[g].size() == hom);
    }
    // star respects composition of factorization squares
    for (std::size_t a1 = 0; a1 < fac.cat.arrows.size(); ++a1)
        for (std::size_t a2 = 0; a2 < fac.cat.arrows.size(); ++a2) {
            if (fac.cat.tgt[a1] != fac.cat.src[a2]) continue;
            int comp = fac.cat.then_((int)a1, (int)a2);
            SetNaturalSystem::Elem e{fac.obj_cell[(std::size_t)fac.cat.src[a1]], 0,
                                     fac.cat.id_arrow[(std::size_t)fac.cat.src[a1]]};
            auto one = star_free(fac, (int)a2, star_free(fac, (int)a1, e));
            auto two = star_free(fac, comp, e);
            CHECK(one.sq == two.sq);
        }
    auto empty = free_natural_system({0, 0}, d, fac);
    for (auto& f : empty.fiber) CHECK(f.empty());
}

TEST_CASE("adjunction bijection count on a small instance") {
    auto d = discrete_track(one_object_group(2));
    auto fac = fac_category(d);
    std::vector<int> gens = {1, 1};
    auto fk = free_natural_system(gens, d, fac);
    auto m = constant_natsys(d, zmod(2));
    auto melems = all_elements(zmod(2));
    std::size_t expected = 1;
    for (std::size_t f = 0; f < 2; ++f)
        for (int x = 0; x < gens[f]; ++x) expected *= melems.size();
    std::set<std::vector<int>> extensions;
    for (std::size_t mask = 0; mask < expected; ++mask) {
        std::vector<std::vector<int>> assign(2);
        std::size_t v = mask;
        for (std::size_t f = 0; f < 2; ++f)
            for (int x = 0; x < gens[f]; ++x) {
                assign[f].push_back((int)(v % melems.size()));
                v /= melems.size();
            }
        std::vector<int> table;
        for (std::size_t g = 0; g < 2; ++g)
            for (auto& e : fk.fiber[g]) {
                const auto& sq = fac.arr_data[(std::size_t)e.sq];
                auto hom = star_hom(d, m, e.f, sq.h, sq.k, sq.xi);
                auto img =
                    hom.apply(melems[(std::size_t)assign[(std::size_t)e.f][(std::size_t)e.x]]);
                table.push_back((int)((img[0] % 2 + 2) % 2));
            }
        extensions.insert(table);
    }
    CHECK(extensions.size() == expected);  // distinct assignments, distinct maps
}

TEST_CASE("natural system validation and star functoriality") {
    auto d = discrete_track(one_object_group(3));
    auto k = constant_natsys(d, zmod(3));
    CHECK(validate_natsys(d, k).empty());
    auto fac = fac_category(d);
    for (std::size_t a1 = 0; a1 < fac.cat.arrows.size(); ++a1)
        for (std::size_t a2 = 0; a2 < fac.cat.arrows.size(); ++a2) {
            if (fac.cat.tgt[a1] != fac.cat.src[a2]) continue;
            int c = fac.cat.then_((int)a1, (int)a2);
            const auto& s1 = fac.arr_data[a1];
            const auto& s2 = fac.arr_data[a2];
            const auto& sc = fac.arr_data[(std::size_t)c];
            int f1 = fac.obj_cell[(std::size_t)fac.cat.src[a1]];
            int g1 = fac.obj_cell[(std::size_t)fac.cat.tgt[a1]];
            auto lhs = star_hom(d, k, f1, sc.h, sc.k, sc.xi);
            auto rhs = star_hom(d, k, g1, s2.h, s2.k, s2.xi)
                           .compose_after(star_hom(d, k, f1, s1.h, s1.k, s1.xi));
            CHECK(homs_equal(lhs, rhs));
        }
}

TEST_CASE("module round trips") {
    auto d = discrete_track(one_object_group(2));
    auto k = constant_natsys(d, zmod(2));
    auto mod = natsys_to_module(d, k);
    REQUIRE(validate_module(d, mod).empty());
    auto k2 = module_to_natsys(d, mod);
    CHECK(natsys_isomorphic(d, k, k2));

    auto z = constant_natsys(d, FGAbGroup{});
    auto mz = natsys_to_module(d, z);
    CHECK(mz.m.tracks.size() == d.tracks.size());
    auto kz = module_to_natsys(d, mz);
    for (auto& f : kz.fiber) CHECK(f.trivial());
}

TEST_CASE("module round trip with a sign action") {
    auto d = discrete_track(one_object_group(2));
    NaturalSystem k;
    k.fiber.assign(2, zmod(4));
    ablin::IntMatrix minus(1, 1);
    minus(0, 0) = -1;
    ablin::AbHom idh = ablin::AbHom::identity(zmod(4));
    ablin::AbHom mih{zmod(4), zmod(4), minus};
    for (int f = 0; f < 2; ++f)
        for (int g = 0; g < 2; ++g) {
            k.post_act[pair_key(f, g)] = (f == 1) ? mih : idh;
            k.pre_act[pair_key(g, f)] = (g == 1) ? mih : idh;
        }
    k.track_act.assign(d.tracks.size(), idh);
    REQUIRE(validate_natsys(d, k).empty());
    auto mod = natsys_to_module(d, k);
    REQUIRE(validate_module(d, mod).empty());
    auto k2 = module_to_natsys(d, mod);
    CHECK(natsys_isomorphic(d, k, k2));
}

TEST_CASE("module-to-module round trip") {
    auto d = discrete_track(one_object_group(2));
    auto k = constant_natsys(d, zmod(2));
    auto mod = natsys_to_module(d, k);
    auto k2 = module_to_natsys(d, mod);
    auto mod2 = natsys_to_module(d, k2);
    CHECK(mod.m.tracks.size() == mod2.m.tracks.size());
    CHECK(validate_module(d, mod2).empty());
}

TEST_CASE("automorphism counts of small groups") {
    CHECK(automorphisms(zmod(2)).size() == 1);
    CHECK(automorphisms(zmod(3)).size() == 2);
    CHECK(automorphisms(zmod(4)).size() == 2);
    FGAbGroup v4;
    v4.torsion = {2, 2};
    CHECK(automorphisms(v4).size() == 6);
}
