#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "tcat/io.hpp"

using namespace tcat;

TEST_CASE("groupoid and category round trips") {
    auto g = gpd::product(gpd::cyclic_groupoid(2), gpd::indiscrete_groupoid({"x", "y"}));
    auto j = io::save_groupoid(g);
    auto g2 = io::load_groupoid(j);
    CHECK(g2.validate().empty());
    CHECK(gpd::isomorphic(g, g2));
    CHECK(io::schema_of(j) == "gpd/v1");
}

TEST_CASE("simplicial set round trip") {
    auto x = gpd::nerve(gpd::cyclic_groupoid(2), 3);
    auto x2 = io::load_sset(io::save_sset(x));
    CHECK(x2.validate().empty());
    for (int l = 0; l <= 3; ++l) CHECK(x2.size(l) == x.size(l));
    for (std::size_t s = 0; s < x.size(2); ++s)
        for (int i = 0; i <= 2; ++i) CHECK(x.face(2, i, (int)s) == x2.face(2, i, (int)s));
}

TEST_CASE("bisimplicial set round trip") {
    auto w = simp::ordinal_sum(gpd::nerve(gpd::cyclic_groupoid(2), 3));
    auto w2 = io::load_bisset(io::save_bisset(w));
    CHECK(w2.validate().empty());
    CHECK(w2.size(1, 1) == w.size(1, 1));
}

TEST_CASE("track category and natural system round trips") {
    auto d0 = track::discrete_track((gpd::FinCat)gpd::discrete_groupoid({"*"}));
    auto d = track::natsys_to_module(d0, track::constant_natsys(d0, gen::zn(2))).m;
    auto d2 = io::load_track(io::save_track(d));
    CHECK(track::validate_track(d2).empty());
    CHECK(d2.tracks.size() == d.tracks.size());

    auto k = track::constant_natsys(d, gen::zn(3));
    auto k2 = io::load_natsys(d, io::save_natsys(d, k));
    CHECK(track::validate_natsys(d, k2).empty());
    CHECK(track::natsys_equal(d, k, k2));
}

TEST_CASE("module round trip") {
    auto d = track::discrete_track((gpd::FinCat)gpd::cyclic_groupoid(2));
    auto m = track::natsys_to_module(d, track::constant_natsys(d, gen::zn(2)));
    auto m2 = io::load_module(d, io::save_module(d, m));
    CHECK(track::validate_module(d, m2).empty());
}

TEST_CASE("double groupoid round trip") {
    auto pt = dblgpd::pt_of_kan(gpd::nerve(gpd::cyclic_groupoid(2), 5));
    auto j = io::save_dgpd(pt.dg);
    auto g2 = io::load_dgpd(j);
    CHECK(g2.validate().empty());
    CHECK(g2.squares.size() == pt.dg.squares.size());
    auto sym = dblgpd::is_symmetric(pt.dg);
    REQUIRE(sym.has_value());
    auto s2 = io::load_dgpd_sym(io::save_dgpd_sym(*sym));
    CHECK(s2.dg.validate().empty());
}

TEST_CASE("two-track and extension bundles round trip and validate") {
    auto d = track::discrete_track((gpd::FinCat)gpd::cyclic_groupoid(2));
    auto k = track::constant_natsys(d, gen::zn(2));
    auto g = twotrack::split_two_track(d, k);
    auto g2 = io::load_twotrack(io::save_twotrack(g));
    CHECK(twotrack::validate_two_track(g2).empty());

    // canonical identification bundle
    auto ho = twotrack::ho_track(g);
    auto p2 = twotrack::pi2_natsys(g, ho);
    io::ExtensionBundle b;
    b.g = g;
    b.d = ho.d;
    b.k = p2.k;
    b.cell_map.resize(ho.d.base.arrows.size());
    for (std::size_t i = 0; i < b.cell_map.size(); ++i) b.cell_map[i] = (int)i;
    b.track_map.resize(ho.d.tracks.size());
    for (std::size_t i = 0; i < b.track_map.size(); ++i) b.track_map[i] = (int)i;
    for (auto& f : p2.k.fiber) b.fiber_iso.push_back(ablin::IntMatrix::identity(f.ngens()));
    CHECK(io::validate_extension(b).empty());
    auto b2 = io::load_extension(io::save_extension(b));
    CHECK(io::validate_extension(b2).empty());

    // corrupt the identification
    if (b.cell_map.size() >= 2) {
        auto bad = b;
        std::swap(bad.cell_map[0], bad.cell_map[1]);
        CHECK(!io::validate_extension(bad).empty());
    }
}

TEST_CASE("schema tags are enforced") {
    auto j = io::save_groupoid(gpd::cyclic_groupoid(2));
    j["schema"] = "nonsense/v9";
    CHECK_THROWS_AS(io::load_groupoid(j), io::SchemaError);
}

TEST_CASE("cohomology report shape") {
    std::vector<ablin::FGAbGroup> hs(3);
    hs[0].rank = 1;
    hs[2].torsion = {2};
    auto j = io::cohomology_report(hs);
    CHECK(io::schema_of(j) == "cohomology/v1");
    CHECK(j["degrees"].size() == 3);
    CHECK(j["degrees"][2]["torsion"][0] == "2");
}
