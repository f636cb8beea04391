#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tcat/twotrack.hpp"

using namespace tcat;
using namespace tcat::twotrack;
using ablin::Int;

namespace {

track::TrackCategory pointed_track_z2() {
    auto d0 = track::discrete_track((gpd::FinCat)gpd::discrete_groupoid({"*"}));
    return track::natsys_to_module(d0, track::constant_natsys(d0, gen::zn(2))).m;
}

}  // namespace

TEST_CASE("split two-track over the discrete Z/2 category") {
    auto d = track::discrete_track((gpd::FinCat)gpd::cyclic_groupoid(2));
    auto k = track::constant_natsys(d, gen::zn(2));
    auto g = split_two_track(d, k);
    CHECK(validate_two_track(g).empty());
    auto ho = ho_track(g);
    CHECK(ho.d.base.arrows.size() == d.base.arrows.size());
    CHECK(ho.d.tracks.size() == d.tracks.size());
    auto p2 = pi2_natsys(g, ho);
    for (auto& f : p2.k.fiber) CHECK(f == gen::zn(2));
    auto cls = bw_class(g, 3);
    CHECK(cls.h4 == gen::zn(2));  // H^4(Z/2; Z/2)
    for (auto& v : cls.coords) CHECK(v == 0);
}

TEST_CASE("split two-track with genuine tracks") {
    auto d = pointed_track_z2();
    auto k = track::constant_natsys(d, gen::zn(2));
    auto g = split_two_track(d, k);
    CHECK(validate_two_track(g).empty());
    auto ho = ho_track(g);
    CHECK(ho.d.base.arrows.size() == 1);
    CHECK(ho.d.tracks.size() == 2);
    auto p2 = pi2_natsys(g, ho);
    CHECK(p2.k.fiber[0] == gen::zn(2));
    auto nerve = bwcoh::track_nerve(ho.d, 5);
    ClassTester tester(p2, nerve);
    std::vector<Int> zero(bwcoh::cochain_group(nerve, p2.k, 4).group.ngens(), Int(0));
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        auto s = choose_section(g, ho, seed);
        auto phi = bw_cocycle(g, ho, p2, s, nerve);
        CHECK(is_cocycle(p2, nerve, phi));
        CHECK(tester.same(phi, zero));
    }
    // psi vanishes on degenerate 3-simplices
    auto s = choose_section(g, ho, 0);
    for (std::size_t t = 0; t < nerve.x.size(3); ++t) {
        if (!nerve.x.is_degenerate(3, (int)t)) continue;
        for (auto& v : psi(g, ho, p2, s, nerve, (int)t)) CHECK(v == 0);
    }
}

TEST_CASE("trivial two-track category gives zero everything") {
    auto d = track::discrete_track((gpd::FinCat)gpd::discrete_groupoid({"*"}));
    auto k = track::constant_natsys(d, ablin::FGAbGroup{});
    auto g = split_two_track(d, k);
    CHECK(validate_two_track(g).empty());
    auto ho = ho_track(g);
    auto p2 = pi2_natsys(g, ho);
    CHECK(p2.k.fiber[0].trivial());
    auto nerve = bwcoh::track_nerve(ho.d, 5);
    auto s0 = choose_section(g, ho, 0);
    auto s1 = choose_section(g, ho, 7);
    for (std::size_t t = 0; t < nerve.x.size(3); ++t) {
        for (auto& v : psi(g, ho, p2, s0, nerve, (int)t)) CHECK(v == 0);
        for (auto& v : psi(g, ho, p2, s1, nerve, (int)t)) CHECK(v == 0);
    }
    auto cls = bw_class(g, 2);
    CHECK(cls.h4.trivial());
}

TEST_CASE("sections satisfy p after s = id") {
    auto d = pointed_track_z2();
    auto k = track::constant_natsys(d, gen::zn(2));
    auto g = split_two_track(d, k);
    auto ho = ho_track(g);
    for (std::uint64_t seed : {0ull, 1ull, 5ull}) {
        auto s = choose_section(g, ho, seed);
        for (std::size_t f = 0; f < ho.d.base.arrows.size(); ++f) {
            int h = ho.hom_of_cell[f];
            CHECK(ho.cell_of_point[(std::size_t)h][(std::size_t)s.cell_rep[f]] == (int)f);
        }
        for (std::size_t t = 0; t < ho.d.tracks.size(); ++t) {
            int h = ho.hom_of_cell[(std::size_t)ho.d.tsrc[t]];
            CHECK(ho.track_of_hedge[(std::size_t)h][(std::size_t)s.track_rep[t]] == (int)t);
        }
    }
    // seed 0 is deterministic
    auto a = choose_section(g, ho, 0);
    auto b = choose_section(g, ho, 0);
    CHECK(a.cell_rep == b.cell_rep);
    CHECK(a.track_rep == b.track_rep);
}

TEST_CASE("invalid homs are reported") {
    auto d = track::discrete_track((gpd::FinCat)gpd::discrete_groupoid({"*"}));
    auto k = track::constant_natsys(d, gen::zn(2));
    auto g = split_two_track(d, k);
    auto bad = g;
    // corrupt a vertical pasting entry in the hom
    auto& h = bad.homs[0];
    if (h.squares.size() >= 2) {
        for (auto& [key, v] : h.vpaste_) {
            v = (v + 1) % (int)h.squares.size();
            break;
        }
        CHECK(!validate_two_track(bad).empty());
    }
}

TEST_CASE("multi-object split instance over a poset base") {
    gpd::FinCat arrow;
    arrow.add_object("a");
    arrow.add_object("b");
    arrow.add_arrow("ida", 0, 0);
    arrow.add_arrow("idb", 1, 1);
    arrow.add_arrow("f", 0, 1);
    arrow.id_arrow[0] = 0;
    arrow.id_arrow[1] = 1;
    arrow.set_comp(0, 0, 0);
    arrow.set_comp(1, 1, 1);
    arrow.set_comp(0, 2, 2);
    arrow.set_comp(2, 1, 2);
    auto d = track::discrete_track(arrow);
    auto k = track::constant_natsys(d, gen::zn(3));
    auto g = split_two_track(d, k);
    CHECK(validate_two_track(g).empty());
    auto ho = ho_track(g);
    CHECK(ho.d.base.arrows.size() == 3);
    auto p2 = pi2_natsys(g, ho);
    for (auto& f : p2.k.fiber) CHECK(f == gen::zn(3));
    auto cls = bw_class(g, 2);
    for (auto& v : cls.coords) CHECK(v == 0);
}
