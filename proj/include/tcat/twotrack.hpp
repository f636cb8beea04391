// Two-track categories: enrichment in two-typical double groupoids, the
// homotopy track category, the pi2 natural system, sections, the 3-simplex
// obstruction, and the classifying 4-cocycle and its cohomology class.
#pragma once

#include "tcat/bwcoh.hpp"
#include "tcat/dblgpd.hpp"
#include "tcat/gen.hpp"
#include "tcat/track.hpp"

namespace tcat::twotrack {

struct LiftMissing : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotACocycle : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TwoTrackCategory {
    IdIndex objects;
    std::vector<std::vector<int>> hom_index;  // [a][b] -> hom id or -1
    std::vector<dblgpd::DoubleGroupoid> homs;
    std::vector<int> id_point;  // per object, a point of hom(a,a)

    struct CompTable {
        std::vector<std::vector<int>> point, vedge, hedge, square;
    };
    std::map<std::array<int, 3>, CompTable> comp;

    const dblgpd::DoubleGroupoid& hom(int a, int b) const {
        return homs[(std::size_t)hom_index[(std::size_t)a][(std::size_t)b]];
    }
    const CompTable& table(int a, int b, int c) const { return comp.at({a, b, c}); }
};

std::vector<std::string> validate_two_track(const TwoTrackCategory& g, bool thorough = true);

// the split two-track category of a track category with coefficients: each
// hom is the fundamental double groupoid of the twisted nerve of the hom
// track groupoid, and composition is induced by the track composition and
// the coefficient actions
TwoTrackCategory split_two_track(const track::TrackCategory& d, const track::NaturalSystem& k);

// the homotopy track category, with the class maps kept
struct HoData {
    track::TrackCategory d;
    std::vector<std::vector<int>> cell_of_point;   // per hom: point -> 1-cell of d
    std::vector<std::vector<int>> track_of_hedge;  // per hom: horiz arrow -> track of d
    std::vector<int> hom_of_cell;                  // 1-cell -> hom id
    std::vector<std::pair<int, int>> hom_pair_of_cell;
};

HoData ho_track(const TwoTrackCategory& g);

struct Pi2Natsys {
    track::NaturalSystem k;              // over ho.d
    std::vector<dblgpd::Pi2> pi2;        // per 1-cell of ho.d, at its base point
    std::vector<int> base_point;         // per 1-cell: hom-local point index
};

Pi2Natsys pi2_natsys(const TwoTrackCategory& g, const HoData& ho);

struct Section {
    std::uint64_t seed = 0;
    std::vector<int> cell_rep;                      // per 1-cell of ho: point
    std::vector<int> track_rep;                     // per track of ho: horiz edge
    std::vector<std::vector<std::size_t>> sq_rank;  // per hom: square priority
};

Section choose_section(const TwoTrackCategory& g, const HoData& ho, std::uint64_t seed);

// the obstruction value of a 3-simplex of the nerve of ho.d, as coordinates
// in the pi2 fiber at its long edge
std::vector<ablin::Int> psi(const TwoTrackCategory& g, const HoData& ho, const Pi2Natsys& p2,
                            const Section& s, const bwcoh::TrackNerve& nerve, int tau);

// the 4-cochain phi(sigma) = sum_i (-1)^i (twisted psi of the faces), as a
// coordinate vector in C^4
std::vector<ablin::Int> bw_cocycle(const TwoTrackCategory& g, const HoData& ho,
                                   const Pi2Natsys& p2, const Section& s,
                                   const bwcoh::TrackNerve& nerve);

struct BwClass {
    ablin::FGAbGroup h4;
    std::vector<ablin::Int> coords;  // of the class in the canonical form of h4
};

// the class of the cocycle in H^4(ho; pi2), checked against several seeds;
// materializes the degree-4 coboundary, so intended for small nerves
BwClass bw_class(const TwoTrackCategory& g, int nseeds = 3);

// is the cochain a cocycle, evaluated without materializing delta^4
bool is_cocycle(const Pi2Natsys& p2, const bwcoh::TrackNerve& nerve,
                const std::vector<ablin::Int>& phi);

// do two 4-cocycles differ by a coboundary (image of delta^3 plus torsion)
bool same_class(const Pi2Natsys& p2, const bwcoh::TrackNerve& nerve,
                const std::vector<ablin::Int>& phi1, const std::vector<ablin::Int>& phi2);

// cached coboundary-image membership tester for repeated comparisons
struct ClassTester {
    ablin::FGAbGroup c4;
    ablin::SNF snf;
    std::size_t rows = 0, cols = 0;

    ClassTester(const Pi2Natsys& p2, const bwcoh::TrackNerve& nerve);
    bool same(const std::vector<ablin::Int>& phi1, const std::vector<ablin::Int>& phi2) const;
};

}  // namespace tcat::twotrack
