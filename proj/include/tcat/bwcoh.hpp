// The nerve of a track category, the twisted coboundary on cochains valued in
// a natural system, and Baues-Wirsching cohomology via exact linear algebra.
#pragma once

#include <array>

#include "tcat/simp.hpp"
#include "tcat/track.hpp"

namespace tcat::bwcoh {

struct TrackNerve {
    simp::TruncSSet x;
    // level-2 bookkeeping: (h, g, f, xi) with xi: g.h => f
    std::vector<std::array<int, 4>> two_data;
    const track::TrackCategory* d = nullptr;

    // the long edge d_1 d_2 ... d_{n-1} of a simplex; vertices map to their
    // identity 1-cell
    int long_edge(int lvl, int idx) const;
};

// dims 0..1 from the base category, dim 2 from tracks, dim 3 from the pasting
// equation, 3-coskeletal above
TrackNerve track_nerve(const track::TrackCategory& d, int top);

// one generator block per simplex of level n, fiber K_{long edge}
struct CochainLayout {
    ablin::FGAbGroup group;
    std::vector<int> free_off;  // per simplex: offset of its free generators
    std::vector<int> tor_off;   // per simplex: offset of its torsion generators
    std::vector<int> fiber_of;  // per simplex: 1-cell indexing its fiber
};

CochainLayout cochain_group(const TrackNerve& n, const track::NaturalSystem& k, int lvl);

// the twisted coboundary C^lvl -> C^{lvl+1}
ablin::AbHom coboundary(const TrackNerve& n, const track::NaturalSystem& k, int lvl);

// the transport K_{long edge of d_i simplex} -> K_{long edge of simplex}
// entering the twisted coboundary at face i
ablin::AbHom face_transport(const TrackNerve& n, const track::NaturalSystem& k, int lvl,
                            int simplex, int i);

// apply the twisted coboundary to a cochain without materializing the matrix
std::vector<ablin::Int> apply_coboundary(const TrackNerve& n, const track::NaturalSystem& k,
                                         int lvl, const std::vector<ablin::Int>& c);

ablin::FGAbGroup bw_cohomology(const track::TrackCategory& d, const track::NaturalSystem& k,
                               int deg);

// all degrees 0..maxdeg in one nerve pass
std::vector<ablin::FGAbGroup> bw_cohomology_range(const track::TrackCategory& d,
                                                  const track::NaturalSystem& k, int maxdeg);

// classical Baues-Wirsching cohomology of a plain category from its ordinary
// nerve, with the same twisted-face recipe; independent code path used as a
// cross-check oracle for the discrete case
ablin::FGAbGroup classical_bw(const gpd::FinCat& e, const track::NaturalSystem& k, int deg);
std::vector<ablin::FGAbGroup> classical_bw_range(const gpd::FinCat& e,
                                                 const track::NaturalSystem& k, int maxdeg);

}  // namespace tcat::bwcoh
