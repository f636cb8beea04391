// Instance constructions: twisted nerves of groupoids with abelian fibers,
// and seeded random categories, track categories, and natural systems.
#pragma once

#include <random>

#include "tcat/dblgpd.hpp"
#include "tcat/track.hpp"

namespace tcat::gen {

// a local system over a groupoid: one finite abelian fiber per object and an
// isomorphism per arrow
struct Twist {
    const gpd::FinGroupoid* base = nullptr;
    std::vector<ablin::FGAbGroup> fiber;
    std::vector<ablin::AbHom> transport;
};

// the 2-type with pi1-free base nerve(t) and pi2 the twisted fibers: level n
// carries a fiber element per 2-face of the simplex, normalized so that the
// values on faces through vertex 0 determine the rest
simp::TruncSSet twisted_nerve(const Twist& tw, int top);

// same with the cell data kept, for building composition maps between
// twisted complexes
struct TwistedComplex {
    simp::TruncSSet x;
    struct Cell {
        std::vector<int> chain;
        std::vector<std::vector<ablin::Int>> z0;
    };
    std::vector<std::vector<Cell>> cells;  // aligned with x level indices
};
TwistedComplex twisted_complex(const Twist& tw, int top);

// deterministic rng wrapper
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    int pick(int n) { return (int)(eng() % (std::uint64_t)n); }
};

// small random categories with bounded nerve growth: built from components
// that keep composable chains short (posets, small groups, indiscrete blocks)
gpd::FinCat random_category(Rng& rng, int max_objects, int max_arrows, std::size_t chain5_cap);

// random track category: a natural-system module over a random discrete base
track::TrackCategory random_track_category(Rng& rng, int max_objects, int max_arrows,
                                           int max_tracks_per_hom, std::size_t chain5_cap);

// random natural system over d with fibers among the given groups
track::NaturalSystem random_natsys(Rng& rng, const track::TrackCategory& d,
                                   const std::vector<ablin::FGAbGroup>& choices);

ablin::FGAbGroup zn(int n);
ablin::FGAbGroup zfree();

}  // namespace tcat::gen
