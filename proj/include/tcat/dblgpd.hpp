// Double groupoids, the symmetric / weakly globular / two-typical predicates,
// double and diagonal nerves, pi2, and the fundamental double groupoid of a
// truncated Kan complex.
#pragma once

#include <optional>

#include "tcat/ablin.hpp"
#include "tcat/gpd.hpp"
#include "tcat/simp.hpp"

namespace tcat::dblgpd {

// Squares are oriented
//      top
//   p00 --> p01
//   |         |          left, right: vertical edges
//   v         v          top, bottom: horizontal edges
//   p10 --> p11
//      bot
struct DoubleGroupoid {
    IdIndex points;
    gpd::FinGroupoid vert, horiz;  // edge groupoids over the same points
    IdIndex squares;
    std::vector<int> sq_top, sq_bot;     // -> horiz arrows
    std::vector<int> sq_left, sq_right;  // -> vert arrows
    // vpaste: bot a = top b; hpaste: right a = left b
    std::unordered_map<std::int64_t, int> vpaste_, hpaste_;
    std::vector<int> vid;  // per horiz edge
    std::vector<int> hid;  // per vert edge
    std::vector<int> vinv, hinv;

    int vpaste(int a, int b) const {
        auto it = vpaste_.find(pair_key(a, b));
        if (it == vpaste_.end()) throw std::out_of_range("vpaste undefined");
        return it->second;
    }
    int hpaste(int a, int b) const {
        auto it = hpaste_.find(pair_key(a, b));
        if (it == hpaste_.end()) throw std::out_of_range("hpaste undefined");
        return it->second;
    }
    std::vector<std::string> validate(bool thorough = true) const;
};

struct PreconditionFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotWeaklyGlobular : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotTwoTypical : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// (2.13)-style presentation: the witnessing isomorphisms of the two edge
// groupoids and of the two square structures
struct SymmetricPresentation {
    DoubleGroupoid dg;
    std::vector<int> point_map;   // vert-side points -> horiz-side points
    std::vector<int> edge_map;    // vert arrows -> horiz arrows
    std::vector<int> square_map;  // squares -> squares, (sq over horiz) to (sq over vert)
};

std::vector<std::string> validate(const DoubleGroupoid& g, bool thorough = true);

std::optional<SymmetricPresentation> is_symmetric(const DoubleGroupoid& g);

bool is_weakly_globular(const DoubleGroupoid& g);

bool is_two_typical(const DoubleGroupoid& g);

// pi0 of the square groupoid over pi0 of the edge groupoid, with the induced
// composition; requires weak globularity
gpd::FinGroupoid fundamental_groupoid_dg(const DoubleGroupoid& g,
                                         std::vector<int>* edge_class = nullptr,
                                         std::vector<int>* point_class = nullptr);

struct Pi2 {
    ablin::FGAbGroup group;
    std::vector<int> squares;               // vertex-group squares, aligned with coords
    ablin::AbelianTable tab;
    std::unordered_map<int, int> sq_pos;    // square -> position in `squares`
};

// vertex group of the square-over-horizontal-edge groupoid at the identity
// edge of the point; abelianness is asserted, not imposed
Pi2 pi2_at(const DoubleGroupoid& g, int point);

// diag of the double nerve, through dimension top
simp::TruncSSet diagonal_nerve(const DoubleGroupoid& g, int top);

// the fundamental double groupoid of a Kan complex given through dimension 5,
// with the class maps exposed for round-trip and product comparisons
struct PtResult {
    DoubleGroupoid dg;
    std::vector<int> vert_class;   // X_2 -> vert arrows
    std::vector<int> horiz_class;  // X_2 -> horiz arrows
    std::vector<int> sq_class;     // X_3 -> squares
};

PtResult pt_of_kan(const simp::TruncSSet& x, bool debug_fillers = false);

DoubleGroupoid product(const DoubleGroupoid& a, const DoubleGroupoid& b);

// the weakly globular double groupoid of a strict 2-groupoid presented as a
// one-hom track structure is built in the twotrack module; here only the
// generic constructions live

}  // namespace tcat::dblgpd
