// Track categories, homotopy categories, factorization categories, natural
// systems, and the module <-> natural-system correspondence.
#pragma once

#include <functional>
#include <optional>
#include <unordered_map>

#include "tcat/ablin.hpp"
#include "tcat/gpd.hpp"

namespace tcat::track {

// A track category: base category of 1-cells plus an invertible 2-cell layer.
// Horizontal composition of tracks is stored through its whiskerings and
// recovered by the interchange law.
struct TrackCategory {
    gpd::FinCat base;
    IdIndex tracks;
    std::vector<int> tsrc, ttgt;  // per track: parallel 1-cells
    std::vector<int> tid;         // per 1-cell: identity track
    std::vector<int> tinv;
    std::unordered_map<std::int64_t, int> vcomp;  // (xi, zeta) -> xi followed by zeta
    // whisker_post[(f, zeta)] = f_* zeta for zeta: g0 => g1 : a->b, f: b->c
    // whisker_pre[(g, xi)]  = g^* xi  for xi: f0 => f1 : b->c, g: a->b
    std::unordered_map<std::int64_t, int> wpost, wpre;

    int add_track(const std::string& id, int f0, int f1);
    int boxplus(int x, int z) const {
        auto it = vcomp.find(pair_key(x, z));
        if (it == vcomp.end()) throw std::out_of_range("vertical composition undefined");
        return it->second;
    }
    int post(int f, int z) const {
        auto it = wpost.find(pair_key(f, z));
        if (it == wpost.end()) throw std::out_of_range("post whisker undefined");
        return it->second;
    }
    int pre(int g, int x) const {
        auto it = wpre.find(pair_key(g, x));
        if (it == wpre.end()) throw std::out_of_range("pre whisker undefined");
        return it->second;
    }
    // horizontal composite of zeta: g0 => g1 : a->b and xi: f0 => f1 : b->c
    int hcomp(int zeta, int xi) const {
        int f0 = tsrc[(std::size_t)xi], g1 = ttgt[(std::size_t)zeta];
        return boxplus(post(f0, zeta), pre(g1, xi));
    }
    std::vector<int> hom_tracks(int f0, int f1) const;  // tracks f0 => f1
};

std::vector<std::string> validate_track(const TrackCategory& d);

// discrete track category on a base category
TrackCategory discrete_track(const gpd::FinCat& base);

gpd::FinCat homotopy_category(const TrackCategory& d, std::vector<int>* cell_class = nullptr);

// category of factorizations: objects are the 1-cells of d, morphisms are
// homotopy commuting squares (h, k, xi): f -> g with xi: k f h => g
struct FacCat {
    gpd::FinCat cat;
    std::vector<int> obj_cell;              // Fac object -> 1-cell of d
    struct Square {
        int h, k, xi;
    };
    std::vector<Square> arr_data;           // per Fac arrow
};

FacCat fac_category(const TrackCategory& d);

// natural system in abelian groups
struct NaturalSystem {
    std::vector<ablin::FGAbGroup> fiber;  // per 1-cell
    // post_act[(f, g)]: f_* : K_g -> K_{fg} for composable g then f
    // pre_act[(g, f)]:  g^* : K_f -> K_{fg}
    std::unordered_map<std::int64_t, ablin::AbHom> post_act, pre_act;
    std::vector<ablin::AbHom> track_act;  // per track: K_{src} -> K_{tgt}

    const ablin::AbHom& post(int f, int g) const { return post_act.at(pair_key(f, g)); }
    const ablin::AbHom& pre(int g, int f) const { return pre_act.at(pair_key(g, f)); }
};

// xi_* . k_* . h^* : K_f -> K_g for a factorization square (h, k, xi): f -> g
ablin::AbHom star_hom(const TrackCategory& d, const NaturalSystem& ns, int f, int h, int k,
                      int xi);

// equality of homomorphisms between presented groups (entries compared modulo
// the target invariant factors)
bool homs_equal(const ablin::AbHom& a, const ablin::AbHom& b);

std::vector<std::string> validate_natsys(const TrackCategory& d, const NaturalSystem& k);

// constant natural system with trivial actions
NaturalSystem constant_natsys(const TrackCategory& d, const ablin::FGAbGroup& g);

// natural system in sets, free on a fiberwise set
struct SetNaturalSystem {
    // element of (FK)_g = (source cell f, generator index in K(f), Fac arrow f -> g)
    struct Elem {
        int f, x, sq;
    };
    std::vector<std::vector<Elem>> fiber;  // per 1-cell g
    const FacCat* fac = nullptr;
};

SetNaturalSystem free_natural_system(const std::vector<int>& gen_count, const TrackCategory& d,
                                     const FacCat& fac);

// apply a factorization arrow to an element of the free system
SetNaturalSystem::Elem star_free(const FacCat& fac, int sq, const SetNaturalSystem::Elem& e);

// a module over d: a track category with the same base, a retraction p onto
// d's tracks and a section s, with abelian fibers
struct TrackModule {
    TrackCategory m;
    std::vector<int> p_track;  // m-track -> d-track
    std::vector<int> s_track;  // d-track -> m-track
};

struct NotSplit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> validate_module(const TrackCategory& d, const TrackModule& mod);

// per-1-cell kernel tracks and their abelian coordinates, exposing the
// element-level identification used by module_to_natsys
struct KernelTables {
    std::vector<std::vector<int>> ker;        // kernel track ids per 1-cell
    std::vector<ablin::AbelianTable> tab;
};

// kernel fibers of p with their induced natural-system structure
NaturalSystem module_to_natsys(const TrackCategory& d, const TrackModule& mod,
                               KernelTables* tables = nullptr);

// rebuild the module with hom sets D1(f0, f1) x K_{f0}; requires finite fibers
TrackModule natsys_to_module(const TrackCategory& d, const NaturalSystem& k);

// all elements of a finite f.g. abelian group, as coordinate vectors in a
// deterministic odometer order
std::vector<std::vector<ablin::Int>> all_elements(const ablin::FGAbGroup& g);

// pointwise comparison of natural systems along the identity of d
bool natsys_equal(const TrackCategory& d, const NaturalSystem& a, const NaturalSystem& b);

// isomorphism over the identity of d: searches fiberwise automorphisms
// commuting with every action (fibers must be finite and small)
bool natsys_isomorphic(const TrackCategory& d, const NaturalSystem& a, const NaturalSystem& b);

// all automorphisms of a finite f.g. abelian group, as matrices
std::vector<ablin::IntMatrix> automorphisms(const ablin::FGAbGroup& g);

TrackCategory product_track(const TrackCategory& a, const TrackCategory& b);

}  // namespace tcat::track
