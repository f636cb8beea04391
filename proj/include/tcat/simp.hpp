// Truncated finite simplicial and bisimplicial sets: validation, horns and
// fillers, coskeleta, decalage, the ordinal-sum resolution, and diagonals.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcat/util.hpp"

namespace tcat::simp {

struct TruncSSet {
    int top_dim = 0;
    std::vector<IdIndex> levels;  // 0..top_dim
    // faces[n][i]: level n -> level n-1 (1 <= n <= top_dim, 0 <= i <= n)
    std::vector<std::vector<std::vector<int>>> faces;
    // degens[n][j]: level n -> level n+1 (0 <= n < top_dim, 0 <= j <= n)
    std::vector<std::vector<std::vector<int>>> degens;

    std::size_t size(int n) const { return levels[(std::size_t)n].size(); }
    int face(int n, int i, int x) const { return faces[(std::size_t)n][(std::size_t)i][(std::size_t)x]; }
    int degen(int n, int j, int x) const { return degens[(std::size_t)n][(std::size_t)j][(std::size_t)x]; }
    void init_levels(int top);

    // is x in the image of some degeneracy?
    bool is_degenerate(int n, int x) const;

    std::vector<std::string> validate() const;
    TruncSSet truncate(int new_top) const;
};

struct TruncBiSSet {
    int top_p = 0, top_q = 0;
    bool triangular = false;  // levels present only for p+q <= top_p (== top_q)
    std::vector<std::vector<IdIndex>> levels;  // [p][q]
    // h_faces[p][q][i]: (p,q) -> (p-1,q); v_faces[p][q][j]: (p,q) -> (p,q-1)
    std::vector<std::vector<std::vector<std::vector<int>>>> h_faces, v_faces;
    std::vector<std::vector<std::vector<std::vector<int>>>> h_degens, v_degens;

    bool has_level(int p, int q) const {
        if (p < 0 || q < 0 || p > top_p || q > top_q) return false;
        return !triangular || p + q <= top_p;
    }
    std::size_t size(int p, int q) const { return levels[(std::size_t)p][(std::size_t)q].size(); }
    void init_levels(int tp, int tq, bool tri);
    std::vector<std::string> validate() const;

    // the vertical simplicial set at horizontal level p (through available q)
    TruncSSet column_at(int p) const;
    // the horizontal simplicial set at vertical level q
    TruncSSet row_at(int q) const;
};

struct SSetMap {
    const TruncSSet* source = nullptr;
    const TruncSSet* target = nullptr;
    std::vector<std::vector<int>> level_map;  // per level

    std::vector<std::string> validate() const;
};

struct BiSSetMap {
    const TruncBiSSet* source = nullptr;
    const TruncBiSSet* target = nullptr;
    std::vector<std::vector<std::vector<int>>> level_map;  // [p][q]

    std::vector<std::string> validate() const;
};

struct IncompatibleHorn : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedLevel : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> validate(const TruncSSet& x);

// boundary filling: levels <= n kept, levels n < m <= new_top rebuilt as the
// compatible boundary tuples of m+1 simplices of the level below
TruncSSet coskeleton(const TruncSSet& x, int n, int new_top);

// all fillers of the horn: faces d_i = horn[i] for i != k (horn[k] ignored),
// in lexicographic identifier order
std::vector<int> horn_fillers(const TruncSSet& x, int n, int k, const std::vector<int>& horn);

bool is_csk2_fibrant(const TruncSSet& x);

// does every horn of Lambda^k[n] in `base` lift along f against its image,
// for n = 1, 2 (enough for maps of 2-coskeletal-like objects)
bool is_csk2_fibration(const SSetMap& f);

TruncSSet decalage(const TruncSSet& x);

TruncBiSSet ordinal_sum(const TruncSSet& x);

TruncSSet diagonal(const TruncBiSSet& w);

// restricted: every horizontal level of source and target must be a groupoid
// nerve; throws UnsupportedLevel otherwise
bool is_diagonal_n_equivalence(const BiSSetMap& f, int n);

TruncSSet product(const TruncSSet& x, const TruncSSet& y);

// the standard n-simplex truncated at `top`
TruncSSet standard_simplex(int n, int top);
// its boundary
TruncSSet boundary_simplex(int n, int top);

}  // namespace tcat::simp
