// Finite categories and groupoids: validation, pi0, nerves, fundamental
// groupoids of csk2-fibrant complexes, fibration and discreteness tests.
#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tcat/simp.hpp"
#include "tcat/util.hpp"

namespace tcat::gpd {

struct FinCat {
    IdIndex objects;
    IdIndex arrows;
    std::vector<int> src, tgt;      // per arrow
    std::vector<int> id_arrow;      // per object
    // composition in diagram order: then_(f, g) is defined when tgt f = src g
    std::unordered_map<std::int64_t, int> comp;

    int then_(int f, int g) const {
        auto it = comp.find(pair_key(f, g));
        if (it == comp.end()) throw std::out_of_range("composition undefined");
        return it->second;
    }
    bool composable(int f, int g) const { return tgt[(std::size_t)f] == src[(std::size_t)g]; }
    int add_object(const std::string& id);
    int add_arrow(const std::string& id, int s, int t);
    void set_comp(int f, int g, int fg);
    std::vector<std::string> validate() const;
};

struct FinGroupoid : FinCat {
    std::vector<int> inv;  // per arrow
    std::vector<std::string> validate() const;
};

struct CatMap {
    std::vector<int> obj_map;
    std::vector<int> arr_map;
    std::vector<std::string> validate(const FinCat& a, const FinCat& b) const;
};

struct NotFibrant : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// connected components of the object set; returns class per object
std::vector<int> pi0(const FinGroupoid& g, int* count = nullptr);

simp::TruncSSet nerve(const FinCat& c, int top);
simp::SSetMap nerve_map(const CatMap& f, const FinCat& a, const FinCat& b,
                        const simp::TruncSSet& na, const simp::TruncSSet& nb);

struct FundamentalGroupoid {
    FinGroupoid g;                // objects = level-0 simplices of the input
    std::vector<int> edge_class;  // level-1 simplex -> arrow of g
};

// requires is_csk2_fibrant(x) and top_dim >= 2
FundamentalGroupoid fundamental_groupoid(const simp::TruncSSet& x);

bool is_nerve_fibration(const CatMap& p, const FinGroupoid& a, const FinGroupoid& b);

bool is_equivalent_to_discrete(const FinGroupoid& g);

FinGroupoid semidiscrete(const FinGroupoid& g);

FinGroupoid product(const FinGroupoid& a, const FinGroupoid& b);
FinGroupoid disjoint_union(const FinGroupoid& a, const FinGroupoid& b);

// one-object groupoid on Z/n
FinGroupoid cyclic_groupoid(int n, const std::string& obj = "*");
// all arrows between any two of the given objects, exactly one each way
FinGroupoid indiscrete_groupoid(const std::vector<std::string>& objs);
FinGroupoid discrete_groupoid(const std::vector<std::string>& objs);

// vertex group at an object, as the list of endo-arrows
std::vector<int> vertex_group(const FinGroupoid& g, int obj);

// isomorphism of finite groupoids by backtracking over object/arrow images;
// intended for small instances
bool isomorphic(const FinGroupoid& a, const FinGroupoid& b);
// same, returning the witness maps
bool isomorphic_with(const FinGroupoid& a, const FinGroupoid& b, std::vector<int>* obj_map,
                     std::vector<int>* arr_map);
// isomorphism with a prescribed object bijection
bool isomorphic_over(const FinGroupoid& a, const FinGroupoid& b, const std::vector<int>& obj_map,
                     std::vector<int>* arr_map);
// equivalence: bijection on pi0 plus vertex-group isomorphism per component
bool equivalent(const FinGroupoid& a, const FinGroupoid& b);

// groupoid-nerve recognition for the restricted diagonal equivalence test
bool looks_like_groupoid_nerve(const simp::TruncSSet& x);

}  // namespace tcat::gpd
