// Exact integer linear algebra: dense arbitrary-precision matrices, Smith
// normal form, finitely generated abelian groups in invariant-factor form,
// and homology of a pair of composable maps.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcat::ablin {

using Int = boost::multiprecision::cpp_int;

class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}

    static IntMatrix identity(std::size_t n);
    static IntMatrix zero(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }
    static IntMatrix diagonal(const std::vector<Int>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix transpose() const;
    bool is_zero() const;
    bool is_identity() const;

    // columns of `o` appended on the right
    IntMatrix hcat(const IntMatrix& o) const;

    std::string str() const;

private:
    std::size_t rows_, cols_;
    std::vector<Int> e_;
};

struct SNF {
    IntMatrix d;  // diagonal, d_i | d_{i+1}, d_i >= 0
    IntMatrix u;  // unimodular, u*m*v = d
    IntMatrix v;  // unimodular
    std::size_t rank = 0;  // number of nonzero diagonal entries
};

// U*M*V = D with D in Smith normal form.
SNF smith_normal_form(const IntMatrix& m);

// abs(det) of a square matrix by fraction-free elimination; used to certify
// unimodularity of the SNF transforms in tests.
Int det_abs(const IntMatrix& m);

// Z^rank + sum_i Z/torsion[i], torsion in a divisibility chain, entries >= 2.
struct FGAbGroup {
    std::size_t rank = 0;
    std::vector<Int> torsion;

    std::size_t ngens() const { return rank + torsion.size(); }
    bool trivial() const { return rank == 0 && torsion.empty(); }
    bool operator==(const FGAbGroup& o) const { return rank == o.rank && torsion == o.torsion; }
    std::string str() const;

    // order of generator i (0 = infinite); free generators come first
    Int gen_order(std::size_t i) const {
        return i < rank ? Int(0) : torsion[i - rank];
    }
    // reduce a coordinate vector modulo the generator orders, entries into [0, d)
    std::vector<Int> reduce(std::vector<Int> x) const;
};

// canonical form of (Z^n + sum Z/d_i) with arbitrary d_i >= 0 allowed
FGAbGroup normalize_group(std::size_t free_rank, const std::vector<Int>& torsion);

struct AbHom {
    FGAbGroup source;
    FGAbGroup target;
    IntMatrix matrix;  // target.ngens() x source.ngens(), acts on coordinate columns

    std::vector<Int> apply(const std::vector<Int>& x) const;
    // entry classes must be well defined modulo the invariant factors
    std::vector<std::string> validate() const;
    static AbHom zero(const FGAbGroup& src, const FGAbGroup& tgt);
    static AbHom identity(const FGAbGroup& g);
    AbHom compose_after(const AbHom& first) const;  // this . first
};

struct CompositionNonzero : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ker(out_map)/im(in_map) for free Z-modules, out_map*in_map = 0 required.
FGAbGroup homology(const IntMatrix& out_map, const IntMatrix& in_map);

// Cohomology of a three-term complex of *presented* groups
//   C_prev --a--> C --b--> C_next
// where each group is given as FGAbGroup (generators with orders).
// Returns ker(b)/im(a) together with a basis map used to locate classes.
struct PresentedHomology {
    FGAbGroup group;
    // rows: coordinates in C's generators, one column per generator of `group`
    IntMatrix rep_basis;
    // internal data enabling class_of(); see implementation
    IntMatrix lift_u;      // SNF transform for the quotient presentation
    IntMatrix ker_basis;   // columns span {x : b x = 0 mod relations of C_next}
    std::vector<Int> diag; // invariant factors incl. 1s/0s, aligned with lift_u
    std::size_t nrel = 0;
};

PresentedHomology presented_cohomology(const AbHom& a, const AbHom& b);

// coordinates of the class of x (a coordinate vector in C) in `group`;
// throws if x is not a cocycle (b x != 0).
std::vector<Int> class_of(const PresentedHomology& h, const FGAbGroup& c,
                          const AbHom& b, const std::vector<Int>& x);

// does x lie in im(a) + torsion-relations, i.e. is the class zero?
bool is_coboundary(const PresentedHomology& h, const FGAbGroup& c,
                   const AbHom& b, const std::vector<Int>& x);

// solve M y = x over Z (no modular reduction); empty result if unsolvable
bool solve(const IntMatrix& m, const std::vector<Int>& x, std::vector<Int>& y);
// same with a precomputed SNF of m
bool solve(const SNF& s, std::size_t rows, std::size_t cols, const std::vector<Int>& x,
           std::vector<Int>& y);

struct NonAbelian : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// canonical form of a finite abelian group given by its multiplication table
// (mul[i][j] = index of the product, unit at index 0), plus the coordinates of
// every element in the invariant-factor decomposition
struct AbelianTable {
    FGAbGroup group;
    std::vector<std::vector<Int>> coords;  // per element
};

AbelianTable abelian_from_table(const std::vector<std::vector<int>>& mul);

// index of the element with the given coordinates (coords are reduced first)
int element_with_coords(const AbelianTable& t, const std::vector<Int>& c);

}  // namespace tcat::ablin
