#include "tcat/ablin.hpp"

#include <algorithm>
#include <sstream>

namespace tcat::ablin {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<Int>& d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("IntMatrix: shape mismatch in product");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                const Int& b = o(k, j);
                if (b != 0) r(i, j) += a * b;
            }
        }
    return r;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

bool IntMatrix::is_zero() const {
    for (const auto& x : e_)
        if (x != 0) return false;
    return true;
}

bool IntMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

IntMatrix IntMatrix::hcat(const IntMatrix& o) const {
    if (rows_ != o.rows_) throw std::invalid_argument("IntMatrix: hcat row mismatch");
    IntMatrix r(rows_, cols_ + o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, cols_ + j) = o(i, j);
    }
    return r;
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "\n" : "");
        for (std::size_t j = 0; j < cols_; ++j) os << (*this)(i, j) << (j + 1 < cols_ ? " " : "");
    }
    return os.str();
}

namespace {

Int iabs(const Int& x) { return x < 0 ? Int(-x) : x; }

struct SnfWork {
    IntMatrix a, u, v;

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
        for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u(i, c), u(j, c));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
        for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v(r, i), v(r, j));
    }
    // row i -= q * row j
    void row_sub(std::size_t i, std::size_t j, const Int& q) {
        if (q == 0) return;
        for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) -= q * a(j, c);
        for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) -= q * u(j, c);
    }
    void col_sub(std::size_t i, std::size_t j, const Int& q) {
        if (q == 0) return;
        for (std::size_t r = 0; r < a.rows(); ++r) a(r, i) -= q * a(r, j);
        for (std::size_t r = 0; r < v.rows(); ++r) v(r, i) -= q * v(r, j);
    }
    void negate_row(std::size_t i) {
        for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) = -a(i, c);
        for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) = -u(i, c);
    }
};

}  // namespace

namespace {

// pivot loop on the trailing submatrix starting at `from`; returns the index
// one past the last pivot
std::size_t diagonalize(SnfWork& w, std::size_t from) {
    const std::size_t rows = w.a.rows(), cols = w.a.cols();
    const std::size_t n = std::min(rows, cols);
    std::size_t t = from;
    while (t < n) {
        std::size_t pi = 0, pj = 0;
        bool found = false;
        Int best;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                const Int& x = w.a(i, j);
                if (x == 0) continue;
                Int ax = x < 0 ? Int(-x) : x;
                if (!found || ax < best) {
                    best = ax;
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        if (!found) break;
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (w.a(i, t) == 0) continue;
                Int q = w.a(i, t) / w.a(t, t);
                w.row_sub(i, t, q);
                if (w.a(i, t) != 0) {
                    w.swap_rows(t, i);  // strictly smaller remainder becomes pivot
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (w.a(t, j) == 0) continue;
                Int q = w.a(t, j) / w.a(t, t);
                w.col_sub(j, t, q);
                if (w.a(t, j) != 0) {
                    w.swap_cols(t, j);
                    clean = false;
                }
            }
        }
        if (w.a(t, t) < 0) w.negate_row(t);
        ++t;
    }
    return t;
}

}  // namespace

SNF smith_normal_form(const IntMatrix& m) {
    SnfWork w{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
    std::size_t t = diagonalize(w, 0);
    // enforce the divisibility chain: fold a violating entry into the earlier
    // column and rediagonalize the trailing block (lexicographic descent)
    while (true) {
        std::size_t bad = t;
        for (std::size_t i = 0; i + 1 < t; ++i)
            if (w.a(i + 1, i + 1) % w.a(i, i) != 0) {
                bad = i;
                break;
            }
        if (bad == t) break;
        for (std::size_t r = 0; r < w.a.rows(); ++r) w.a(r, bad) += w.a(r, bad + 1);
        for (std::size_t r = 0; r < w.v.rows(); ++r) w.v(r, bad) += w.v(r, bad + 1);
        diagonalize(w, bad);
    }
    SNF out;
    out.rank = t;
    out.d = w.a;
    out.u = w.u;
    out.v = w.v;
    return out;
}

Int det_abs(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: not square");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(p, c));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return iabs(a(n - 1, n - 1));
}

FGAbGroup normalize_group(std::size_t free_rank, const std::vector<Int>& torsion) {
    // torsion entries may be arbitrary; 0 contributes a free factor, 1 nothing.
    std::vector<Int> t;
    std::size_t extra_free = 0;
    for (const auto& d : torsion) {
        Int a = d < 0 ? Int(-d) : d;
        if (a == 0)
            ++extra_free;
        else if (a > 1)
            t.push_back(a);
    }
    // enforce the divisibility chain via SNF of the diagonal relation matrix
    if (!t.empty()) {
        SNF s = smith_normal_form(IntMatrix::diagonal(t));
        t.clear();
        for (std::size_t i = 0; i < s.rank; ++i)
            if (s.d(i, i) > 1) t.push_back(s.d(i, i));
    }
    FGAbGroup g;
    g.rank = free_rank + extra_free;
    g.torsion = t;
    return g;
}

std::string FGAbGroup::str() const {
    std::ostringstream os;
    bool first = true;
    if (rank > 0) {
        os << "Z";
        if (rank > 1) os << "^" << rank;
        first = false;
    }
    for (const auto& d : torsion) {
        os << (first ? "" : " + ") << "Z/" << d;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

std::vector<Int> FGAbGroup::reduce(std::vector<Int> x) const {
    for (std::size_t i = rank; i < ngens() && i < x.size(); ++i) {
        const Int& d = torsion[i - rank];
        x[i] %= d;
        if (x[i] < 0) x[i] += d;
    }
    return x;
}

std::vector<Int> AbHom::apply(const std::vector<Int>& x) const {
    if (x.size() != source.ngens()) throw std::invalid_argument("AbHom: bad vector length");
    std::vector<Int> y(target.ngens(), 0);
    for (std::size_t i = 0; i < target.ngens(); ++i)
        for (std::size_t j = 0; j < source.ngens(); ++j)
            if (matrix(i, j) != 0 && x[j] != 0) y[i] += matrix(i, j) * x[j];
    return target.reduce(y);
}

std::vector<std::string> AbHom::validate() const {
    std::vector<std::string> bad;
    if (matrix.rows() != target.ngens() || matrix.cols() != source.ngens())
        bad.push_back("AbHom: matrix shape does not match generator counts");
    else {
        // d * (image of a generator of order d) must vanish in the target
        for (std::size_t j = source.rank; j < source.ngens(); ++j) {
            const Int d = source.gen_order(j);
            for (std::size_t i = 0; i < target.ngens(); ++i) {
                Int v = matrix(i, j) * d;
                const Int o = target.gen_order(i);
                if (o == 0) {
                    if (v != 0) bad.push_back("AbHom: torsion generator maps to infinite order");
                } else if (v % o != 0)
                    bad.push_back("AbHom: entry not well defined modulo invariant factors");
            }
        }
    }
    return bad;
}

AbHom AbHom::zero(const FGAbGroup& src, const FGAbGroup& tgt) {
    return AbHom{src, tgt, IntMatrix(tgt.ngens(), src.ngens())};
}

AbHom AbHom::identity(const FGAbGroup& g) {
    return AbHom{g, g, IntMatrix::identity(g.ngens())};
}

AbHom AbHom::compose_after(const AbHom& first) const {
    return AbHom{first.source, target, matrix * first.matrix};
}

FGAbGroup homology(const IntMatrix& out_map, const IntMatrix& in_map) {
    if (out_map.cols() != in_map.rows())
        throw std::invalid_argument("homology: shape mismatch");
    if (!(out_map * in_map).is_zero()) throw CompositionNonzero("homology: out*in != 0");

    const std::size_t n = out_map.cols();
    SNF so = smith_normal_form(out_map);
    const std::size_t k = n - so.rank;  // kernel rank
    IntMatrix kb(n, k);                 // kernel basis: trailing columns of V
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) kb(i, j) = so.v(i, so.rank + j);

    // express the image inside the kernel: kb * Y = in_map
    IntMatrix y(k, in_map.cols());
    for (std::size_t c = 0; c < in_map.cols(); ++c) {
        std::vector<Int> col(n), sol;
        for (std::size_t i = 0; i < n; ++i) col[i] = in_map(i, c);
        if (!solve(kb, col, sol)) throw std::runtime_error("homology: image not inside kernel");
        for (std::size_t i = 0; i < k; ++i) y(i, c) = sol[i];
    }
    SNF sy = smith_normal_form(y);
    std::vector<Int> tors;
    for (std::size_t i = 0; i < sy.rank; ++i) tors.push_back(sy.d(i, i));
    return normalize_group(k - sy.rank, tors);
}

bool solve(const SNF& s, std::size_t rows, std::size_t cols, const std::vector<Int>& x,
           std::vector<Int>& y) {
    std::vector<Int> ux(rows, 0);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < rows; ++j)
            if (s.u(i, j) != 0 && x[j] != 0) ux[i] += s.u(i, j) * x[j];
    std::vector<Int> z(cols, 0);
    for (std::size_t i = 0; i < rows; ++i) {
        Int d = (i < std::min(rows, cols)) ? s.d(i, i) : Int(0);
        if (d == 0) {
            if (ux[i] != 0) return false;
        } else {
            if (ux[i] % d != 0) return false;
            z[i] = ux[i] / d;
        }
    }
    y.assign(cols, 0);
    for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (s.v(i, j) != 0 && z[j] != 0) y[i] += s.v(i, j) * z[j];
    return true;
}

bool solve(const IntMatrix& m, const std::vector<Int>& x, std::vector<Int>& y) {
    SNF s = smith_normal_form(m);
    std::vector<Int> ux(m.rows(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.rows(); ++j)
            if (s.u(i, j) != 0 && x[j] != 0) ux[i] += s.u(i, j) * x[j];
    std::vector<Int> z(m.cols(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int d = (i < std::min(m.rows(), m.cols())) ? s.d(i, i) : Int(0);
        if (d == 0) {
            if (ux[i] != 0) return false;
        } else {
            if (ux[i] % d != 0) return false;
            z[i] = ux[i] / d;
        }
    }
    y.assign(m.cols(), 0);
    for (std::size_t i = 0; i < m.cols(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (s.v(i, j) != 0 && z[j] != 0) y[i] += s.v(i, j) * z[j];
    return true;
}

namespace {

// relation columns d_i * e_i for the torsion generators of g
IntMatrix relation_matrix(const FGAbGroup& g) {
    IntMatrix r(g.ngens(), g.torsion.size());
    for (std::size_t j = 0; j < g.torsion.size(); ++j) r(g.rank + j, j) = g.torsion[j];
    return r;
}

}  // namespace

PresentedHomology presented_cohomology(const AbHom& a, const AbHom& b) {
    if (!(a.target == b.source)) throw std::invalid_argument("presented_cohomology: middle mismatch");
    const FGAbGroup& c = b.source;
    const std::size_t g = c.ngens();

    // cocycles: x with b(x) = 0 in the presented target
    IntMatrix stacked = b.matrix.hcat(relation_matrix(b.target));
    SNF sk = smith_normal_form(stacked);
    std::size_t kn = stacked.cols() - sk.rank;
    IntMatrix zb(g, kn);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < kn; ++j) zb(i, j) = sk.v(i, sk.rank + j);

    // boundaries: image of a plus the relations of c
    IntMatrix bnd = a.matrix.hcat(relation_matrix(c));
    IntMatrix y(kn, bnd.cols());
    for (std::size_t col = 0; col < bnd.cols(); ++col) {
        std::vector<Int> v(g), sol;
        for (std::size_t i = 0; i < g; ++i) v[i] = bnd(i, col);
        if (!solve(zb, v, sol))
            throw CompositionNonzero("presented_cohomology: boundaries not inside cocycles");
        for (std::size_t i = 0; i < kn; ++i) y(i, col) = sol[i];
    }
    SNF sy = smith_normal_form(y);

    PresentedHomology out;
    out.ker_basis = zb;
    out.lift_u = sy.u;
    out.nrel = sy.rank;
    out.diag.assign(kn, Int(0));
    for (std::size_t i = 0; i < sy.rank; ++i) out.diag[i] = sy.d(i, i);

    std::size_t free_ct = kn - sy.rank;
    std::vector<Int> tors;
    for (std::size_t i = 0; i < sy.rank; ++i)
        if (sy.d(i, i) > 1) tors.push_back(sy.d(i, i));
    out.group.rank = free_ct;
    out.group.torsion = tors;

    // representative basis: columns of zb * u^{-1}; u^{-1} obtained by solving
    IntMatrix uinv(kn, kn);
    for (std::size_t j = 0; j < kn; ++j) {
        std::vector<Int> e(kn, 0), sol;
        e[j] = 1;
        if (!solve(sy.u, e, sol)) throw std::runtime_error("presented_cohomology: u not invertible");
        for (std::size_t i = 0; i < kn; ++i) uinv(i, j) = sol[i];
    }
    IntMatrix reps = zb * uinv;
    // generator order: free positions (diag 0) first, then torsion >= 2
    out.rep_basis = IntMatrix(g, out.group.ngens());
    std::size_t idx = 0;
    for (std::size_t i = 0; i < kn; ++i)
        if (out.diag[i] == 0) {
            for (std::size_t r = 0; r < g; ++r) out.rep_basis(r, idx) = reps(r, i);
            ++idx;
        }
    for (std::size_t i = 0; i < kn; ++i)
        if (out.diag[i] > 1) {
            for (std::size_t r = 0; r < g; ++r) out.rep_basis(r, idx) = reps(r, i);
            ++idx;
        }
    return out;
}

std::vector<Int> class_of(const PresentedHomology& h, const FGAbGroup& c, const AbHom& b,
                          const std::vector<Int>& x) {
    auto bx = b.apply(x);
    for (const auto& v : bx)
        if (v != 0) throw std::invalid_argument("class_of: not a cocycle");
    std::vector<Int> w;
    if (!solve(h.ker_basis, x, w)) throw std::runtime_error("class_of: cocycle outside kernel lattice");
    const std::size_t kn = h.diag.size();
    std::vector<Int> uw(kn, 0);
    for (std::size_t i = 0; i < kn; ++i)
        for (std::size_t j = 0; j < kn; ++j)
            if (h.lift_u(i, j) != 0 && w[j] != 0) uw[i] += h.lift_u(i, j) * w[j];
    std::vector<Int> coords;
    for (std::size_t i = 0; i < kn; ++i)
        if (h.diag[i] == 0) coords.push_back(uw[i]);
    for (std::size_t i = 0; i < kn; ++i)
        if (h.diag[i] > 1) {
            Int v = uw[i] % h.diag[i];
            if (v < 0) v += h.diag[i];
            coords.push_back(v);
        }
    (void)c;
    return coords;
}

bool is_coboundary(const PresentedHomology& h, const FGAbGroup& c, const AbHom& b,
                   const std::vector<Int>& x) {
    auto cls = class_of(h, c, b, x);
    for (const auto& v : cls)
        if (v != 0) return false;
    return true;
}

AbelianTable abelian_from_table(const std::vector<std::vector<int>>& mul) {
    const std::size_t n = mul.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (mul[i][j] != mul[j][i]) throw NonAbelian("abelian_from_table: not commutative");
    // present the group on all elements: relations x_i + x_j - x_{ij} = 0
    IntMatrix r(n, n * n);
    std::size_t col = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j, ++col) {
            r(i, col) += 1;
            r(j, col) += 1;
            r((std::size_t)mul[i][j], col) -= 1;
        }
    SNF s = smith_normal_form(r);
    std::vector<int> keep;  // positions with invariant factor >= 2
    std::vector<Int> tors;
    for (std::size_t i = 0; i < s.rank; ++i)
        if (s.d(i, i) > 1) {
            keep.push_back((int)i);
            tors.push_back(s.d(i, i));
        }
    AbelianTable out;
    out.group.rank = 0;  // finite by construction
    out.group.torsion = tors;
    out.coords.assign(n, std::vector<Int>(keep.size(), 0));
    for (std::size_t e = 0; e < n; ++e) {
        for (std::size_t k = 0; k < keep.size(); ++k)
            out.coords[e][k] = s.u((std::size_t)keep[k], e);
        out.coords[e] = out.group.reduce(out.coords[e]);
    }
    // sanity: the unit must land at zero coordinates
    // (index 0 need not be the unit; locate it)
    return out;
}

int element_with_coords(const AbelianTable& t, const std::vector<Int>& c) {
    auto rc = t.group.reduce(c);
    for (std::size_t e = 0; e < t.coords.size(); ++e)
        if (t.coords[e] == rc) return (int)e;
    return -1;
}

}  // namespace tcat::ablin
