// Test-only oracles, independent of the library code paths they check.
#pragma once

#include <cstdint>
#include <functional>
#include <cstdlib>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "tcat/ablin.hpp"

namespace oracle {

// Invariant factors via determinantal divisors: the k-th divisor D_k is the
// gcd of all k x k minors, and the k-th invariant factor is D_k / D_{k-1}.
// Entirely independent of any elimination strategy. Sizes must stay small
// (minors computed by Laplace expansion in __int128).
inline __int128 minor_det(const std::vector<std::vector<long long>>& a,
                          const std::vector<std::size_t>& ri, const std::vector<std::size_t>& ci) {
    std::size_t k = ri.size();
    if (k == 1) return a[ri[0]][ci[0]];
    __int128 acc = 0;
    int sgn = 1;
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<std::size_t> ri2(ri.begin() + 1, ri.end()), ci2;
        for (std::size_t c = 0; c < k; ++c)
            if (c != j) ci2.push_back(ci[c]);
        acc += sgn * (__int128)a[ri[0]][ci[j]] * minor_det(a, ri2, ci2);
        sgn = -sgn;
    }
    return acc;
}

inline void k_subsets(std::size_t n, std::size_t k,
                      const std::function<void(const std::vector<std::size_t>&)>& fn,
                      std::vector<std::size_t>& cur, std::size_t from) {
    if (cur.size() == k) {
        fn(cur);
        return;
    }
    for (std::size_t i = from; i + (k - cur.size()) <= n; ++i) {
        cur.push_back(i);
        k_subsets(n, k, fn, cur, i + 1);
        cur.pop_back();
    }
}

inline std::vector<long long> naive_snf_diag(const std::vector<std::vector<long long>>& a) {
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::size_t n = std::min(rows, cols);
    auto g128 = [](__int128 x, __int128 y) {
        if (x < 0) x = -x;
        if (y < 0) y = -y;
        while (y) {
            __int128 t = x % y;
            x = y;
            y = t;
        }
        return x;
    };
    std::vector<__int128> dd;  // determinantal divisors
    for (std::size_t k = 1; k <= n; ++k) {
        __int128 g = 0;
        std::vector<std::size_t> rcur, ccur;
        k_subsets(rows, k, [&](const std::vector<std::size_t>& ri) {
            std::vector<std::size_t> c2;
            k_subsets(cols, k, [&](const std::vector<std::size_t>& ci) {
                g = g128(g, minor_det(a, ri, ci));
            }, c2, 0);
        }, rcur, 0);
        if (g == 0) break;
        dd.push_back(g);
    }
    std::vector<long long> out;
    __int128 prev = 1;
    for (auto d : dd) {
        out.push_back((long long)(d / prev));
        prev = d;
    }
    return out;
}

// Bar-resolution group cohomology H^n(G; M) for a finite group given by its
// multiplication table. M is a f.g. abelian group with one action matrix per
// group element. Builds its own cochain complex; only the generic linear
// algebra kernel is shared with the library.
struct BarGroup {
    std::size_t order;
    std::vector<std::vector<int>> mul;  // mul[g][h] = g*h
    int unit = 0;
};

inline BarGroup cyclic_group(std::size_t n) {
    BarGroup g;
    g.order = n;
    g.mul.assign(n, std::vector<int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g.mul[i][j] = (int)((i + j) % n);
    return g;
}

inline tcat::ablin::FGAbGroup bar_cohomology(const BarGroup& G, const tcat::ablin::FGAbGroup& M,
                                             const std::vector<tcat::ablin::IntMatrix>& action,
                                             std::size_t deg) {
    using namespace tcat::ablin;
    const std::size_t m = M.ngens();

    auto tuples = [&](std::size_t n) {
        std::vector<std::vector<int>> out;
        if (n == 0) {
            out.push_back({});
            return out;
        }
        std::vector<int> cur(n, 0);
        while (true) {
            out.push_back(cur);
            std::size_t i = 0;
            while (i < n && ++cur[i] == (int)G.order) cur[i++] = 0;
            if (i == n) break;
        }
        return out;
    };
    auto index_of = [&](const std::vector<int>& t) {
        // matches the odometer order of tuples(): first coordinate fastest
        std::size_t idx = 0;
        for (std::size_t i = t.size(); i-- > 0;) idx = idx * G.order + (std::size_t)t[i];
        return idx;
    };
    // C^n = one copy of M per n-tuple; free generators of all blocks first
    auto blocks_group = [&](std::size_t count) {
        FGAbGroup g;
        g.rank = M.rank * count;
        for (std::size_t c = 0; c < count; ++c)
            for (const auto& d : M.torsion) g.torsion.push_back(d);
        return g;
    };
    auto coord = [&](std::size_t count, std::size_t c, std::size_t i) {
        if (i < M.rank) return c * M.rank + i;
        return M.rank * count + c * M.torsion.size() + (i - M.rank);
    };

    auto delta = [&](std::size_t n) {  // C^n -> C^{n+1}
        auto dom_t = tuples(n), cod_t = tuples(n + 1);
        FGAbGroup dom = blocks_group(dom_t.size()), cod = blocks_group(cod_t.size());
        IntMatrix mat(cod.ngens(), dom.ngens());
        for (std::size_t ct = 0; ct < cod_t.size(); ++ct) {
            const auto& g = cod_t[ct];
            {  // g_1 . c(g_2, ..., g_{n+1})
                std::vector<int> t(g.begin() + 1, g.end());
                std::size_t dt = index_of(t);
                const IntMatrix& A = action[(std::size_t)g[0]];
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t j = 0; j < m; ++j)
                        if (A(i, j) != 0)
                            mat(coord(cod_t.size(), ct, i), coord(dom_t.size(), dt, j)) += A(i, j);
            }
            for (std::size_t i = 1; i <= n; ++i) {  // inner multiplications
                std::vector<int> t;
                for (std::size_t k = 0; k < n + 1; ++k) {
                    if (k == i) continue;
                    t.push_back(k == i - 1 ? G.mul[(std::size_t)g[i - 1]][(std::size_t)g[i]] : g[k]);
                }
                std::size_t dt = index_of(t);
                int sgn = (i % 2 == 0) ? 1 : -1;
                for (std::size_t j = 0; j < m; ++j)
                    mat(coord(cod_t.size(), ct, j), coord(dom_t.size(), dt, j)) += sgn;
            }
            {  // last face
                std::vector<int> t(g.begin(), g.end() - 1);
                std::size_t dt = index_of(t);
                int sgn = (n % 2 == 0) ? -1 : 1;  // (-1)^{n+1}
                for (std::size_t j = 0; j < m; ++j)
                    mat(coord(cod_t.size(), ct, j), coord(dom_t.size(), dt, j)) += sgn;
            }
        }
        return AbHom{dom, cod, mat};
    };

    AbHom below = deg == 0 ? AbHom::zero(FGAbGroup{}, blocks_group(1)) : delta(deg - 1);
    AbHom above = delta(deg);
    return presented_cohomology(below, above).group;
}

}  // namespace oracle
