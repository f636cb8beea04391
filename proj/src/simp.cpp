#include "tcat/simp.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace tcat::simp {

namespace {

std::string lvl_err(const char* what, int n, int i, int j) {
    std::ostringstream os;
    os << what << " violated at level " << n << " (i=" << i << ", j=" << j << ")";
    return os.str();
}

}  // namespace

void TruncSSet::init_levels(int top) {
    top_dim = top;
    levels.assign((std::size_t)top + 1, IdIndex{});
    faces.assign((std::size_t)top + 1, {});
    degens.assign((std::size_t)top + 1, {});
    for (int n = 1; n <= top; ++n) faces[(std::size_t)n].assign((std::size_t)n + 1, {});
    for (int n = 0; n < top; ++n) degens[(std::size_t)n].assign((std::size_t)n + 1, {});
}

bool TruncSSet::is_degenerate(int n, int x) const {
    for (int j = 0; j < n; ++j)
        if (degen(n - 1, j, face(n, j, x)) == x) return true;
    return false;
}

std::vector<std::string> TruncSSet::validate() const {
    std::vector<std::string> bad;
    for (int n = 1; n <= top_dim; ++n)
        for (int i = 0; i <= n; ++i)
            if (faces[(std::size_t)n][(std::size_t)i].size() != size(n))
                bad.push_back(lvl_err("face map not total", n, i, -1));
    for (int n = 0; n < top_dim; ++n)
        for (int j = 0; j <= n; ++j)
            if (degens[(std::size_t)n][(std::size_t)j].size() != size(n))
                bad.push_back(lvl_err("degeneracy map not total", n, j, -1));
    if (!bad.empty()) return bad;

    for (int n = 2; n <= top_dim; ++n)
        for (int j = 1; j <= n; ++j)
            for (int i = 0; i < j; ++i)
                for (std::size_t x = 0; x < size(n); ++x)
                    if (face(n - 1, i, face(n, j, (int)x)) !=
                        face(n - 1, j - 1, face(n, i, (int)x))) {
                        bad.push_back(lvl_err("d_i d_j = d_{j-1} d_i", n, i, j));
                        i = j;  // one report per (n,j)
                        break;
                    }
    for (int n = 0; n + 2 <= top_dim; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= j; ++i)
                for (std::size_t x = 0; x < size(n); ++x)
                    if (degen(n + 1, i, degen(n, j, (int)x)) !=
                        degen(n + 1, j + 1, degen(n, i, (int)x))) {
                        bad.push_back(lvl_err("s_i s_j = s_{j+1} s_i", n, i, j));
                        i = j + 1;
                        break;
                    }
    for (int n = 1; n <= top_dim - 1; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n + 1; ++i)
                for (std::size_t x = 0; x < size(n); ++x) {
                    int lhs = face(n + 1, i, degen(n, j, (int)x));
                    int rhs;
                    if (i < j)
                        rhs = degen(n - 1, j - 1, face(n, i, (int)x));
                    else if (i == j || i == j + 1)
                        rhs = (int)x;
                    else
                        rhs = degen(n - 1, j, face(n, i - 1, (int)x));
                    if (lhs != rhs) {
                        bad.push_back(lvl_err("d_i s_j identity", n, i, j));
                        break;
                    }
                }
    // level-0 degeneracy faces (n = 0 case of the mixed identity)
    if (top_dim >= 1)
        for (std::size_t x = 0; x < size(0); ++x)
            if (face(1, 0, degen(0, 0, (int)x)) != (int)x ||
                face(1, 1, degen(0, 0, (int)x)) != (int)x)
                bad.push_back(lvl_err("d_i s_0 identity", 0, -1, 0));
    return bad;
}

TruncSSet TruncSSet::truncate(int new_top) const {
    if (new_top > top_dim) throw std::invalid_argument("truncate: cannot extend");
    TruncSSet out;
    out.init_levels(new_top);
    for (int n = 0; n <= new_top; ++n) {
        out.levels[(std::size_t)n] = levels[(std::size_t)n];
        if (n >= 1) out.faces[(std::size_t)n] = faces[(std::size_t)n];
        if (n < new_top) out.degens[(std::size_t)n] = degens[(std::size_t)n];
    }
    return out;
}

std::vector<std::string> validate(const TruncSSet& x) { return x.validate(); }

std::vector<std::string> SSetMap::validate() const {
    std::vector<std::string> bad;
    if (!source || !target) return {"map missing endpoints"};
    int top = (int)level_map.size() - 1;
    if (top < 0) return {"map has no levels"};
    for (int n = 0; n <= top; ++n)
        if (level_map[(std::size_t)n].size() != source->size(n))
            return {"map not total at level " + std::to_string(n)};
    for (int n = 1; n <= top; ++n)
        for (int i = 0; i <= n; ++i)
            for (std::size_t s = 0; s < source->size(n); ++s)
                if (target->face(n, i, level_map[(std::size_t)n][s]) !=
                    level_map[(std::size_t)(n - 1)][(std::size_t)source->face(n, i, (int)s)]) {
                    bad.push_back("map does not commute with face " + std::to_string(i) +
                                  " at level " + std::to_string(n));
                    s = source->size(n) - 1;
                }
    for (int n = 0; n < top; ++n)
        for (int j = 0; j <= n; ++j)
            for (std::size_t s = 0; s < source->size(n); ++s)
                if (target->degen(n, j, level_map[(std::size_t)n][s]) !=
                    level_map[(std::size_t)(n + 1)][(std::size_t)source->degen(n, j, (int)s)]) {
                    bad.push_back("map does not commute with degeneracy " + std::to_string(j) +
                                  " at level " + std::to_string(n));
                    s = source->size(n) - 1;
                }
    return bad;
}

// ---------------------------------------------------------------------------
// coskeleton

TruncSSet coskeleton(const TruncSSet& x, int n, int new_top) {
    TruncSSet out;
    out.init_levels(new_top);
    int keep = std::min(n, std::min(x.top_dim, new_top));
    for (int m = 0; m <= keep; ++m) {
        out.levels[(std::size_t)m] = x.levels[(std::size_t)m];
        if (m >= 1) out.faces[(std::size_t)m] = x.faces[(std::size_t)m];
        if (m < keep) out.degens[(std::size_t)m] = x.degens[(std::size_t)m];
    }
    for (int m = keep + 1; m <= new_top; ++m) {
        const std::size_t below = out.size(m - 1);
        // candidate lists for position j, keyed by the forced first j faces
        std::vector<std::map<std::vector<int>, std::vector<int>>> by_prefix((std::size_t)m + 1);
        for (int j = 1; j <= m; ++j)
            for (std::size_t y = 0; y < below; ++y) {
                std::vector<int> pre((std::size_t)j);
                for (int i = 0; i < j; ++i)
                    pre[(std::size_t)i] = (m - 1 >= 1) ? out.face(m - 1, i, (int)y) : 0;
                by_prefix[(std::size_t)j][pre].push_back((int)y);
            }
        std::vector<std::vector<int>> tuples;
        std::vector<int> cur((std::size_t)m + 1);
        std::vector<const std::vector<int>*> cand((std::size_t)m + 1, nullptr);
        std::vector<std::size_t> pos((std::size_t)m + 1, 0);
        static const std::vector<int> empty;
        std::vector<int> all_first(below);
        for (std::size_t y = 0; y < below; ++y) all_first[y] = (int)y;
        cand[0] = &all_first;
        int depth = 0;
        while (depth >= 0) {
            if (pos[(std::size_t)depth] >= cand[(std::size_t)depth]->size()) {
                --depth;
                if (depth >= 0) ++pos[(std::size_t)depth];
                continue;
            }
            cur[(std::size_t)depth] = (*cand[(std::size_t)depth])[pos[(std::size_t)depth]];
            if (depth == m) {
                tuples.push_back(cur);
                ++pos[(std::size_t)depth];
                continue;
            }
            int j = depth + 1;  // next position; its faces 0..j-1 are d_{j-1} of y_0..y_{j-1}
            std::vector<int> need((std::size_t)j);
            for (int i = 0; i < j; ++i)
                need[(std::size_t)i] = (m - 1 >= 1) ? out.face(m - 1, j - 1, cur[(std::size_t)i]) : 0;
            auto it = by_prefix[(std::size_t)j].find(need);
            cand[(std::size_t)j] = (it == by_prefix[(std::size_t)j].end()) ? &empty : &it->second;
            pos[(std::size_t)j] = 0;
            ++depth;
        }
        std::sort(tuples.begin(), tuples.end(), [&](const auto& a, const auto& b) {
            for (std::size_t i = 0; i <= (std::size_t)m; ++i) {
                const std::string& sa = out.levels[(std::size_t)(m - 1)].name(a[i]);
                const std::string& sb = out.levels[(std::size_t)(m - 1)].name(b[i]);
                if (sa != sb) return sa < sb;
            }
            return false;
        });

        std::map<std::vector<int>, int> tuple_index;
        for (std::size_t t = 0; t < tuples.size(); ++t) {
            int idx = out.levels[(std::size_t)m].add("k" + std::to_string(m) + "_" + std::to_string(t));
            tuple_index[tuples[t]] = idx;
        }
        for (int i = 0; i <= m; ++i) {
            auto& fi = out.faces[(std::size_t)m][(std::size_t)i];
            fi.resize(tuples.size());
            for (std::size_t t = 0; t < tuples.size(); ++t) fi[t] = tuples[t][(std::size_t)i];
        }
        for (int j = 0; j <= m - 1; ++j) {
            auto& sj = out.degens[(std::size_t)(m - 1)][(std::size_t)j];
            sj.resize(below);
            for (std::size_t y = 0; y < below; ++y) {
                std::vector<int> tup((std::size_t)m + 1);
                for (int i = 0; i <= m; ++i) {
                    if (i == j || i == j + 1)
                        tup[(std::size_t)i] = (int)y;
                    else if (i < j)
                        tup[(std::size_t)i] = out.degen(m - 2, j - 1, out.face(m - 1, i, (int)y));
                    else
                        tup[(std::size_t)i] = out.degen(m - 2, j, out.face(m - 1, i - 1, (int)y));
                }
                auto it = tuple_index.find(tup);
                if (it == tuple_index.end())
                    throw std::runtime_error("coskeleton: degeneracy image tuple missing");
                sj[y] = it->second;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// horns

std::vector<int> horn_fillers(const TruncSSet& x, int n, int k, const std::vector<int>& horn) {
    if (n < 1 || n > x.top_dim || k < 0 || k > n)
        throw std::invalid_argument("horn_fillers: bad (n, k)");
    if ((int)horn.size() != n + 1) throw std::invalid_argument("horn_fillers: need n+1 entries");
    if (n >= 2)
        for (int j = 1; j <= n; ++j)
            for (int i = 0; i < j; ++i) {
                if (i == k || j == k) continue;
                if (x.face(n - 1, i, horn[(std::size_t)j]) !=
                    x.face(n - 1, j - 1, horn[(std::size_t)i]))
                    throw IncompatibleHorn("horn faces do not match");
            }
    std::vector<int> out;
    for (std::size_t c = 0; c < x.size(n); ++c) {
        bool ok = true;
        for (int i = 0; i <= n && ok; ++i)
            if (i != k && x.face(n, i, (int)c) != horn[(std::size_t)i]) ok = false;
        if (ok) out.push_back((int)c);
    }
    std::sort(out.begin(), out.end(), [&](int a, int b) {
        return x.levels[(std::size_t)n].name(a) < x.levels[(std::size_t)n].name(b);
    });
    return out;
}

namespace {

std::unordered_map<std::int64_t, std::vector<int>> pair_index(const TruncSSet& x, int f0, int f1) {
    std::unordered_map<std::int64_t, std::vector<int>> idx;
    for (std::size_t c = 0; c < x.size(2); ++c)
        idx[pair_key(x.face(2, f0, (int)c), x.face(2, f1, (int)c))].push_back((int)c);
    return idx;
}

}  // namespace

bool is_csk2_fibrant(const TruncSSet& x) {
    if (x.top_dim < 1) return true;
    {
        std::vector<char> has_out(x.size(0), 0), has_in(x.size(0), 0);
        for (std::size_t e = 0; e < x.size(1); ++e) {
            has_out[(std::size_t)x.face(1, 1, (int)e)] = 1;
            has_in[(std::size_t)x.face(1, 0, (int)e)] = 1;
        }
        for (std::size_t v = 0; v < x.size(0); ++v)
            if (!has_out[v] || !has_in[v]) return false;
    }
    if (x.top_dim < 2) return true;

    auto idx01 = pair_index(x, 0, 1), idx02 = pair_index(x, 0, 2), idx12 = pair_index(x, 1, 2);
    std::unordered_map<int, std::vector<int>> by_d0, by_d1;
    for (std::size_t e = 0; e < x.size(1); ++e) {
        by_d0[x.face(1, 0, (int)e)].push_back((int)e);
        by_d1[x.face(1, 1, (int)e)].push_back((int)e);
    }
    for (std::size_t b = 0; b < x.size(1); ++b) {
        for (int a : by_d1[x.face(1, 0, (int)b)])  // inner horn: d0 = a, d2 = b
            if (!idx02.count(pair_key(a, (int)b))) return false;
        for (int c : by_d1[x.face(1, 1, (int)b)])  // outer horn 0: d1 = c, d2 = b
            if (!idx12.count(pair_key(c, (int)b))) return false;
    }
    for (std::size_t a = 0; a < x.size(1); ++a)
        for (int c : by_d0[x.face(1, 0, (int)a)])  // outer horn 2: d0 = a, d1 = c
            if (!idx01.count(pair_key((int)a, c))) return false;
    return true;
}

bool is_csk2_fibration(const SSetMap& f) {
    const TruncSSet& up = *f.source;
    const TruncSSet& dn = *f.target;
    std::unordered_map<std::int64_t, std::vector<int>> up_by_src, up_by_tgt;
    for (std::size_t e = 0; e < up.size(1); ++e) {
        up_by_src[pair_key(up.face(1, 1, (int)e), f.level_map[1][e])].push_back((int)e);
        up_by_tgt[pair_key(up.face(1, 0, (int)e), f.level_map[1][e])].push_back((int)e);
    }
    std::unordered_map<int, std::vector<int>> dn_by_src, dn_by_tgt;
    for (std::size_t e = 0; e < dn.size(1); ++e) {
        dn_by_src[dn.face(1, 1, (int)e)].push_back((int)e);
        dn_by_tgt[dn.face(1, 0, (int)e)].push_back((int)e);
    }
    for (std::size_t v = 0; v < up.size(0); ++v) {
        int fv = f.level_map[0][v];
        for (int e : dn_by_src[fv])
            if (!up_by_src.count(pair_key((int)v, e))) return false;
        for (int e : dn_by_tgt[fv])
            if (!up_by_tgt.count(pair_key((int)v, e))) return false;
    }
    if (up.top_dim < 2 || dn.top_dim < 2) return true;

    auto up01 = pair_index(up, 0, 1), up02 = pair_index(up, 0, 2), up12 = pair_index(up, 1, 2);
    auto dn01 = pair_index(dn, 0, 1), dn02 = pair_index(dn, 0, 2), dn12 = pair_index(dn, 1, 2);
    std::unordered_map<int, std::vector<int>> by_d0, by_d1;
    for (std::size_t e = 0; e < up.size(1); ++e) {
        by_d0[up.face(1, 0, (int)e)].push_back((int)e);
        by_d1[up.face(1, 1, (int)e)].push_back((int)e);
    }
    auto lookup = [](const std::unordered_map<std::int64_t, std::vector<int>>& m,
                     std::int64_t k) -> const std::vector<int>* {
        auto it = m.find(k);
        return it == m.end() ? nullptr : &it->second;
    };
    auto covered = [&](const std::vector<int>* ups, const std::vector<int>* dns) {
        if (!dns) return true;
        for (int s : *dns) {
            bool hit = false;
            if (ups)
                for (int u : *ups)
                    if (f.level_map[2][(std::size_t)u] == s) {
                        hit = true;
                        break;
                    }
            if (!hit) return false;
        }
        return true;
    };
    for (std::size_t b = 0; b < up.size(1); ++b) {
        int fb = f.level_map[1][b];
        for (int a : by_d1[up.face(1, 0, (int)b)]) {
            int fa = f.level_map[1][(std::size_t)a];
            if (!covered(lookup(up02, pair_key(a, (int)b)), lookup(dn02, pair_key(fa, fb))))
                return false;
        }
        for (int c : by_d1[up.face(1, 1, (int)b)]) {
            int fc = f.level_map[1][(std::size_t)c];
            if (!covered(lookup(up12, pair_key(c, (int)b)), lookup(dn12, pair_key(fc, fb))))
                return false;
        }
    }
    for (std::size_t a = 0; a < up.size(1); ++a) {
        int fa = f.level_map[1][a];
        for (int c : by_d0[up.face(1, 0, (int)a)]) {
            int fc = f.level_map[1][(std::size_t)c];
            if (!covered(lookup(up01, pair_key((int)a, c)), lookup(dn01, pair_key(fa, fc))))
                return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// decalage / ordinal sum / diagonal / product

TruncSSet decalage(const TruncSSet& x) {
    if (x.top_dim < 1) throw std::invalid_argument("decalage: need top_dim >= 1");
    TruncSSet out;
    out.init_levels(x.top_dim - 1);
    for (int n = 0; n <= out.top_dim; ++n) {
        out.levels[(std::size_t)n] = x.levels[(std::size_t)(n + 1)];
        if (n >= 1)
            for (int i = 0; i <= n; ++i)
                out.faces[(std::size_t)n][(std::size_t)i] =
                    x.faces[(std::size_t)(n + 1)][(std::size_t)i];
        if (n < out.top_dim)
            for (int j = 0; j <= n; ++j)
                out.degens[(std::size_t)n][(std::size_t)j] =
                    x.degens[(std::size_t)(n + 1)][(std::size_t)j];
    }
    return out;
}

void TruncBiSSet::init_levels(int tp, int tq, bool tri) {
    top_p = tp;
    top_q = tq;
    triangular = tri;
    levels.assign((std::size_t)tp + 1, std::vector<IdIndex>((std::size_t)tq + 1));
    auto sz = [&](auto& v) {
        v.assign((std::size_t)tp + 1, {});
        for (int p = 0; p <= tp; ++p) v[(std::size_t)p].assign((std::size_t)tq + 1, {});
    };
    sz(h_faces);
    sz(v_faces);
    sz(h_degens);
    sz(v_degens);
}

TruncBiSSet ordinal_sum(const TruncSSet& x) {
    if (x.top_dim < 1) throw std::invalid_argument("ordinal_sum: need top_dim >= 1");
    TruncBiSSet w;
    int top = x.top_dim - 1;
    w.init_levels(top, top, true);
    // level (p,q) sits inside X_{p+q+1}; the vertical direction takes the
    // leading face/degeneracy indices, so the horizontal level p complex is
    // the (p+1)-fold last-face decalage of X
    for (int p = 0; p <= top; ++p)
        for (int q = 0; p + q <= top; ++q) {
            int n = p + q + 1;
            w.levels[(std::size_t)p][(std::size_t)q] = x.levels[(std::size_t)n];
            if (p >= 1) {
                auto& hv = w.h_faces[(std::size_t)p][(std::size_t)q];
                hv.assign((std::size_t)p + 1, {});
                for (int i = 0; i <= p; ++i)
                    hv[(std::size_t)i] = x.faces[(std::size_t)n][(std::size_t)(q + 1 + i)];
            }
            if (q >= 1) {
                auto& vv = w.v_faces[(std::size_t)p][(std::size_t)q];
                vv.assign((std::size_t)q + 1, {});
                for (int j = 0; j <= q; ++j)
                    vv[(std::size_t)j] = x.faces[(std::size_t)n][(std::size_t)j];
            }
            if (w.has_level(p + 1, q)) {
                auto& hd = w.h_degens[(std::size_t)p][(std::size_t)q];
                hd.assign((std::size_t)p + 1, {});
                for (int i = 0; i <= p; ++i)
                    hd[(std::size_t)i] = x.degens[(std::size_t)n][(std::size_t)(q + 1 + i)];
            }
            if (w.has_level(p, q + 1)) {
                auto& vd = w.v_degens[(std::size_t)p][(std::size_t)q];
                vd.assign((std::size_t)q + 1, {});
                for (int j = 0; j <= q; ++j)
                    vd[(std::size_t)j] = x.degens[(std::size_t)n][(std::size_t)j];
            }
        }
    return w;
}

TruncSSet TruncBiSSet::column_at(int p) const {
    int qmax = triangular ? top_p - p : top_q;
    TruncSSet out;
    out.init_levels(qmax);
    for (int q = 0; q <= qmax; ++q) {
        out.levels[(std::size_t)q] = levels[(std::size_t)p][(std::size_t)q];
        if (q >= 1) out.faces[(std::size_t)q] = v_faces[(std::size_t)p][(std::size_t)q];
        if (q < qmax) out.degens[(std::size_t)q] = v_degens[(std::size_t)p][(std::size_t)q];
    }
    return out;
}

TruncSSet TruncBiSSet::row_at(int q) const {
    int pmax = triangular ? top_p - q : top_p;
    TruncSSet out;
    out.init_levels(pmax);
    for (int p = 0; p <= pmax; ++p) {
        out.levels[(std::size_t)p] = levels[(std::size_t)p][(std::size_t)q];
        if (p >= 1) out.faces[(std::size_t)p] = h_faces[(std::size_t)p][(std::size_t)q];
        if (p < pmax) out.degens[(std::size_t)p] = h_degens[(std::size_t)p][(std::size_t)q];
    }
    return out;
}

std::vector<std::string> TruncBiSSet::validate() const {
    std::vector<std::string> bad;
    for (int p = 0; p <= top_p; ++p) {
        if (!has_level(p, 0)) continue;
        for (auto& e : column_at(p).validate())
            bad.push_back("column " + std::to_string(p) + ": " + e);
    }
    for (int q = 0; q <= top_q; ++q) {
        if (!has_level(0, q)) continue;
        for (auto& e : row_at(q).validate()) bad.push_back("row " + std::to_string(q) + ": " + e);
    }
    for (int p = 1; p <= top_p; ++p)
        for (int q = 1; q <= top_q; ++q) {
            if (!has_level(p, q)) continue;
            for (int i = 0; i <= p; ++i)
                for (int j = 0; j <= q; ++j)
                    for (std::size_t c = 0; c < size(p, q); ++c) {
                        int hv = v_faces[(std::size_t)(p - 1)][(std::size_t)q][(std::size_t)j]
                                        [(std::size_t)h_faces[(std::size_t)p][(std::size_t)q]
                                                             [(std::size_t)i][c]];
                        int vh = h_faces[(std::size_t)p][(std::size_t)(q - 1)][(std::size_t)i]
                                        [(std::size_t)v_faces[(std::size_t)p][(std::size_t)q]
                                                             [(std::size_t)j][c]];
                        if (hv != vh) {
                            bad.push_back("horizontal and vertical faces do not commute at (" +
                                          std::to_string(p) + "," + std::to_string(q) + ")");
                            return bad;
                        }
                    }
        }
    return bad;
}

std::vector<std::string> BiSSetMap::validate() const {
    std::vector<std::string> bad;
    if (!source || !target) return {"map missing endpoints"};
    for (int p = 0; p <= source->top_p; ++p)
        for (int q = 0; q <= source->top_q; ++q) {
            if (!source->has_level(p, q)) continue;
            if (level_map[(std::size_t)p][(std::size_t)q].size() != source->size(p, q))
                return {"bisimplicial map not total"};
        }
    for (int p = 0; p <= source->top_p; ++p)
        for (int q = 0; q <= source->top_q; ++q) {
            if (!source->has_level(p, q)) continue;
            for (std::size_t c = 0; c < source->size(p, q); ++c) {
                int img = level_map[(std::size_t)p][(std::size_t)q][c];
                for (int i = 0; p >= 1 && i <= p; ++i)
                    if (target->h_faces[(std::size_t)p][(std::size_t)q][(std::size_t)i]
                                       [(std::size_t)img] !=
                        level_map[(std::size_t)(p - 1)][(std::size_t)q]
                                 [(std::size_t)source->h_faces[(std::size_t)p][(std::size_t)q]
                                                              [(std::size_t)i][c]])
                        bad.push_back("bisimplicial map: horizontal face mismatch");
                for (int j = 0; q >= 1 && j <= q; ++j)
                    if (target->v_faces[(std::size_t)p][(std::size_t)q][(std::size_t)j]
                                       [(std::size_t)img] !=
                        level_map[(std::size_t)p][(std::size_t)(q - 1)]
                                 [(std::size_t)source->v_faces[(std::size_t)p][(std::size_t)q]
                                                              [(std::size_t)j][c]])
                        bad.push_back("bisimplicial map: vertical face mismatch");
                if (!bad.empty()) return bad;
            }
        }
    return bad;
}

TruncSSet diagonal(const TruncBiSSet& w) {
    if (!w.has_level(0, 0)) throw std::invalid_argument("diagonal: missing (0,0)");
    int nmax = 0;
    while (w.has_level(nmax + 1, nmax + 1)) ++nmax;
    TruncSSet out;
    out.init_levels(nmax);
    for (int n = 0; n <= nmax; ++n)
        out.levels[(std::size_t)n] = w.levels[(std::size_t)n][(std::size_t)n];
    for (int n = 1; n <= nmax; ++n)
        for (int i = 0; i <= n; ++i) {
            auto& fi = out.faces[(std::size_t)n][(std::size_t)i];
            fi.resize(w.size(n, n));
            for (std::size_t c = 0; c < w.size(n, n); ++c) {
                int vstep = w.v_faces[(std::size_t)n][(std::size_t)n][(std::size_t)i][c];
                fi[c] = w.h_faces[(std::size_t)n][(std::size_t)(n - 1)][(std::size_t)i]
                                 [(std::size_t)vstep];
            }
        }
    for (int n = 0; n < nmax; ++n)
        for (int j = 0; j <= n; ++j) {
            auto& sj = out.degens[(std::size_t)n][(std::size_t)j];
            sj.resize(w.size(n, n));
            for (std::size_t c = 0; c < w.size(n, n); ++c) {
                int vstep = w.v_degens[(std::size_t)n][(std::size_t)n][(std::size_t)j][c];
                sj[c] = w.h_degens[(std::size_t)n][(std::size_t)(n + 1)][(std::size_t)j]
                                  [(std::size_t)vstep];
            }
        }
    return out;
}

TruncSSet product(const TruncSSet& x, const TruncSSet& y) {
    int top = std::min(x.top_dim, y.top_dim);
    TruncSSet out;
    out.init_levels(top);
    for (int n = 0; n <= top; ++n)
        for (std::size_t a = 0; a < x.size(n); ++a)
            for (std::size_t b = 0; b < y.size(n); ++b)
                out.levels[(std::size_t)n].add("(" + x.levels[(std::size_t)n].name((int)a) + "|" +
                                               y.levels[(std::size_t)n].name((int)b) + ")");
    for (int n = 1; n <= top; ++n)
        for (int i = 0; i <= n; ++i) {
            auto& fi = out.faces[(std::size_t)n][(std::size_t)i];
            fi.resize(x.size(n) * y.size(n));
            for (std::size_t a = 0; a < x.size(n); ++a)
                for (std::size_t b = 0; b < y.size(n); ++b)
                    fi[a * y.size(n) + b] = (int)((std::size_t)x.face(n, i, (int)a) * y.size(n - 1) +
                                                  (std::size_t)y.face(n, i, (int)b));
        }
    for (int n = 0; n < top; ++n)
        for (int j = 0; j <= n; ++j) {
            auto& sj = out.degens[(std::size_t)n][(std::size_t)j];
            sj.resize(x.size(n) * y.size(n));
            for (std::size_t a = 0; a < x.size(n); ++a)
                for (std::size_t b = 0; b < y.size(n); ++b)
                    sj[a * y.size(n) + b] =
                        (int)((std::size_t)x.degen(n, j, (int)a) * y.size(n + 1) +
                              (std::size_t)y.degen(n, j, (int)b));
        }
    return out;
}

// ---------------------------------------------------------------------------
// standard simplices

namespace {

std::string seq_id(const std::vector<int>& seq) {
    std::string s = "v";
    for (std::size_t i = 0; i < seq.size(); ++i) s += (i ? "." : "") + std::to_string(seq[i]);
    return s;
}

void monotone_seqs(int n, int len, std::vector<std::vector<int>>& out) {
    std::vector<int> cur((std::size_t)len, 0);
    while (true) {
        bool mono = true;
        for (int i = 1; i < len; ++i)
            if (cur[(std::size_t)i] < cur[(std::size_t)i - 1]) mono = false;
        if (mono) out.push_back(cur);
        int i = 0;
        while (i < len && ++cur[(std::size_t)i] > n) cur[(std::size_t)i++] = 0;
        if (i == len) break;
    }
}

TruncSSet simplex_like(int n, int top, bool boundary) {
    TruncSSet out;
    out.init_levels(top);
    std::vector<std::vector<std::vector<int>>> seqs((std::size_t)top + 1);
    for (int m = 0; m <= top; ++m) {
        monotone_seqs(n, m + 1, seqs[(std::size_t)m]);
        if (boundary) {
            auto& v = seqs[(std::size_t)m];
            v.erase(std::remove_if(v.begin(), v.end(),
                                   [&](const std::vector<int>& s) {
                                       std::vector<char> seen((std::size_t)n + 1, 0);
                                       for (int xx : s) seen[(std::size_t)xx] = 1;
                                       for (char c : seen)
                                           if (!c) return false;
                                       return true;  // surjective onto [n]: not in the boundary
                                   }),
                    v.end());
        }
        std::sort(seqs[(std::size_t)m].begin(), seqs[(std::size_t)m].end());
        for (auto& s : seqs[(std::size_t)m]) out.levels[(std::size_t)m].add(seq_id(s));
    }
    for (int m = 1; m <= top; ++m)
        for (int i = 0; i <= m; ++i) {
            auto& fi = out.faces[(std::size_t)m][(std::size_t)i];
            for (auto& s : seqs[(std::size_t)m]) {
                std::vector<int> t;
                for (int p = 0; p <= m; ++p)
                    if (p != i) t.push_back(s[(std::size_t)p]);
                fi.push_back(out.levels[(std::size_t)(m - 1)].get(seq_id(t)));
            }
        }
    for (int m = 0; m < top; ++m)
        for (int j = 0; j <= m; ++j) {
            auto& sj = out.degens[(std::size_t)m][(std::size_t)j];
            for (auto& s : seqs[(std::size_t)m]) {
                std::vector<int> t;
                for (int p = 0; p <= m; ++p) {
                    t.push_back(s[(std::size_t)p]);
                    if (p == j) t.push_back(s[(std::size_t)p]);
                }
                sj.push_back(out.levels[(std::size_t)(m + 1)].get(seq_id(t)));
            }
        }
    return out;
}

}  // namespace

TruncSSet standard_simplex(int n, int top) { return simplex_like(n, top, false); }
TruncSSet boundary_simplex(int n, int top) { return simplex_like(n, top, true); }

}  // namespace tcat::simp
