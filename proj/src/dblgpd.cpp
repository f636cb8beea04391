#include "tcat/dblgpd.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tcat::dblgpd {

namespace {

// the squares as a groupoid over the horizontal edges (vertical pasting)
gpd::FinGroupoid square_groupoid_v(const DoubleGroupoid& g) {
    gpd::FinGroupoid out;
    for (std::size_t e = 0; e < g.horiz.arrows.size(); ++e)
        out.add_object(g.horiz.arrows.name((int)e));
    for (std::size_t s = 0; s < g.squares.size(); ++s)
        out.add_arrow(g.squares.name((int)s), g.sq_top[s], g.sq_bot[s]);
    for (std::size_t e = 0; e < g.horiz.arrows.size(); ++e) out.id_arrow[e] = g.vid[e];
    out.inv = g.vinv;
    for (auto& [k, v] : g.vpaste_) out.comp[k] = v;
    return out;
}

gpd::FinGroupoid square_groupoid_h(const DoubleGroupoid& g) {
    gpd::FinGroupoid out;
    for (std::size_t e = 0; e < g.vert.arrows.size(); ++e)
        out.add_object(g.vert.arrows.name((int)e));
    for (std::size_t s = 0; s < g.squares.size(); ++s)
        out.add_arrow(g.squares.name((int)s), g.sq_left[s], g.sq_right[s]);
    for (std::size_t e = 0; e < g.vert.arrows.size(); ++e) out.id_arrow[e] = g.hid[e];
    out.inv = g.hinv;
    for (auto& [k, v] : g.hpaste_) out.comp[k] = v;
    return out;
}

}  // namespace

std::vector<std::string> DoubleGroupoid::validate(bool thorough) const {
    std::vector<std::string> bad;
    if (vert.objects.size() != points.size() || horiz.objects.size() != points.size())
        return {"edge groupoids not over the point set"};
    for (std::size_t p = 0; p < points.size(); ++p)
        if (vert.objects.name((int)p) != points.name((int)p) ||
            horiz.objects.name((int)p) != points.name((int)p))
            return {"edge groupoid objects disagree with points"};
    auto bv = vert.validate();
    auto bh = horiz.validate();
    bad.insert(bad.end(), bv.begin(), bv.end());
    bad.insert(bad.end(), bh.begin(), bh.end());
    if (!bad.empty()) return bad;
    if (sq_top.size() != squares.size() || sq_bot.size() != squares.size() ||
        sq_left.size() != squares.size() || sq_right.size() != squares.size())
        return {"square boundary tables not total"};
    for (std::size_t s = 0; s < squares.size(); ++s) {
        int t = sq_top[s], b = sq_bot[s], l = sq_left[s], r = sq_right[s];
        if (horiz.src[(std::size_t)t] != vert.src[(std::size_t)l] ||
            horiz.tgt[(std::size_t)t] != vert.src[(std::size_t)r] ||
            horiz.src[(std::size_t)b] != vert.tgt[(std::size_t)l] ||
            horiz.tgt[(std::size_t)b] != vert.tgt[(std::size_t)r])
            return {"square corners do not match at " + squares.name((int)s)};
    }
    auto sv = square_groupoid_v(*this);
    auto sh = square_groupoid_h(*this);
    if (thorough) {
        auto b1 = sv.validate();
        auto b2 = sh.validate();
        for (auto& e : b1) bad.push_back("vertical square structure: " + e);
        for (auto& e : b2) bad.push_back("horizontal square structure: " + e);
        if (!bad.empty()) return bad;
    }
    for (auto& [k, v] : vpaste_) {
        int a = (int)(k >> 32), b = (int)(k & 0xffffffff);
        if (sq_bot[(std::size_t)a] != sq_top[(std::size_t)b])
            return {"vpaste on non-stackable pair"};
        if (sq_left[(std::size_t)v] !=
                vert.then_(sq_left[(std::size_t)a], sq_left[(std::size_t)b]) ||
            sq_right[(std::size_t)v] !=
                vert.then_(sq_right[(std::size_t)a], sq_right[(std::size_t)b]))
            return {"vpaste does not compose side edges"};
    }
    for (auto& [k, v] : hpaste_) {
        int a = (int)(k >> 32), b = (int)(k & 0xffffffff);
        if (sq_right[(std::size_t)a] != sq_left[(std::size_t)b])
            return {"hpaste on non-adjacent pair"};
        if (sq_top[(std::size_t)v] != horiz.then_(sq_top[(std::size_t)a], sq_top[(std::size_t)b]) ||
            sq_bot[(std::size_t)v] != horiz.then_(sq_bot[(std::size_t)a], sq_bot[(std::size_t)b]))
            return {"hpaste does not compose top and bottom edges"};
    }
    for (std::size_t p = 0; p < points.size(); ++p)
        if (vid[(std::size_t)horiz.id_arrow[p]] != hid[(std::size_t)vert.id_arrow[p]])
            return {"double identity mismatch at " + points.name((int)p)};
    for (std::size_t e = 0; e < horiz.arrows.size(); ++e) {
        int s = vid[e];
        if (sq_left[(std::size_t)s] != vert.id_arrow[(std::size_t)horiz.src[e]] ||
            sq_right[(std::size_t)s] != vert.id_arrow[(std::size_t)horiz.tgt[e]])
            return {"vertical identity square has nontrivial sides"};
    }
    for (std::size_t e = 0; e < vert.arrows.size(); ++e) {
        int s = hid[e];
        if (sq_top[(std::size_t)s] != horiz.id_arrow[(std::size_t)vert.src[e]] ||
            sq_bot[(std::size_t)s] != horiz.id_arrow[(std::size_t)vert.tgt[e]])
            return {"horizontal identity square has nontrivial boundary"};
    }
    // interchange on 2x2 grids
    std::unordered_map<std::int64_t, std::vector<int>> by_top_left;
    for (std::size_t s = 0; s < squares.size(); ++s)
        by_top_left[pair_key(sq_top[s], sq_left[s])].push_back((int)s);
    std::unordered_map<int, std::vector<int>> by_left, by_top;
    for (std::size_t s = 0; s < squares.size(); ++s) {
        by_left[sq_left[s]].push_back((int)s);
        by_top[sq_top[s]].push_back((int)s);
    }
    std::size_t checked = 0;
    for (std::size_t a = 0; a < squares.size(); ++a)
        for (int b : by_left[sq_right[a]])
            for (int c : by_top[sq_bot[a]]) {
                auto it =
                    by_top_left.find(pair_key(sq_bot[(std::size_t)b], sq_right[(std::size_t)c]));
                if (it == by_top_left.end()) continue;
                for (int dd : it->second) {
                    int left = vpaste((int)a, c), right = vpaste(b, dd);
                    int top = hpaste((int)a, b), bot = hpaste(c, dd);
                    if (hpaste(left, right) != vpaste(top, bot)) return {"interchange fails"};
                    if (!thorough && ++checked > 20000) return bad;
                }
            }
    return bad;
}

std::vector<std::string> validate(const DoubleGroupoid& g, bool thorough) {
    return g.validate(thorough);
}

std::optional<SymmetricPresentation> is_symmetric(const DoubleGroupoid& g) {
    std::vector<int> pmap, emap;
    if (!gpd::isomorphic_with(g.vert, g.horiz, &pmap, &emap)) return std::nullopt;
    auto sv = square_groupoid_v(g);
    auto sh = square_groupoid_h(g);
    std::vector<int> einv(emap.size());
    for (std::size_t e = 0; e < emap.size(); ++e) einv[(std::size_t)emap[e]] = (int)e;
    std::vector<int> smap;
    if (!gpd::isomorphic_over(sv, sh, einv, &smap)) {
        std::vector<int> omap2;
        if (!gpd::isomorphic_with(sv, sh, &omap2, &smap)) return std::nullopt;
    }
    SymmetricPresentation out;
    out.dg = g;
    out.point_map = pmap;
    out.edge_map = emap;
    out.square_map = smap;
    return out;
}

bool is_weakly_globular(const DoubleGroupoid& g) {
    if (!gpd::is_equivalent_to_discrete(g.vert)) return false;
    auto sv = square_groupoid_v(g);
    gpd::CatMap d1h;
    d1h.obj_map.resize(g.horiz.arrows.size());
    d1h.arr_map = g.sq_left;
    for (std::size_t e = 0; e < g.horiz.arrows.size(); ++e) d1h.obj_map[e] = g.horiz.src[e];
    gpd::CatMap d0h;
    d0h.obj_map.resize(g.horiz.arrows.size());
    d0h.arr_map = g.sq_right;
    for (std::size_t e = 0; e < g.horiz.arrows.size(); ++e) d0h.obj_map[e] = g.horiz.tgt[e];
    return gpd::is_nerve_fibration(d0h, sv, g.vert) && gpd::is_nerve_fibration(d1h, sv, g.vert);
}

bool is_two_typical(const DoubleGroupoid& g) {
    return is_weakly_globular(g) && is_symmetric(g).has_value();
}

gpd::FinGroupoid fundamental_groupoid_dg(const DoubleGroupoid& g, std::vector<int>* edge_class,
                                         std::vector<int>* point_class) {
    if (!is_weakly_globular(g)) throw NotWeaklyGlobular("fundamental_groupoid_dg");
    UnionFind ufp(g.points.size());
    for (std::size_t e = 0; e < g.vert.arrows.size(); ++e) ufp.join(g.vert.src[e], g.vert.tgt[e]);
    int np = 0;
    auto pcls = ufp.classes(&np);
    UnionFind ufe(g.horiz.arrows.size());
    for (std::size_t s = 0; s < g.squares.size(); ++s) ufe.join(g.sq_top[s], g.sq_bot[s]);
    int ne = 0;
    auto ecls = ufe.classes(&ne);

    gpd::FinGroupoid out;
    std::vector<int> prep((std::size_t)np, -1), erep((std::size_t)ne, -1);
    for (std::size_t p = 0; p < g.points.size(); ++p)
        if (prep[(std::size_t)pcls[p]] < 0 ||
            g.points.name((int)p) < g.points.name(prep[(std::size_t)pcls[p]]))
            prep[(std::size_t)pcls[p]] = (int)p;
    for (std::size_t e = 0; e < g.horiz.arrows.size(); ++e)
        if (erep[(std::size_t)ecls[e]] < 0 ||
            g.horiz.arrows.name((int)e) < g.horiz.arrows.name(erep[(std::size_t)ecls[e]]))
            erep[(std::size_t)ecls[e]] = (int)e;
    for (int p = 0; p < np; ++p) out.add_object("{" + g.points.name(prep[(std::size_t)p]) + "}");
    for (int e = 0; e < ne; ++e)
        out.add_arrow("{" + g.horiz.arrows.name(erep[(std::size_t)e]) + "}",
                      pcls[(std::size_t)g.horiz.src[(std::size_t)erep[(std::size_t)e]]],
                      pcls[(std::size_t)g.horiz.tgt[(std::size_t)erep[(std::size_t)e]]]);
    for (std::size_t e = 0; e < g.horiz.arrows.size(); ++e) {
        int c = ecls[e];
        if (out.src[(std::size_t)c] != pcls[(std::size_t)g.horiz.src[e]] ||
            out.tgt[(std::size_t)c] != pcls[(std::size_t)g.horiz.tgt[e]])
            throw NotWeaklyGlobular("fundamental_groupoid_dg: endpoints not class-constant");
    }
    for (std::size_t p = 0; p < g.points.size(); ++p) {
        int c = pcls[p];
        int want = ecls[(std::size_t)g.horiz.id_arrow[p]];
        if (out.id_arrow[(std::size_t)c] < 0)
            out.id_arrow[(std::size_t)c] = want;
        else if (out.id_arrow[(std::size_t)c] != want)
            throw NotWeaklyGlobular("fundamental_groupoid_dg: identities not class-constant");
    }
    for (std::size_t e1 = 0; e1 < g.horiz.arrows.size(); ++e1)
        for (std::size_t e2 = 0; e2 < g.horiz.arrows.size(); ++e2) {
            if (g.horiz.tgt[e1] != g.horiz.src[e2]) continue;
            int c = ecls[(std::size_t)g.horiz.then_((int)e1, (int)e2)];
            auto it = out.comp.find(pair_key(ecls[e1], ecls[e2]));
            if (it == out.comp.end())
                out.set_comp(ecls[e1], ecls[e2], c);
            else if (it->second != c)
                throw NotWeaklyGlobular("fundamental_groupoid_dg: composition not well defined");
        }
    for (std::size_t a = 0; a < out.arrows.size(); ++a)
        for (std::size_t b = 0; b < out.arrows.size(); ++b)
            if (out.composable((int)a, (int)b) && !out.comp.count(pair_key((int)a, (int)b)))
                throw NotWeaklyGlobular("fundamental_groupoid_dg: missing composite (Segal)");
    out.inv.assign(out.arrows.size(), -1);
    for (std::size_t a = 0; a < out.arrows.size(); ++a)
        for (std::size_t b = 0; b < out.arrows.size(); ++b)
            if (out.composable((int)a, (int)b) &&
                out.then_((int)a, (int)b) == out.id_arrow[(std::size_t)out.src[a]] &&
                out.then_((int)b, (int)a) == out.id_arrow[(std::size_t)out.tgt[a]]) {
                out.inv[a] = (int)b;
                break;
            }
    for (std::size_t a = 0; a < out.arrows.size(); ++a)
        if (out.inv[a] < 0) throw NotWeaklyGlobular("fundamental_groupoid_dg: missing inverse");
    if (edge_class) *edge_class = ecls;
    if (point_class) *point_class = pcls;
    return out;
}

Pi2 pi2_at(const DoubleGroupoid& g, int point) {
    int e = g.horiz.id_arrow[(std::size_t)point];
    Pi2 out;
    for (std::size_t s = 0; s < g.squares.size(); ++s)
        if (g.sq_top[s] == e && g.sq_bot[s] == e) out.squares.push_back((int)s);
    std::sort(out.squares.begin(), out.squares.end(),
              [&](int a, int b) { return g.squares.name(a) < g.squares.name(b); });
    for (std::size_t i = 0; i < out.squares.size(); ++i) out.sq_pos[out.squares[i]] = (int)i;
    std::vector<std::vector<int>> mul(out.squares.size(), std::vector<int>(out.squares.size()));
    for (std::size_t i = 0; i < out.squares.size(); ++i)
        for (std::size_t j = 0; j < out.squares.size(); ++j) {
            int v = g.vpaste(out.squares[i], out.squares[j]);
            auto it = out.sq_pos.find(v);
            if (it == out.sq_pos.end()) throw NotTwoTypical("pi2_at: vertex group not closed");
            mul[i][j] = it->second;
        }
    out.tab = ablin::abelian_from_table(mul);
    out.group = out.tab.group;
    return out;
}

// ---------------------------------------------------------------------------
// diagonal nerve

simp::TruncSSet diagonal_nerve(const DoubleGroupoid& g, int top) {
    struct GridLevel {
        std::vector<std::vector<int>> cells;
        std::map<std::vector<int>, int> index;
    };
    std::vector<std::vector<GridLevel>> lv((std::size_t)top + 1,
                                           std::vector<GridLevel>((std::size_t)top + 1));
    lv[0][0].cells.resize(g.points.size());
    for (std::size_t p = 0; p < g.points.size(); ++p) lv[0][0].cells[p] = {(int)p};
    auto chains = [&](const gpd::FinGroupoid& gr, int len) {
        std::vector<std::vector<int>> out;
        for (std::size_t a = 0; a < gr.arrows.size(); ++a) out.push_back({(int)a});
        for (int l = 2; l <= len; ++l) {
            std::vector<std::vector<int>> next;
            for (auto& ch : out)
                for (std::size_t a = 0; a < gr.arrows.size(); ++a)
                    if (gr.tgt[(std::size_t)ch.back()] == gr.src[a]) {
                        auto e = ch;
                        e.push_back((int)a);
                        next.push_back(e);
                    }
            out = next;
        }
        return out;
    };
    for (int p = 1; p <= top; ++p) lv[(std::size_t)p][0].cells = chains(g.horiz, p);
    for (int q = 1; q <= top; ++q) lv[0][(std::size_t)q].cells = chains(g.vert, q);
    for (int p = 1; p <= top; ++p) {
        std::vector<std::vector<int>> rows;
        for (std::size_t s = 0; s < g.squares.size(); ++s) rows.push_back({(int)s});
        for (int l = 2; l <= p; ++l) {
            std::vector<std::vector<int>> next;
            for (auto& r : rows)
                for (std::size_t s = 0; s < g.squares.size(); ++s)
                    if (g.sq_right[(std::size_t)r.back()] == g.sq_left[s]) {
                        auto e = r;
                        e.push_back((int)s);
                        next.push_back(e);
                    }
            rows = next;
        }
        std::map<std::vector<int>, std::vector<std::size_t>> by_top;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            std::vector<int> t;
            for (int s : rows[r]) t.push_back(g.sq_top[(std::size_t)s]);
            by_top[t].push_back(r);
        }
        for (int q = 1; q <= top; ++q) {
            auto& cur = lv[(std::size_t)p][(std::size_t)q].cells;
            if (q == 1) {
                cur = rows;
                continue;
            }
            for (auto& grid : lv[(std::size_t)p][(std::size_t)(q - 1)].cells) {
                std::vector<int> bot;
                for (int c = 0; c < p; ++c)
                    bot.push_back(g.sq_bot[(std::size_t)grid[(std::size_t)((q - 2) * p + c)]]);
                auto it = by_top.find(bot);
                if (it == by_top.end()) continue;
                for (auto r : it->second) {
                    auto e = grid;
                    for (int s : rows[r]) e.push_back(s);
                    cur.push_back(e);
                }
            }
        }
    }
    for (int p = 0; p <= top; ++p)
        for (int q = 0; q <= top; ++q) {
            auto& L = lv[(std::size_t)p][(std::size_t)q];
            for (std::size_t i = 0; i < L.cells.size(); ++i) L.index[L.cells[i]] = (int)i;
        }

    simp::TruncBiSSet w;
    w.init_levels(top, top, false);
    for (int p = 0; p <= top; ++p)
        for (int q = 0; q <= top; ++q) {
            auto& L = lv[(std::size_t)p][(std::size_t)q];
            for (std::size_t i = 0; i < L.cells.size(); ++i) {
                std::string id = "g" + std::to_string(p) + "x" + std::to_string(q) + ":";
                for (std::size_t c = 0; c < L.cells[i].size(); ++c)
                    id += (c ? "," : "") + std::to_string(L.cells[i][c]);
                w.levels[(std::size_t)p][(std::size_t)q].add(id);
            }
        }
    auto hface = [&](int p, int q, int i, const std::vector<int>& cell) {
        std::vector<int> out;
        if (q == 0) {
            if (p == 1)
                return std::vector<int>{i == 0 ? g.horiz.tgt[(std::size_t)cell[0]]
                                               : g.horiz.src[(std::size_t)cell[0]]};
            for (int c = 0; c < p; ++c) {
                if (i > 0 && i < p && c == i - 1) {
                    out.push_back(g.horiz.then_(cell[(std::size_t)c], cell[(std::size_t)(c + 1)]));
                    ++c;
                } else if (!(i == 0 && c == 0) && !(i == p && c == p - 1))
                    out.push_back(cell[(std::size_t)c]);
            }
            return out;
        }
        if (p == 1) {
            for (int r = 0; r < q; ++r)
                out.push_back(i == 0 ? g.sq_right[(std::size_t)cell[(std::size_t)r]]
                                     : g.sq_left[(std::size_t)cell[(std::size_t)r]]);
            return out;
        }
        for (int r = 0; r < q; ++r)
            for (int c = 0; c < p; ++c) {
                int cur = cell[(std::size_t)(r * p + c)];
                if (i > 0 && i < p && c == i - 1) {
                    out.push_back(g.hpaste(cur, cell[(std::size_t)(r * p + c + 1)]));
                    ++c;
                } else if (!(i == 0 && c == 0) && !(i == p && c == p - 1))
                    out.push_back(cur);
            }
        return out;
    };
    auto vface = [&](int p, int q, int j, const std::vector<int>& cell) {
        std::vector<int> out;
        if (p == 0) {
            if (q == 1)
                return std::vector<int>{j == 0 ? g.vert.tgt[(std::size_t)cell[0]]
                                               : g.vert.src[(std::size_t)cell[0]]};
            for (int r = 0; r < q; ++r) {
                if (j > 0 && j < q && r == j - 1) {
                    out.push_back(g.vert.then_(cell[(std::size_t)r], cell[(std::size_t)(r + 1)]));
                    ++r;
                } else if (!(j == 0 && r == 0) && !(j == q && r == q - 1))
                    out.push_back(cell[(std::size_t)r]);
            }
            return out;
        }
        if (q == 1) {
            for (int c = 0; c < p; ++c)
                out.push_back(j == 0 ? g.sq_bot[(std::size_t)cell[(std::size_t)c]]
                                     : g.sq_top[(std::size_t)cell[(std::size_t)c]]);
            return out;
        }
        for (int r = 0; r < q; ++r) {
            if (j > 0 && j < q && r == j - 1) {
                for (int c = 0; c < p; ++c)
                    out.push_back(g.vpaste(cell[(std::size_t)(r * p + c)],
                                           cell[(std::size_t)((r + 1) * p + c)]));
                ++r;
            } else if (!(j == 0 && r == 0) && !(j == q && r == q - 1))
                for (int c = 0; c < p; ++c) out.push_back(cell[(std::size_t)(r * p + c)]);
        }
        return out;
    };
    auto hdeg = [&](int p, int q, int i, const std::vector<int>& cell) {
        std::vector<int> out;
        if (q == 0) {
            if (p == 0) return std::vector<int>{g.horiz.id_arrow[(std::size_t)cell[0]]};
            for (int c = 0; c <= p; ++c) {
                if (c == i) {
                    int pt = (c < p) ? g.horiz.src[(std::size_t)cell[(std::size_t)c]]
                                     : g.horiz.tgt[(std::size_t)cell[(std::size_t)(p - 1)]];
                    out.push_back(g.horiz.id_arrow[(std::size_t)pt]);
                }
                if (c < p) out.push_back(cell[(std::size_t)c]);
            }
            return out;
        }
        if (p == 0) {
            for (int r = 0; r < q; ++r) out.push_back(g.hid[(std::size_t)cell[(std::size_t)r]]);
            return out;
        }
        for (int r = 0; r < q; ++r)
            for (int c = 0; c <= p; ++c) {
                if (c == i) {
                    int ve = (c < p) ? g.sq_left[(std::size_t)cell[(std::size_t)(r * p + c)]]
                                     : g.sq_right[(std::size_t)cell[(std::size_t)(r * p + p - 1)]];
                    out.push_back(g.hid[(std::size_t)ve]);
                }
                if (c < p) out.push_back(cell[(std::size_t)(r * p + c)]);
            }
        return out;
    };
    auto vdeg = [&](int p, int q, int j, const std::vector<int>& cell) {
        std::vector<int> out;
        if (p == 0) {
            if (q == 0) return std::vector<int>{g.vert.id_arrow[(std::size_t)cell[0]]};
            for (int r = 0; r <= q; ++r) {
                if (r == j) {
                    int pt = (r < q) ? g.vert.src[(std::size_t)cell[(std::size_t)r]]
                                     : g.vert.tgt[(std::size_t)cell[(std::size_t)(q - 1)]];
                    out.push_back(g.vert.id_arrow[(std::size_t)pt]);
                }
                if (r < q) out.push_back(cell[(std::size_t)r]);
            }
            return out;
        }
        if (q == 0) {
            for (int c = 0; c < p; ++c) out.push_back(g.vid[(std::size_t)cell[(std::size_t)c]]);
            return out;
        }
        for (int r = 0; r <= q; ++r) {
            if (r == j)
                for (int c = 0; c < p; ++c) {
                    int he = (r < q) ? g.sq_top[(std::size_t)cell[(std::size_t)(r * p + c)]]
                                     : g.sq_bot[(std::size_t)cell[(std::size_t)((q - 1) * p + c)]];
                    out.push_back(g.vid[(std::size_t)he]);
                }
            if (r < q)
                for (int c = 0; c < p; ++c) out.push_back(cell[(std::size_t)(r * p + c)]);
        }
        return out;
    };
    for (int p = 0; p <= top; ++p)
        for (int q = 0; q <= top; ++q) {
            auto& L = lv[(std::size_t)p][(std::size_t)q];
            if (p >= 1) {
                auto& hf = w.h_faces[(std::size_t)p][(std::size_t)q];
                hf.assign((std::size_t)p + 1, {});
                for (int i = 0; i <= p; ++i)
                    for (auto& cell : L.cells)
                        hf[(std::size_t)i].push_back(
                            lv[(std::size_t)(p - 1)][(std::size_t)q].index.at(
                                hface(p, q, i, cell)));
            }
            if (q >= 1) {
                auto& vf = w.v_faces[(std::size_t)p][(std::size_t)q];
                vf.assign((std::size_t)q + 1, {});
                for (int j = 0; j <= q; ++j)
                    for (auto& cell : L.cells)
                        vf[(std::size_t)j].push_back(
                            lv[(std::size_t)p][(std::size_t)(q - 1)].index.at(
                                vface(p, q, j, cell)));
            }
            if (p < top) {
                auto& hd = w.h_degens[(std::size_t)p][(std::size_t)q];
                hd.assign((std::size_t)p + 1, {});
                for (int i = 0; i <= p; ++i)
                    for (auto& cell : L.cells)
                        hd[(std::size_t)i].push_back(
                            lv[(std::size_t)(p + 1)][(std::size_t)q].index.at(
                                hdeg(p, q, i, cell)));
            }
            if (q < top) {
                auto& vd = w.v_degens[(std::size_t)p][(std::size_t)q];
                vd.assign((std::size_t)q + 1, {});
                for (int j = 0; j <= q; ++j)
                    for (auto& cell : L.cells)
                        vd[(std::size_t)j].push_back(
                            lv[(std::size_t)p][(std::size_t)(q + 1)].index.at(
                                vdeg(p, q, j, cell)));
            }
        }
    auto bad = w.validate();
    if (!bad.empty()) throw std::runtime_error("diagonal_nerve: " + bad.front());
    return simp::diagonal(w);
}

// ---------------------------------------------------------------------------
// the fundamental double groupoid of a Kan complex

PtResult pt_of_kan(const simp::TruncSSet& xin, bool debug_fillers) {
    if (xin.top_dim < 5) throw PreconditionFailed("pt_of_kan: top_dim must be at least 5");
    simp::TruncSSet x = xin.top_dim == 5 ? xin : xin.truncate(5);
    {
        auto bad = x.validate();
        if (!bad.empty()) throw PreconditionFailed("pt_of_kan: invalid input: " + bad.front());
    }
    simp::TruncBiSSet orx = simp::ordinal_sum(x);
    for (int p = 0; p <= 2; ++p) {
        if (!simp::is_csk2_fibrant(orx.column_at(p)))
            throw PreconditionFailed("pt_of_kan: horizontal level " + std::to_string(p) +
                                     " is not csk2-fibrant");
        if (!simp::is_csk2_fibrant(orx.row_at(p)))
            throw PreconditionFailed("pt_of_kan: vertical level " + std::to_string(p) +
                                     " is not csk2-fibrant");
    }
    {
        simp::TruncSSet c1 = orx.column_at(1);
        simp::TruncSSet c0 = orx.column_at(0).truncate(c1.top_dim);
        simp::SSetMap d0h;
        d0h.source = &c1;
        d0h.target = &c0;
        d0h.level_map.resize((std::size_t)c1.top_dim + 1);
        for (int q = 0; q <= c1.top_dim; ++q) {
            d0h.level_map[(std::size_t)q].resize(c1.size(q));
            for (std::size_t e = 0; e < c1.size(q); ++e)
                d0h.level_map[(std::size_t)q][e] = orx.h_faces[1][(std::size_t)q][0][e];
        }
        if (!simp::is_csk2_fibration(d0h))
            throw PreconditionFailed(
                "pt_of_kan: horizontal d0 is not a csk2-fibration");
        simp::TruncSSet r1 = orx.row_at(1);
        simp::TruncSSet r0 = orx.row_at(0).truncate(r1.top_dim);
        simp::SSetMap d0v;
        d0v.source = &r1;
        d0v.target = &r0;
        d0v.level_map.resize((std::size_t)r1.top_dim + 1);
        for (int p = 0; p <= r1.top_dim; ++p) {
            d0v.level_map[(std::size_t)p].resize(r1.size(p));
            for (std::size_t e = 0; e < r1.size(p); ++e)
                d0v.level_map[(std::size_t)p][e] = orx.v_faces[(std::size_t)p][1][0][e];
        }
        if (!simp::is_csk2_fibration(d0v))
            throw PreconditionFailed("pt_of_kan: vertical d0 is not a csk2-fibration");
    }

    std::vector<gpd::FundamentalGroupoid> z;
    for (int p = 0; p <= 2; ++p) z.push_back(gpd::fundamental_groupoid(orx.column_at(p)));
    gpd::FundamentalGroupoid ghor = gpd::fundamental_groupoid(orx.row_at(0));

    // morphism-level horizontal complex: level p = arrows of z[p]
    simp::TruncSSet m;
    m.init_levels(2);
    for (int p = 0; p <= 2; ++p)
        for (std::size_t a = 0; a < z[(std::size_t)p].g.arrows.size(); ++a)
            m.levels[(std::size_t)p].add(z[(std::size_t)p].g.arrows.name((int)a));
    // representatives per class, for induced structure maps
    std::vector<std::vector<int>> rep(3);
    for (int p = 0; p <= 2; ++p) {
        rep[(std::size_t)p].assign(z[(std::size_t)p].g.arrows.size(), -1);
        for (std::size_t y = 0; y < x.size(p + 2); ++y) {
            int c = z[(std::size_t)p].edge_class[y];
            if (rep[(std::size_t)p][(std::size_t)c] < 0) rep[(std::size_t)p][(std::size_t)c] = (int)y;
        }
    }
    for (int p = 1; p <= 2; ++p)
        for (int i = 0; i <= p; ++i) {
            auto& fi = m.faces[(std::size_t)p][(std::size_t)i];
            fi.resize(m.size(p));
            for (std::size_t a = 0; a < m.size(p); ++a)
                fi[a] = z[(std::size_t)(p - 1)].edge_class[(std::size_t)x.face(
                    p + 2, 2 + i, rep[(std::size_t)p][a])];
        }
    for (int p = 0; p <= 1; ++p)
        for (int j = 0; j <= p; ++j) {
            auto& sj = m.degens[(std::size_t)p][(std::size_t)j];
            sj.resize(m.size(p));
            for (std::size_t a = 0; a < m.size(p); ++a)
                sj[a] = z[(std::size_t)(p + 1)].edge_class[(std::size_t)x.degen(
                    p + 2, 2 + j, rep[(std::size_t)p][a])];
        }
    // well-definedness across representatives
    for (std::size_t y = 0; y < x.size(3); ++y) {
        int a = z[1].edge_class[y];
        if (m.face(1, 0, a) != z[0].edge_class[(std::size_t)x.face(3, 2, (int)y)] ||
            m.face(1, 1, a) != z[0].edge_class[(std::size_t)x.face(3, 3, (int)y)])
            throw PreconditionFailed("pt_of_kan: horizontal faces not constant on classes");
    }
    for (std::size_t y = 0; y < x.size(4); ++y) {
        int a = z[2].edge_class[y];
        for (int i = 0; i <= 2; ++i)
            if (m.face(2, i, a) != z[1].edge_class[(std::size_t)x.face(4, 2 + i, (int)y)])
                throw PreconditionFailed("pt_of_kan: horizontal faces not constant on classes");
    }

    gpd::FundamentalGroupoid fsq = gpd::fundamental_groupoid(m);

    PtResult out;
    DoubleGroupoid& dg = out.dg;
    for (std::size_t v = 0; v < x.size(1); ++v) dg.points.add(x.levels[1].name((int)v));
    dg.vert = z[0].g;
    dg.horiz = ghor.g;
    out.vert_class = z[0].edge_class;
    out.horiz_class = ghor.edge_class;

    for (std::size_t s = 0; s < fsq.g.arrows.size(); ++s)
        dg.squares.add(fsq.g.arrows.name((int)s));
    out.sq_class.resize(x.size(3));
    for (std::size_t y = 0; y < x.size(3); ++y)
        out.sq_class[y] = fsq.edge_class[(std::size_t)z[1].edge_class[y]];
    dg.sq_left.assign(dg.squares.size(), -1);
    dg.sq_right.assign(dg.squares.size(), -1);
    dg.sq_top.assign(dg.squares.size(), -1);
    dg.sq_bot.assign(dg.squares.size(), -1);
    for (std::size_t s = 0; s < fsq.g.arrows.size(); ++s) {
        dg.sq_left[s] = fsq.g.src[s];
        dg.sq_right[s] = fsq.g.tgt[s];
    }
    for (std::size_t y = 0; y < x.size(3); ++y) {
        int s = out.sq_class[y];
        int top = ghor.edge_class[(std::size_t)x.face(3, 1, (int)y)];
        int bot = ghor.edge_class[(std::size_t)x.face(3, 0, (int)y)];
        if (dg.sq_top[(std::size_t)s] < 0) {
            dg.sq_top[(std::size_t)s] = top;
            dg.sq_bot[(std::size_t)s] = bot;
        } else if (dg.sq_top[(std::size_t)s] != top || dg.sq_bot[(std::size_t)s] != bot)
            throw PreconditionFailed("pt_of_kan: square boundary not constant on classes");
    }
    for (std::size_t s = 0; s < dg.squares.size(); ++s)
        if (dg.sq_top[s] < 0)
            throw PreconditionFailed("pt_of_kan: square class without level-3 representative");

    dg.hpaste_ = fsq.g.comp;
    dg.hid = fsq.g.id_arrow;
    dg.hinv = fsq.g.inv;

    auto sq_of_z1 = [&](int a) { return fsq.edge_class[(std::size_t)a]; };
    for (auto& [k, v] : z[1].g.comp) {
        int a = (int)(k >> 32), b = (int)(k & 0xffffffff);
        std::int64_t kk = pair_key(sq_of_z1(a), sq_of_z1(b));
        auto it = dg.vpaste_.find(kk);
        if (it == dg.vpaste_.end())
            dg.vpaste_[kk] = sq_of_z1(v);
        else if (it->second != sq_of_z1(v))
            throw PreconditionFailed("pt_of_kan: vertical pasting not well defined");
    }
    {
        std::unordered_map<int, std::vector<int>> z1_by_src;
        for (std::size_t a = 0; a < z[1].g.arrows.size(); ++a)
            z1_by_src[z[1].g.src[a]].push_back((int)a);
        std::unordered_map<int, std::vector<int>> sq_arrows;  // square -> z1 arrows
        for (std::size_t a = 0; a < z[1].g.arrows.size(); ++a)
            sq_arrows[sq_of_z1((int)a)].push_back((int)a);
        for (std::size_t s1 = 0; s1 < dg.squares.size(); ++s1)
            for (std::size_t s2 = 0; s2 < dg.squares.size(); ++s2) {
                if (dg.sq_bot[s1] != dg.sq_top[s2]) continue;
                if (dg.vpaste_.count(pair_key((int)s1, (int)s2))) continue;
                bool done = false;
                for (int a : sq_arrows[(int)s1]) {
                    for (int b : z1_by_src[z[1].g.tgt[(std::size_t)a]]) {
                        if (sq_of_z1(b) != (int)s2) continue;
                        dg.vpaste_[pair_key((int)s1, (int)s2)] = sq_of_z1(z[1].g.then_(a, b));
                        done = true;
                        break;
                    }
                    if (done) break;
                }
                if (!done)
                    throw PreconditionFailed("pt_of_kan: stackable squares with no composite");
            }
    }
    dg.vid.assign(dg.horiz.arrows.size(), -1);
    for (std::size_t e2 = 0; e2 < x.size(2); ++e2) {
        int he = ghor.edge_class[e2];
        int idsq = sq_of_z1(z[1].g.id_arrow[e2]);
        if (dg.vid[(std::size_t)he] < 0)
            dg.vid[(std::size_t)he] = idsq;
        else if (dg.vid[(std::size_t)he] != idsq)
            throw PreconditionFailed("pt_of_kan: vertical identity square not well defined");
    }
    dg.vinv.assign(dg.squares.size(), -1);
    for (std::size_t a = 0; a < z[1].g.arrows.size(); ++a) {
        int s = sq_of_z1((int)a);
        int inv = sq_of_z1(z[1].g.inv[a]);
        if (dg.vinv[(std::size_t)s] < 0)
            dg.vinv[(std::size_t)s] = inv;
        else if (dg.vinv[(std::size_t)s] != inv)
            throw PreconditionFailed("pt_of_kan: vertical inverse not well defined");
    }

    auto bad = dg.validate(debug_fillers);
    if (!bad.empty())
        throw PreconditionFailed("pt_of_kan: assembled structure invalid: " + bad.front());
    return out;
}

DoubleGroupoid product(const DoubleGroupoid& a, const DoubleGroupoid& b) {
    DoubleGroupoid out;
    for (std::size_t i = 0; i < a.points.size(); ++i)
        for (std::size_t j = 0; j < b.points.size(); ++j)
            out.points.add("(" + a.points.name((int)i) + "|" + b.points.name((int)j) + ")");
    out.vert = gpd::product(a.vert, b.vert);
    out.horiz = gpd::product(a.horiz, b.horiz);
    auto senc = [&](int i, int j) {
        return (int)((std::size_t)i * b.squares.size() + (std::size_t)j);
    };
    auto henc = [&](int i, int j) {
        return (int)((std::size_t)i * b.horiz.arrows.size() + (std::size_t)j);
    };
    auto venc = [&](int i, int j) {
        return (int)((std::size_t)i * b.vert.arrows.size() + (std::size_t)j);
    };
    for (std::size_t i = 0; i < a.squares.size(); ++i)
        for (std::size_t j = 0; j < b.squares.size(); ++j) {
            out.squares.add("(" + a.squares.name((int)i) + "|" + b.squares.name((int)j) + ")");
            out.sq_top.push_back(henc(a.sq_top[i], b.sq_top[j]));
            out.sq_bot.push_back(henc(a.sq_bot[i], b.sq_bot[j]));
            out.sq_left.push_back(venc(a.sq_left[i], b.sq_left[j]));
            out.sq_right.push_back(venc(a.sq_right[i], b.sq_right[j]));
        }
    for (auto& [ka, va] : a.vpaste_)
        for (auto& [kb, vb] : b.vpaste_)
            out.vpaste_[pair_key(senc((int)(ka >> 32), (int)(kb >> 32)),
                                 senc((int)(ka & 0xffffffff), (int)(kb & 0xffffffff)))] =
                senc(va, vb);
    for (auto& [ka, va] : a.hpaste_)
        for (auto& [kb, vb] : b.hpaste_)
            out.hpaste_[pair_key(senc((int)(ka >> 32), (int)(kb >> 32)),
                                 senc((int)(ka & 0xffffffff), (int)(kb & 0xffffffff)))] =
                senc(va, vb);
    out.vid.resize(out.horiz.arrows.size());
    for (std::size_t i = 0; i < a.horiz.arrows.size(); ++i)
        for (std::size_t j = 0; j < b.horiz.arrows.size(); ++j)
            out.vid[(std::size_t)henc((int)i, (int)j)] = senc(a.vid[i], b.vid[j]);
    out.hid.resize(out.vert.arrows.size());
    for (std::size_t i = 0; i < a.vert.arrows.size(); ++i)
        for (std::size_t j = 0; j < b.vert.arrows.size(); ++j)
            out.hid[(std::size_t)venc((int)i, (int)j)] = senc(a.hid[i], b.hid[j]);
    out.vinv.resize(out.squares.size());
    out.hinv.resize(out.squares.size());
    for (std::size_t i = 0; i < a.squares.size(); ++i)
        for (std::size_t j = 0; j < b.squares.size(); ++j) {
            out.vinv[(std::size_t)senc((int)i, (int)j)] = senc(a.vinv[i], b.vinv[j]);
            out.hinv[(std::size_t)senc((int)i, (int)j)] = senc(a.hinv[i], b.hinv[j]);
        }
    return out;
}

}  // namespace tcat::dblgpd
