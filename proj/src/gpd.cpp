#include "tcat/gpd.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>

namespace tcat::gpd {

int FinCat::add_object(const std::string& id) {
    int o = objects.add(id);
    id_arrow.push_back(-1);
    return o;
}

int FinCat::add_arrow(const std::string& id, int s, int t) {
    int a = arrows.add(id);
    src.push_back(s);
    tgt.push_back(t);
    return a;
}

void FinCat::set_comp(int f, int g, int fg) { comp[pair_key(f, g)] = fg; }

std::vector<std::string> FinCat::validate() const {
    std::vector<std::string> bad;
    for (std::size_t o = 0; o < objects.size(); ++o) {
        int e = id_arrow[o];
        if (e < 0 || src[(std::size_t)e] != (int)o || tgt[(std::size_t)e] != (int)o) {
            bad.push_back("missing or ill-typed identity at " + objects.name((int)o));
            continue;
        }
    }
    if (!bad.empty()) return bad;
    for (std::size_t f = 0; f < arrows.size(); ++f)
        for (std::size_t g = 0; g < arrows.size(); ++g) {
            auto it = comp.find(pair_key((int)f, (int)g));
            bool comp_ok = composable((int)f, (int)g);
            if (comp_ok && it == comp.end())
                bad.push_back("composite undefined: " + arrows.name((int)f) + " ; " +
                              arrows.name((int)g));
            if (!comp_ok && it != comp.end())
                bad.push_back("composite defined for non-composable pair");
            if (comp_ok && it != comp.end()) {
                int fg = it->second;
                if (src[(std::size_t)fg] != src[f] || tgt[(std::size_t)fg] != tgt[g])
                    bad.push_back("composite has wrong endpoints");
            }
        }
    if (!bad.empty()) return bad;
    for (std::size_t f = 0; f < arrows.size(); ++f) {
        if (then_(id_arrow[(std::size_t)src[f]], (int)f) != (int)f ||
            then_((int)f, id_arrow[(std::size_t)tgt[f]]) != (int)f) {
            bad.push_back("unit law fails at " + arrows.name((int)f));
            break;
        }
    }
    for (std::size_t f = 0; f < arrows.size() && bad.empty(); ++f)
        for (std::size_t g = 0; g < arrows.size(); ++g) {
            if (!composable((int)f, (int)g)) continue;
            for (std::size_t h = 0; h < arrows.size(); ++h) {
                if (!composable((int)g, (int)h)) continue;
                if (then_(then_((int)f, (int)g), (int)h) != then_((int)f, then_((int)g, (int)h))) {
                    bad.push_back("associativity fails");
                    goto done;
                }
            }
        }
    done:;
    return bad;
}

std::vector<std::string> FinGroupoid::validate() const {
    auto bad = FinCat::validate();
    if (!bad.empty()) return bad;
    if (inv.size() != arrows.size()) return {"inverse map not total"};
    for (std::size_t f = 0; f < arrows.size(); ++f) {
        int g = inv[f];
        if (src[(std::size_t)g] != tgt[f] || tgt[(std::size_t)g] != src[f]) {
            bad.push_back("inverse has wrong endpoints at " + arrows.name((int)f));
            continue;
        }
        if (then_((int)f, g) != id_arrow[(std::size_t)src[f]] ||
            then_(g, (int)f) != id_arrow[(std::size_t)tgt[f]])
            bad.push_back("inverse law fails at " + arrows.name((int)f));
    }
    return bad;
}

std::vector<std::string> CatMap::validate(const FinCat& a, const FinCat& b) const {
    std::vector<std::string> bad;
    if (obj_map.size() != a.objects.size() || arr_map.size() != a.arrows.size())
        return {"functor maps not total"};
    for (std::size_t f = 0; f < a.arrows.size(); ++f) {
        if (b.src[(std::size_t)arr_map[f]] != obj_map[(std::size_t)a.src[f]] ||
            b.tgt[(std::size_t)arr_map[f]] != obj_map[(std::size_t)a.tgt[f]]) {
            bad.push_back("functor does not preserve endpoints");
            break;
        }
    }
    for (std::size_t o = 0; o < a.objects.size() && bad.empty(); ++o)
        if (arr_map[(std::size_t)a.id_arrow[o]] != b.id_arrow[(std::size_t)obj_map[o]]) {
            bad.push_back("functor does not preserve identities");
            break;
        }
    for (std::size_t f = 0; f < a.arrows.size() && bad.empty(); ++f)
        for (std::size_t g = 0; g < a.arrows.size(); ++g) {
            if (!a.composable((int)f, (int)g)) continue;
            if (arr_map[(std::size_t)a.then_((int)f, (int)g)] !=
                b.then_(arr_map[f], arr_map[g])) {
                bad.push_back("functor does not preserve composition");
                goto done;
            }
        }
    done:;
    return bad;
}

std::vector<int> pi0(const FinGroupoid& g, int* count) {
    UnionFind uf(g.objects.size());
    for (std::size_t f = 0; f < g.arrows.size(); ++f) uf.join(g.src[f], g.tgt[f]);
    return uf.classes(count);
}

// ---------------------------------------------------------------------------
// nerve

namespace {

std::string chain_id(const FinCat& c, const std::vector<int>& chain) {
    std::string s = "[";
    for (std::size_t i = 0; i < chain.size(); ++i)
        s += (i ? "|" : "") + c.arrows.name(chain[i]);
    return s + "]";
}

}  // namespace

simp::TruncSSet nerve(const FinCat& c, int top) {
    simp::TruncSSet x;
    x.init_levels(top);
    for (std::size_t o = 0; o < c.objects.size(); ++o)
        x.levels[0].add(c.objects.name((int)o));

    // chains by level; chains[n][idx] = arrow list
    std::vector<std::vector<std::vector<int>>> chains((std::size_t)top + 1);
    // arrows sorted by name for reproducible enumeration
    std::vector<int> order((std::size_t)c.arrows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return c.arrows.name(a) < c.arrows.name(b); });

    for (int n = 1; n <= top; ++n) {
        if (n == 1) {
            for (int f : order) chains[1].push_back({f});
        } else {
            for (const auto& ch : chains[(std::size_t)n - 1])
                for (int f : order)
                    if (c.tgt[(std::size_t)ch.back()] == c.src[(std::size_t)f]) {
                        auto ext = ch;
                        ext.push_back(f);
                        chains[(std::size_t)n].push_back(ext);
                    }
        }
        std::sort(chains[(std::size_t)n].begin(), chains[(std::size_t)n].end(),
                  [&](const auto& a, const auto& b) { return chain_id(c, a) < chain_id(c, b); });
        for (const auto& ch : chains[(std::size_t)n]) x.levels[(std::size_t)n].add(chain_id(c, ch));
    }

    auto chain_index = [&](int n, const std::vector<int>& ch) {
        return x.levels[(std::size_t)n].get(chain_id(c, ch));
    };
    for (int n = 1; n <= top; ++n)
        for (int i = 0; i <= n; ++i) {
            auto& fi = x.faces[(std::size_t)n][(std::size_t)i];
            for (const auto& ch : chains[(std::size_t)n]) {
                if (n == 1) {
                    fi.push_back(i == 0 ? c.tgt[(std::size_t)ch[0]] : c.src[(std::size_t)ch[0]]);
                    continue;
                }
                std::vector<int> t;
                if (i == 0)
                    t.assign(ch.begin() + 1, ch.end());
                else if (i == n)
                    t.assign(ch.begin(), ch.end() - 1);
                else {
                    t.assign(ch.begin(), ch.begin() + (i - 1));
                    t.push_back(c.then_(ch[(std::size_t)(i - 1)], ch[(std::size_t)i]));
                    for (std::size_t p = (std::size_t)i + 1; p < ch.size(); ++p) t.push_back(ch[p]);
                }
                fi.push_back(chain_index(n - 1, t));
            }
        }
    for (int n = 0; n < top; ++n)
        for (int j = 0; j <= n; ++j) {
            auto& sj = x.degens[(std::size_t)n][(std::size_t)j];
            if (n == 0) {
                for (std::size_t o = 0; o < c.objects.size(); ++o)
                    sj.push_back(chain_index(1, {c.id_arrow[o]}));
                continue;
            }
            for (const auto& ch : chains[(std::size_t)n]) {
                std::vector<int> t(ch.begin(), ch.begin() + j);
                int v = (j == 0) ? c.src[(std::size_t)ch[0]] : c.tgt[(std::size_t)ch[(std::size_t)j - 1]];
                t.push_back(c.id_arrow[(std::size_t)v]);
                for (std::size_t p = (std::size_t)j; p < ch.size(); ++p) t.push_back(ch[p]);
                sj.push_back(chain_index(n + 1, t));
            }
        }
    return x;
}

simp::SSetMap nerve_map(const CatMap& f, const FinCat& a, const FinCat& b,
                        const simp::TruncSSet& na, const simp::TruncSSet& nb) {
    simp::SSetMap m;
    m.source = &na;
    m.target = &nb;
    int top = std::min(na.top_dim, nb.top_dim);
    m.level_map.resize((std::size_t)top + 1);
    for (std::size_t o = 0; o < na.size(0); ++o)
        m.level_map[0].push_back(
            nb.levels[0].get(b.objects.name(f.obj_map[(std::size_t)a.objects.get(
                na.levels[0].name((int)o))])));
    for (int n = 1; n <= top; ++n)
        for (std::size_t s = 0; s < na.size(n); ++s) {
            // parse the chain id back: identifiers have the [f|g|...] shape
            const std::string& id = na.levels[(std::size_t)n].name((int)s);
            std::vector<int> ch;
            std::string cur;
            for (std::size_t p = 1; p + 1 <= id.size(); ++p) {
                if (id[p] == '|' || id[p] == ']') {
                    ch.push_back(f.arr_map[(std::size_t)a.arrows.get(cur)]);
                    cur.clear();
                } else
                    cur += id[p];
            }
            std::string img = "[";
            for (std::size_t i = 0; i < ch.size(); ++i)
                img += (i ? "|" : "") + b.arrows.name(ch[i]);
            img += "]";
            m.level_map[(std::size_t)n].push_back(nb.levels[(std::size_t)n].get(img));
        }
    return m;
}

// ---------------------------------------------------------------------------
// fundamental groupoid

FundamentalGroupoid fundamental_groupoid(const simp::TruncSSet& x) {
    if (x.top_dim < 2) throw NotFibrant("fundamental_groupoid: need top_dim >= 2");
    if (!simp::is_csk2_fibrant(x)) throw NotFibrant("fundamental_groupoid: input not csk2-fibrant");

    UnionFind uf(x.size(1));
    for (std::size_t s = 0; s < x.size(2); ++s) {
        int d0 = x.face(2, 0, (int)s), d1 = x.face(2, 1, (int)s), d2 = x.face(2, 2, (int)s);
        if (x.is_degenerate(1, d0)) uf.join(d2, d1);
        if (x.is_degenerate(1, d2)) uf.join(d0, d1);
    }
    int nclasses = 0;
    std::vector<int> cls = uf.classes(&nclasses);

    FundamentalGroupoid out;
    out.edge_class = cls;
    FinGroupoid& g = out.g;
    for (std::size_t v = 0; v < x.size(0); ++v) g.add_object(x.levels[0].name((int)v));
    // pick the lexicographically least representative edge per class for naming
    std::vector<int> rep((std::size_t)nclasses, -1);
    for (std::size_t e = 0; e < x.size(1); ++e) {
        int c = cls[e];
        if (rep[(std::size_t)c] < 0 ||
            x.levels[1].name((int)e) < x.levels[1].name(rep[(std::size_t)c]))
            rep[(std::size_t)c] = (int)e;
    }
    for (int c = 0; c < nclasses; ++c) {
        int e = rep[(std::size_t)c];
        g.add_arrow("{" + x.levels[1].name(e) + "}", x.face(1, 1, e), x.face(1, 0, e));
    }
    // identities
    for (std::size_t v = 0; v < x.size(0); ++v) g.id_arrow[v] = cls[(std::size_t)x.degen(0, 0, (int)v)];
    // well-definedness of endpoints across each class
    for (std::size_t e = 0; e < x.size(1); ++e) {
        int c = cls[e];
        if (g.src[(std::size_t)c] != x.face(1, 1, (int)e) ||
            g.tgt[(std::size_t)c] != x.face(1, 0, (int)e))
            throw NotFibrant("fundamental_groupoid: homotopic edges with different endpoints");
    }
    // composition from all 2-simplices, with agreement check
    for (std::size_t s = 0; s < x.size(2); ++s) {
        int a = cls[(std::size_t)x.face(2, 2, (int)s)];
        int b = cls[(std::size_t)x.face(2, 0, (int)s)];
        int c = cls[(std::size_t)x.face(2, 1, (int)s)];
        auto it = g.comp.find(pair_key(a, b));
        if (it == g.comp.end())
            g.set_comp(a, b, c);
        else if (it->second != c)
            throw NotFibrant("fundamental_groupoid: composition not well defined");
    }
    // totality on composable class pairs (csk2-fibrancy should guarantee it)
    for (std::size_t a = 0; a < g.arrows.size(); ++a)
        for (std::size_t b = 0; b < g.arrows.size(); ++b)
            if (g.composable((int)a, (int)b) && !g.comp.count(pair_key((int)a, (int)b)))
                throw NotFibrant("fundamental_groupoid: missing composite");
    // inverses
    g.inv.assign(g.arrows.size(), -1);
    for (std::size_t a = 0; a < g.arrows.size(); ++a) {
        for (std::size_t b = 0; b < g.arrows.size(); ++b)
            if (g.composable((int)a, (int)b) &&
                g.then_((int)a, (int)b) == g.id_arrow[(std::size_t)g.src[a]] &&
                g.then_((int)b, (int)a) == g.id_arrow[(std::size_t)g.tgt[a]]) {
                g.inv[a] = (int)b;
                break;
            }
        if (g.inv[a] < 0) throw NotFibrant("fundamental_groupoid: arrow with no inverse");
    }
    return out;
}

// ---------------------------------------------------------------------------
// predicates and constructions

bool is_nerve_fibration(const CatMap& p, const FinGroupoid& a, const FinGroupoid& b) {
    std::unordered_map<std::int64_t, bool> up_src, up_tgt;
    for (std::size_t e = 0; e < a.arrows.size(); ++e) {
        up_src[pair_key(a.src[e], p.arr_map[e])] = true;
        up_tgt[pair_key(a.tgt[e], p.arr_map[e])] = true;
    }
    for (std::size_t v = 0; v < a.objects.size(); ++v) {
        int fv = p.obj_map[v];
        for (std::size_t e = 0; e < b.arrows.size(); ++e) {
            if (b.src[e] == fv && !up_src.count(pair_key((int)v, (int)e))) return false;
            if (b.tgt[e] == fv && !up_tgt.count(pair_key((int)v, (int)e))) return false;
        }
    }
    return true;
}

bool is_equivalent_to_discrete(const FinGroupoid& g) {
    for (std::size_t e = 0; e < g.arrows.size(); ++e)
        if (g.src[e] == g.tgt[e] && (int)e != g.id_arrow[(std::size_t)g.src[e]]) return false;
    return true;
}

FinGroupoid semidiscrete(const FinGroupoid& g) {
    FinGroupoid out;
    for (std::size_t o = 0; o < g.objects.size(); ++o) out.add_object(g.objects.name((int)o));
    std::vector<int> keep(g.arrows.size(), -1);
    for (std::size_t e = 0; e < g.arrows.size(); ++e)
        if (g.src[e] == g.tgt[e]) keep[e] = out.add_arrow(g.arrows.name((int)e), g.src[e], g.tgt[e]);
    for (std::size_t o = 0; o < g.objects.size(); ++o)
        out.id_arrow[o] = keep[(std::size_t)g.id_arrow[o]];
    out.inv.assign(out.arrows.size(), -1);
    for (std::size_t e = 0; e < g.arrows.size(); ++e)
        if (keep[e] >= 0) out.inv[(std::size_t)keep[e]] = keep[(std::size_t)g.inv[e]];
    for (auto& [k, v] : g.comp) {
        int f = (int)(k >> 32), s = (int)(k & 0xffffffff);
        if (keep[(std::size_t)f] >= 0 && keep[(std::size_t)s] >= 0)
            out.set_comp(keep[(std::size_t)f], keep[(std::size_t)s], keep[(std::size_t)v]);
    }
    return out;
}

FinGroupoid product(const FinGroupoid& a, const FinGroupoid& b) {
    FinGroupoid out;
    for (std::size_t i = 0; i < a.objects.size(); ++i)
        for (std::size_t j = 0; j < b.objects.size(); ++j)
            out.add_object("(" + a.objects.name((int)i) + "|" + b.objects.name((int)j) + ")");
    auto oenc = [&](int i, int j) { return (int)((std::size_t)i * b.objects.size() + (std::size_t)j); };
    auto aenc = [&](int i, int j) { return (int)((std::size_t)i * b.arrows.size() + (std::size_t)j); };
    for (std::size_t i = 0; i < a.arrows.size(); ++i)
        for (std::size_t j = 0; j < b.arrows.size(); ++j)
            out.add_arrow("(" + a.arrows.name((int)i) + "|" + b.arrows.name((int)j) + ")",
                          oenc(a.src[i], b.src[j]), oenc(a.tgt[i], b.tgt[j]));
    for (std::size_t i = 0; i < a.objects.size(); ++i)
        for (std::size_t j = 0; j < b.objects.size(); ++j)
            out.id_arrow[(std::size_t)oenc((int)i, (int)j)] = aenc(a.id_arrow[i], b.id_arrow[j]);
    out.inv.resize(out.arrows.size());
    for (std::size_t i = 0; i < a.arrows.size(); ++i)
        for (std::size_t j = 0; j < b.arrows.size(); ++j)
            out.inv[(std::size_t)aenc((int)i, (int)j)] = aenc(a.inv[i], b.inv[j]);
    for (auto& [ka, va] : a.comp)
        for (auto& [kb, vb] : b.comp) {
            int f1 = (int)(ka >> 32), g1 = (int)(ka & 0xffffffff);
            int f2 = (int)(kb >> 32), g2 = (int)(kb & 0xffffffff);
            out.set_comp(aenc(f1, f2), aenc(g1, g2), aenc(va, vb));
        }
    return out;
}

FinGroupoid disjoint_union(const FinGroupoid& a, const FinGroupoid& b) {
    FinGroupoid out;
    for (std::size_t o = 0; o < a.objects.size(); ++o) out.add_object("L:" + a.objects.name((int)o));
    for (std::size_t o = 0; o < b.objects.size(); ++o) out.add_object("R:" + b.objects.name((int)o));
    int ob = (int)a.objects.size(), ab = (int)a.arrows.size();
    for (std::size_t e = 0; e < a.arrows.size(); ++e)
        out.add_arrow("L:" + a.arrows.name((int)e), a.src[e], a.tgt[e]);
    for (std::size_t e = 0; e < b.arrows.size(); ++e)
        out.add_arrow("R:" + b.arrows.name((int)e), ob + b.src[e], ob + b.tgt[e]);
    for (std::size_t o = 0; o < a.objects.size(); ++o) out.id_arrow[o] = a.id_arrow[o];
    for (std::size_t o = 0; o < b.objects.size(); ++o)
        out.id_arrow[(std::size_t)ob + o] = ab + b.id_arrow[o];
    out.inv.resize(out.arrows.size());
    for (std::size_t e = 0; e < a.arrows.size(); ++e) out.inv[e] = a.inv[e];
    for (std::size_t e = 0; e < b.arrows.size(); ++e) out.inv[(std::size_t)ab + e] = ab + b.inv[e];
    for (auto& [k, v] : a.comp) out.comp[k] = v;
    for (auto& [k, v] : b.comp)
        out.set_comp(ab + (int)(k >> 32), ab + (int)(k & 0xffffffff), ab + v);
    return out;
}

FinGroupoid cyclic_groupoid(int n, const std::string& obj) {
    FinGroupoid g;
    g.add_object(obj);
    for (int k = 0; k < n; ++k) g.add_arrow("g" + std::to_string(k), 0, 0);
    g.id_arrow[0] = 0;
    g.inv.resize((std::size_t)n);
    for (int i = 0; i < n; ++i) {
        g.inv[(std::size_t)i] = (n - i) % n;
        for (int j = 0; j < n; ++j) g.set_comp(i, j, (i + j) % n);
    }
    return g;
}

FinGroupoid indiscrete_groupoid(const std::vector<std::string>& objs) {
    FinGroupoid g;
    for (auto& o : objs) g.add_object(o);
    int n = (int)objs.size();
    auto enc = [&](int i, int j) { return i * n + j; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.add_arrow("e" + std::to_string(i) + "_" + std::to_string(j), i, j);
    for (int i = 0; i < n; ++i) g.id_arrow[(std::size_t)i] = enc(i, i);
    g.inv.resize(g.arrows.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            g.inv[(std::size_t)enc(i, j)] = enc(j, i);
            for (int k = 0; k < n; ++k) g.set_comp(enc(i, j), enc(j, k), enc(i, k));
        }
    return g;
}

FinGroupoid discrete_groupoid(const std::vector<std::string>& objs) {
    FinGroupoid g;
    for (auto& o : objs) g.add_object(o);
    for (std::size_t i = 0; i < objs.size(); ++i) {
        g.add_arrow("id_" + objs[i], (int)i, (int)i);
        g.id_arrow[i] = (int)i;
        g.set_comp((int)i, (int)i, (int)i);
    }
    g.inv.resize(objs.size());
    for (std::size_t i = 0; i < objs.size(); ++i) g.inv[i] = (int)i;
    return g;
}

std::vector<int> vertex_group(const FinGroupoid& g, int obj) {
    std::vector<int> out;
    for (std::size_t e = 0; e < g.arrows.size(); ++e)
        if (g.src[e] == obj && g.tgt[e] == obj) out.push_back((int)e);
    return out;
}

// ---------------------------------------------------------------------------
// isomorphism / equivalence

namespace {

// backtracking isomorphism search on groupoids; prunes with degree profiles
struct IsoSearch {
    const FinGroupoid& a;
    const FinGroupoid& b;
    std::vector<int> omap;  // a-object -> b-object or -1
    std::vector<int> amap;  // a-arrow -> b-arrow or -1
    std::vector<char> bused_obj, bused_arr;

    IsoSearch(const FinGroupoid& x, const FinGroupoid& y)
        : a(x), b(y), omap(x.objects.size(), -1), amap(x.arrows.size(), -1),
          bused_obj(y.objects.size(), 0), bused_arr(y.arrows.size(), 0) {}

    bool feasible_obj(int ao, int bo) const {
        int adeg = 0, bdeg = 0, aend = 0, bend = 0;
        for (std::size_t e = 0; e < a.arrows.size(); ++e) {
            if (a.src[e] == ao) ++adeg;
            if (a.src[e] == ao && a.tgt[e] == ao) ++aend;
        }
        for (std::size_t e = 0; e < b.arrows.size(); ++e) {
            if (b.src[e] == bo) ++bdeg;
            if (b.src[e] == bo && b.tgt[e] == bo) ++bend;
        }
        return adeg == bdeg && aend == bend;
    }

    bool assign_arrows(std::size_t e) {
        if (e == a.arrows.size()) return check();
        if (amap[e] >= 0) return assign_arrows(e + 1);
        int bs = omap[(std::size_t)a.src[e]], bt = omap[(std::size_t)a.tgt[e]];
        for (std::size_t f = 0; f < b.arrows.size(); ++f) {
            if (bused_arr[f]) continue;
            if (b.src[f] != bs || b.tgt[f] != bt) continue;
            if ((int)e == a.id_arrow[(std::size_t)a.src[e]] &&
                (int)f != b.id_arrow[(std::size_t)b.src[f]])
                continue;
            amap[e] = (int)f;
            bused_arr[f] = 1;
            // local consistency with already-assigned composites
            bool ok = true;
            for (std::size_t g = 0; g <= e && ok; ++g) {
                if (amap[g] < 0) continue;
                if (a.composable((int)e, (int)g)) {
                    int c = a.then_((int)e, (int)g);
                    if (amap[(std::size_t)c] >= 0 &&
                        b.then_((int)f, amap[g]) != amap[(std::size_t)c])
                        ok = false;
                }
                if (a.composable((int)g, (int)e)) {
                    int c = a.then_((int)g, (int)e);
                    if (amap[(std::size_t)c] >= 0 &&
                        b.then_(amap[g], (int)f) != amap[(std::size_t)c])
                        ok = false;
                }
            }
            if (ok && assign_arrows(e + 1)) return true;
            amap[e] = -1;
            bused_arr[f] = 0;
        }
        return false;
    }

    bool check() const {
        for (std::size_t e = 0; e < a.arrows.size(); ++e)
            for (std::size_t g = 0; g < a.arrows.size(); ++g)
                if (a.composable((int)e, (int)g))
                    if (b.then_(amap[e], amap[g]) != amap[(std::size_t)a.then_((int)e, (int)g)])
                        return false;
        return true;
    }

    bool assign_objects(std::size_t o) {
        if (o == a.objects.size()) return assign_arrows(0);
        for (std::size_t p = 0; p < b.objects.size(); ++p) {
            if (bused_obj[p] || !feasible_obj((int)o, (int)p)) continue;
            omap[o] = (int)p;
            bused_obj[p] = 1;
            if (assign_objects(o + 1)) return true;
            omap[o] = -1;
            bused_obj[p] = 0;
        }
        return false;
    }
};

}  // namespace

bool isomorphic(const FinGroupoid& a, const FinGroupoid& b) {
    if (a.objects.size() != b.objects.size() || a.arrows.size() != b.arrows.size()) return false;
    IsoSearch s(a, b);
    return s.assign_objects(0);
}

bool isomorphic_with(const FinGroupoid& a, const FinGroupoid& b, std::vector<int>* obj_map,
                     std::vector<int>* arr_map) {
    if (a.objects.size() != b.objects.size() || a.arrows.size() != b.arrows.size()) return false;
    IsoSearch s(a, b);
    if (!s.assign_objects(0)) return false;
    if (obj_map) *obj_map = s.omap;
    if (arr_map) *arr_map = s.amap;
    return true;
}

bool isomorphic_over(const FinGroupoid& a, const FinGroupoid& b, const std::vector<int>& obj_map,
                     std::vector<int>* arr_map) {
    if (a.objects.size() != b.objects.size() || a.arrows.size() != b.arrows.size()) return false;
    IsoSearch s(a, b);
    s.omap = obj_map;
    for (int o : obj_map) s.bused_obj[(std::size_t)o] = 1;
    if (!s.assign_arrows(0)) return false;
    if (arr_map) *arr_map = s.amap;
    return true;
}

namespace {

// multiplication table of a vertex group, with element 0 = identity
struct SmallGroup {
    std::vector<std::vector<int>> mul;
    std::vector<int> order;  // element orders
};

SmallGroup vertex_group_table(const FinGroupoid& g, int obj) {
    auto elems = vertex_group(g, obj);
    std::unordered_map<int, int> pos;
    // identity first
    std::sort(elems.begin(), elems.end(), [&](int x, int y) {
        bool ix = x == g.id_arrow[(std::size_t)obj], iy = y == g.id_arrow[(std::size_t)obj];
        if (ix != iy) return ix;
        return x < y;
    });
    for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = (int)i;
    SmallGroup out;
    out.mul.assign(elems.size(), std::vector<int>(elems.size()));
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = 0; j < elems.size(); ++j)
            out.mul[i][j] = pos[g.then_(elems[i], elems[j])];
    out.order.resize(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) {
        int x = (int)i, n = 1;
        while (x != 0) {
            x = out.mul[(std::size_t)x][i];
            ++n;
        }
        out.order[i] = n;
    }
    return out;
}

bool groups_isomorphic(const SmallGroup& x, const SmallGroup& y) {
    if (x.mul.size() != y.mul.size()) return false;
    auto xo = x.order, yo = y.order;
    std::sort(xo.begin(), xo.end());
    std::sort(yo.begin(), yo.end());
    if (xo != yo) return false;
    std::size_t n = x.mul.size();
    std::vector<int> map(n, -1);
    std::vector<char> used(n, 0);
    map[0] = 0;
    used[0] = 1;
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
        if (i == n) return true;
        for (std::size_t c = 0; c < n; ++c) {
            if (used[c] || x.order[i] != y.order[c]) continue;
            map[i] = (int)c;
            used[c] = 1;
            bool ok = true;
            for (std::size_t j = 0; j <= i && ok; ++j) {
                if (map[j] < 0) continue;
                int xy = x.mul[i][j], yx = x.mul[j][i];
                if (map[(std::size_t)xy] >= 0 &&
                    y.mul[c][(std::size_t)map[j]] != map[(std::size_t)xy])
                    ok = false;
                if (ok && map[(std::size_t)yx] >= 0 &&
                    y.mul[(std::size_t)map[j]][c] != map[(std::size_t)yx])
                    ok = false;
            }
            if (ok && rec(i + 1)) return true;
            map[i] = -1;
            used[c] = 0;
        }
        return false;
    };
    return rec(1);
}

}  // namespace

bool equivalent(const FinGroupoid& a, const FinGroupoid& b) {
    int ca = 0, cb = 0;
    auto pa = pi0(a, &ca), pb = pi0(b, &cb);
    if (ca != cb) return false;
    // one vertex group per component
    std::vector<int> repa((std::size_t)ca, -1), repb((std::size_t)cb, -1);
    for (std::size_t o = 0; o < a.objects.size(); ++o)
        if (repa[(std::size_t)pa[o]] < 0) repa[(std::size_t)pa[o]] = (int)o;
    for (std::size_t o = 0; o < b.objects.size(); ++o)
        if (repb[(std::size_t)pb[o]] < 0) repb[(std::size_t)pb[o]] = (int)o;
    std::vector<char> used((std::size_t)cb, 0);
    for (int i = 0; i < ca; ++i) {
        auto gx = vertex_group_table(a, repa[(std::size_t)i]);
        bool matched = false;
        for (int j = 0; j < cb && !matched; ++j) {
            if (used[(std::size_t)j]) continue;
            auto gy = vertex_group_table(b, repb[(std::size_t)j]);
            if (groups_isomorphic(gx, gy)) {
                used[(std::size_t)j] = 1;
                matched = true;
            }
        }
        if (!matched) return false;
    }
    return true;
}

bool looks_like_groupoid_nerve(const simp::TruncSSet& x) {
    if (x.top_dim < 2) return false;
    if (!simp::is_csk2_fibrant(x)) return false;
    // unique horn fillers at n = 2 (groupoid Kan uniqueness)
    std::map<std::pair<int, int>, int> c01, c02, c12;
    for (std::size_t s = 0; s < x.size(2); ++s) {
        int d0 = x.face(2, 0, (int)s), d1 = x.face(2, 1, (int)s), d2 = x.face(2, 2, (int)s);
        if (++c02[{d0, d2}] > 1) return false;
        if (++c12[{d1, d2}] > 1) return false;
        if (++c01[{d0, d1}] > 1) return false;
    }
    // boundaries determine simplices at level 3 when present
    if (x.top_dim >= 3) {
        std::map<std::array<int, 4>, int> seen;
        for (std::size_t s = 0; s < x.size(3); ++s) {
            std::array<int, 4> key{x.face(3, 0, (int)s), x.face(3, 1, (int)s),
                                   x.face(3, 2, (int)s), x.face(3, 3, (int)s)};
            if (++seen[key] > 1) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// restricted diagonal n-equivalence (declared in simp.hpp)

}  // namespace tcat::gpd

namespace tcat::simp {

bool is_diagonal_n_equivalence(const BiSSetMap& f, int n) {
    const TruncBiSSet& w = *f.source;
    const TruncBiSSet& v = *f.target;
    for (int k = 0; k <= n; ++k) {
        if (!w.has_level(k, 0) || !v.has_level(k, 0)) break;
        TruncSSet wk = w.column_at(k), vk = v.column_at(k);
        if (wk.top_dim < 2 || vk.top_dim < 2)
            throw UnsupportedLevel("diagonal equivalence: level too shallow");
        if (!gpd::looks_like_groupoid_nerve(wk) || !gpd::looks_like_groupoid_nerve(vk))
            throw UnsupportedLevel("diagonal equivalence: level is not a groupoid nerve");
        auto fw = gpd::fundamental_groupoid(wk);
        auto fv = gpd::fundamental_groupoid(vk);
        // induced functor on fundamental groupoids
        std::vector<int> omap(wk.size(0)), amap(fw.g.arrows.size(), -1);
        for (std::size_t o = 0; o < wk.size(0); ++o)
            omap[o] = f.level_map[(std::size_t)k][0][o];
        for (std::size_t e = 0; e < wk.size(1); ++e)
            amap[(std::size_t)fw.edge_class[e]] =
                fv.edge_class[(std::size_t)f.level_map[(std::size_t)k][1][e]];
        int eq = n - k;
        // pi0 bijection
        int cw = 0, cv = 0;
        auto pw = gpd::pi0(fw.g, &cw), pv = gpd::pi0(fv.g, &cv);
        std::vector<int> img((std::size_t)cw, -1);
        std::vector<char> hit((std::size_t)cv, 0);
        for (std::size_t o = 0; o < wk.size(0); ++o) {
            int cc = pw[o], dd = pv[(std::size_t)omap[o]];
            if (img[(std::size_t)cc] < 0) {
                img[(std::size_t)cc] = dd;
                hit[(std::size_t)dd] = 1;
            } else if (img[(std::size_t)cc] != dd)
                return false;
        }
        if (cw != cv) return false;
        for (char h : hit)
            if (!h) return false;
        if (eq >= 1) {
            // pi1 isomorphism at every basepoint: the functor restricted to
            // each vertex group must be bijective
            for (std::size_t o = 0; o < wk.size(0); ++o) {
                auto vg = gpd::vertex_group(fw.g, (int)o);
                auto vh = gpd::vertex_group(fv.g, omap[o]);
                if (vg.size() != vh.size()) return false;
                std::set<int> images;
                for (int e : vg) images.insert(amap[(std::size_t)e]);
                if (images.size() != vg.size()) return false;
            }
        }
    }
    return true;
}

}  // namespace tcat::simp
