#include "tcat/track.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tcat::track {

using ablin::AbHom;
using ablin::FGAbGroup;
using ablin::Int;
using ablin::IntMatrix;

int TrackCategory::add_track(const std::string& id, int f0, int f1) {
    int t = tracks.add(id);
    tsrc.push_back(f0);
    ttgt.push_back(f1);
    return t;
}

std::vector<int> TrackCategory::hom_tracks(int f0, int f1) const {
    std::vector<int> out;
    for (std::size_t t = 0; t < tracks.size(); ++t)
        if (tsrc[t] == f0 && ttgt[t] == f1) out.push_back((int)t);
    return out;
}

std::vector<std::string> validate_track(const TrackCategory& d) {
    auto bad = d.base.validate();
    if (!bad.empty()) return bad;
    const auto& b = d.base;
    for (std::size_t t = 0; t < d.tracks.size(); ++t) {
        int f0 = d.tsrc[t], f1 = d.ttgt[t];
        if (b.src[(std::size_t)f0] != b.src[(std::size_t)f1] ||
            b.tgt[(std::size_t)f0] != b.tgt[(std::size_t)f1])
            return {"track between non-parallel 1-cells: " + d.tracks.name((int)t)};
    }
    if (d.tid.size() != b.arrows.size() || d.tinv.size() != d.tracks.size())
        return {"identity or inverse track tables not total"};
    for (std::size_t f = 0; f < b.arrows.size(); ++f) {
        int e = d.tid[f];
        if (d.tsrc[(std::size_t)e] != (int)f || d.ttgt[(std::size_t)e] != (int)f)
            return {"identity track ill-typed at " + b.arrows.name((int)f)};
    }
    for (std::size_t x = 0; x < d.tracks.size(); ++x)
        for (std::size_t z = 0; z < d.tracks.size(); ++z) {
            bool comp = d.ttgt[x] == d.tsrc[z];
            auto it = d.vcomp.find(pair_key((int)x, (int)z));
            if (comp != (it != d.vcomp.end())) return {"vertical composition domain mismatch"};
            if (comp) {
                int c = it->second;
                if (d.tsrc[(std::size_t)c] != d.tsrc[x] || d.ttgt[(std::size_t)c] != d.ttgt[z])
                    return {"vertical composite ill-typed"};
            }
        }
    for (std::size_t x = 0; x < d.tracks.size(); ++x) {
        if (d.boxplus(d.tid[(std::size_t)d.tsrc[x]], (int)x) != (int)x ||
            d.boxplus((int)x, d.tid[(std::size_t)d.ttgt[x]]) != (int)x)
            return {"vertical unit law fails"};
        int i = d.tinv[x];
        if (d.tsrc[(std::size_t)i] != d.ttgt[x] || d.ttgt[(std::size_t)i] != d.tsrc[x] ||
            d.boxplus((int)x, i) != d.tid[(std::size_t)d.tsrc[x]] ||
            d.boxplus(i, (int)x) != d.tid[(std::size_t)d.ttgt[x]])
            return {"vertical inverse law fails"};
    }
    for (std::size_t x = 0; x < d.tracks.size(); ++x)
        for (std::size_t y = 0; y < d.tracks.size(); ++y) {
            if (d.ttgt[x] != d.tsrc[y]) continue;
            for (std::size_t z = 0; z < d.tracks.size(); ++z) {
                if (d.ttgt[y] != d.tsrc[z]) continue;
                if (d.boxplus(d.boxplus((int)x, (int)y), (int)z) !=
                    d.boxplus((int)x, d.boxplus((int)y, (int)z)))
                    return {"vertical associativity fails"};
            }
        }
    // whisker totality, typing, functoriality
    for (std::size_t t = 0; t < d.tracks.size(); ++t) {
        int a = b.src[(std::size_t)d.tsrc[t]], c = b.tgt[(std::size_t)d.tsrc[t]];
        for (std::size_t f = 0; f < b.arrows.size(); ++f) {
            if ((int)b.src[f] == c) {
                auto it = d.wpost.find(pair_key((int)f, (int)t));
                if (it == d.wpost.end()) return {"post whisker missing"};
                int w = it->second;
                if (d.tsrc[(std::size_t)w] != b.then_(d.tsrc[t], (int)f) ||
                    d.ttgt[(std::size_t)w] != b.then_(d.ttgt[t], (int)f))
                    return {"post whisker ill-typed"};
            }
            if ((int)b.tgt[f] == a) {
                auto it = d.wpre.find(pair_key((int)f, (int)t));
                if (it == d.wpre.end()) return {"pre whisker missing"};
                int w = it->second;
                if (d.tsrc[(std::size_t)w] != b.then_((int)f, d.tsrc[t]) ||
                    d.ttgt[(std::size_t)w] != b.then_((int)f, d.ttgt[t]))
                    return {"pre whisker ill-typed"};
            }
        }
    }
    for (std::size_t f = 0; f < b.arrows.size(); ++f) {
        for (std::size_t g = 0; g < b.arrows.size(); ++g) {
            if (b.tgt[g] == b.src[f] &&
                d.post((int)f, d.tid[g]) != d.tid[(std::size_t)b.then_((int)g, (int)f)])
                return {"post whisker does not preserve identity tracks"};
            if (b.tgt[f] == b.src[g] &&
                d.pre((int)f, d.tid[g]) != d.tid[(std::size_t)b.then_((int)f, (int)g)])
                return {"pre whisker does not preserve identity tracks"};
        }
        for (std::size_t x = 0; x < d.tracks.size(); ++x)
            for (std::size_t z = 0; z < d.tracks.size(); ++z) {
                if (d.ttgt[x] != d.tsrc[z]) continue;
                int c = b.tgt[(std::size_t)d.tsrc[x]], a = b.src[(std::size_t)d.tsrc[x]];
                if ((int)b.src[f] == c &&
                    d.post((int)f, d.boxplus((int)x, (int)z)) !=
                        d.boxplus(d.post((int)f, (int)x), d.post((int)f, (int)z)))
                    return {"post whisker not functorial"};
                if ((int)b.tgt[f] == a &&
                    d.pre((int)f, d.boxplus((int)x, (int)z)) !=
                        d.boxplus(d.pre((int)f, (int)x), d.pre((int)f, (int)z)))
                    return {"pre whisker not functorial"};
            }
    }
    for (std::size_t f = 0; f < b.arrows.size(); ++f)
        for (std::size_t g = 0; g < b.arrows.size(); ++g) {
            if (!b.composable((int)g, (int)f)) continue;  // g then f
            int fg = b.then_((int)g, (int)f);
            for (std::size_t t = 0; t < d.tracks.size(); ++t) {
                if (b.tgt[(std::size_t)d.tsrc[t]] == b.src[g] &&
                    d.post(fg, (int)t) != d.post((int)f, d.post((int)g, (int)t)))
                    return {"post whisker not compatible with composition"};
                if (b.src[(std::size_t)d.tsrc[t]] == b.tgt[f] &&
                    d.pre(fg, (int)t) != d.pre((int)g, d.pre((int)f, (int)t)))
                    return {"pre whisker not compatible with composition"};
            }
        }
    // identity 1-cells whisker trivially
    for (std::size_t t = 0; t < d.tracks.size(); ++t) {
        int a = b.src[(std::size_t)d.tsrc[t]], c = b.tgt[(std::size_t)d.tsrc[t]];
        if (d.post(b.id_arrow[(std::size_t)c], (int)t) != (int)t ||
            d.pre(b.id_arrow[(std::size_t)a], (int)t) != (int)t)
            return {"identity 1-cell whiskers nontrivially"};
    }
    // interchange
    for (std::size_t zeta = 0; zeta < d.tracks.size(); ++zeta)
        for (std::size_t xi = 0; xi < d.tracks.size(); ++xi) {
            int g0 = d.tsrc[zeta], g1 = d.ttgt[zeta];
            int f0 = d.tsrc[xi], f1 = d.ttgt[xi];
            if (b.tgt[(std::size_t)g0] != b.src[(std::size_t)f0]) continue;
            int lhs = d.boxplus(d.post(f0, (int)zeta), d.pre(g1, (int)xi));
            int rhs = d.boxplus(d.pre(g0, (int)xi), d.post(f1, (int)zeta));
            if (lhs != rhs) return {"interchange law fails"};
        }
    return {};
}

TrackCategory discrete_track(const gpd::FinCat& base) {
    TrackCategory d;
    d.base = base;
    for (std::size_t f = 0; f < base.arrows.size(); ++f) {
        int t = d.add_track("id<" + base.arrows.name((int)f) + ">", (int)f, (int)f);
        d.tid.push_back(t);
        d.tinv.push_back(t);
        d.vcomp[pair_key(t, t)] = t;
    }
    for (std::size_t f = 0; f < base.arrows.size(); ++f)
        for (std::size_t g = 0; g < base.arrows.size(); ++g) {
            if (base.tgt[g] == base.src[f])
                d.wpost[pair_key((int)f, (int)g)] =
                    d.tid[(std::size_t)base.then_((int)g, (int)f)];
            if (base.tgt[f] == base.src[g])
                d.wpre[pair_key((int)f, (int)g)] = d.tid[(std::size_t)base.then_((int)f, (int)g)];
        }
    return d;
}

gpd::FinCat homotopy_category(const TrackCategory& d, std::vector<int>* cell_class) {
    UnionFind uf(d.base.arrows.size());
    for (std::size_t t = 0; t < d.tracks.size(); ++t) uf.join(d.tsrc[t], d.ttgt[t]);
    int nc = 0;
    auto cls = uf.classes(&nc);
    gpd::FinCat out;
    for (std::size_t o = 0; o < d.base.objects.size(); ++o)
        out.add_object(d.base.objects.name((int)o));
    std::vector<int> rep((std::size_t)nc, -1);
    for (std::size_t f = 0; f < d.base.arrows.size(); ++f) {
        int c = cls[f];
        if (rep[(std::size_t)c] < 0 ||
            d.base.arrows.name((int)f) < d.base.arrows.name(rep[(std::size_t)c]))
            rep[(std::size_t)c] = (int)f;
    }
    for (int c = 0; c < nc; ++c)
        out.add_arrow("{" + d.base.arrows.name(rep[(std::size_t)c]) + "}",
                      d.base.src[(std::size_t)rep[(std::size_t)c]],
                      d.base.tgt[(std::size_t)rep[(std::size_t)c]]);
    for (std::size_t f = 0; f < d.base.arrows.size(); ++f) {
        int c = cls[f];
        if (out.src[(std::size_t)c] != d.base.src[f] || out.tgt[(std::size_t)c] != d.base.tgt[f])
            throw std::runtime_error("homotopy_category: tracks between non-parallel cells");
    }
    for (std::size_t o = 0; o < d.base.objects.size(); ++o)
        out.id_arrow[o] = cls[(std::size_t)d.base.id_arrow[o]];
    for (std::size_t f = 0; f < d.base.arrows.size(); ++f)
        for (std::size_t g = 0; g < d.base.arrows.size(); ++g) {
            if (!d.base.composable((int)f, (int)g)) continue;
            int c = cls[(std::size_t)d.base.then_((int)f, (int)g)];
            auto it = out.comp.find(pair_key(cls[f], cls[g]));
            if (it == out.comp.end())
                out.set_comp(cls[f], cls[g], c);
            else if (it->second != c)
                throw std::runtime_error("homotopy_category: composition not well defined");
        }
    if (cell_class) *cell_class = cls;
    return out;
}

FacCat fac_category(const TrackCategory& d) {
    FacCat out;
    const auto& b = d.base;
    for (std::size_t f = 0; f < b.arrows.size(); ++f) {
        out.cat.add_object("<" + b.arrows.name((int)f) + ">");
        out.obj_cell.push_back((int)f);
    }
    for (std::size_t f = 0; f < b.arrows.size(); ++f)
        for (std::size_t h = 0; h < b.arrows.size(); ++h) {
            if (b.tgt[h] != b.src[f]) continue;
            int fh = b.then_((int)h, (int)f);
            for (std::size_t k = 0; k < b.arrows.size(); ++k) {
                if (b.src[k] != b.tgt[f]) continue;
                int kfh = b.then_(fh, (int)k);
                for (std::size_t t = 0; t < d.tracks.size(); ++t) {
                    if (d.tsrc[t] != kfh) continue;
                    int g = d.ttgt[t];
                    out.cat.add_arrow("(" + b.arrows.name((int)h) + "," + b.arrows.name((int)k) +
                                          "," + d.tracks.name((int)t) + ")",
                                      (int)f, g);
                    out.arr_data.push_back({(int)h, (int)k, (int)t});
                }
            }
        }
    for (std::size_t f = 0; f < b.arrows.size(); ++f) {
        int ida = b.id_arrow[(std::size_t)b.src[f]];
        int idb = b.id_arrow[(std::size_t)b.tgt[f]];
        std::string nm = "(" + b.arrows.name(ida) + "," + b.arrows.name(idb) + "," +
                         d.tracks.name(d.tid[f]) + ")";
        out.cat.id_arrow[f] = out.cat.arrows.get(nm);
    }
    for (std::size_t a1 = 0; a1 < out.cat.arrows.size(); ++a1)
        for (std::size_t a2 = 0; a2 < out.cat.arrows.size(); ++a2) {
            if (out.cat.tgt[a1] != out.cat.src[a2]) continue;
            const auto& s1 = out.arr_data[a1];
            const auto& s2 = out.arr_data[a2];
            int h = b.then_(s2.h, s1.h);
            int k = b.then_(s1.k, s2.k);
            int t = d.boxplus(d.pre(s2.h, d.post(s2.k, s1.xi)), s2.xi);
            std::string nm =
                "(" + b.arrows.name(h) + "," + b.arrows.name(k) + "," + d.tracks.name(t) + ")";
            out.cat.set_comp((int)a1, (int)a2, out.cat.arrows.get(nm));
        }
    return out;
}

// ---------------------------------------------------------------------------
// natural systems

AbHom star_hom(const TrackCategory& d, const NaturalSystem& ns, int f, int h, int k, int xi) {
    const auto& b = d.base;
    int fh = b.then_(h, f);
    AbHom hstar = ns.pre(h, f);
    AbHom kstar = ns.post(k, fh);
    const AbHom& xistar = ns.track_act[(std::size_t)xi];
    return xistar.compose_after(kstar.compose_after(hstar));
}

bool homs_equal(const AbHom& a, const AbHom& b) {
    if (!(a.source == b.source) || !(a.target == b.target)) return false;
    for (std::size_t i = 0; i < a.matrix.rows(); ++i)
        for (std::size_t j = 0; j < a.matrix.cols(); ++j) {
            Int diff = a.matrix(i, j) - b.matrix(i, j);
            Int ord = a.target.gen_order(i);
            if (ord == 0) {
                if (diff != 0) return false;
            } else if (diff % ord != 0)
                return false;
        }
    return true;
}

std::vector<std::string> validate_natsys(const TrackCategory& d, const NaturalSystem& k) {
    std::vector<std::string> bad;
    const auto& b = d.base;
    if (k.fiber.size() != b.arrows.size()) return {"natural system: fiber count mismatch"};
    if (k.track_act.size() != d.tracks.size()) return {"natural system: track action missing"};
    auto chk_hom = [&](const AbHom& m, const FGAbGroup& s, const FGAbGroup& t, const char* what) {
        if (!(m.source == s) || !(m.target == t)) {
            bad.push_back(std::string(what) + ": endpoint groups mismatch");
            return false;
        }
        auto v = m.validate();
        bad.insert(bad.end(), v.begin(), v.end());
        return v.empty();
    };
    for (std::size_t g = 0; g < b.arrows.size(); ++g)
        for (std::size_t f = 0; f < b.arrows.size(); ++f) {
            if (!b.composable((int)g, (int)f)) continue;  // g then f
            int fg = b.then_((int)g, (int)f);
            auto itp = k.post_act.find(pair_key((int)f, (int)g));
            auto itq = k.pre_act.find(pair_key((int)g, (int)f));
            if (itp == k.post_act.end() || itq == k.pre_act.end())
                return {"natural system: missing action for a composable pair"};
            if (!chk_hom(itp->second, k.fiber[g], k.fiber[(std::size_t)fg], "post action") ||
                !chk_hom(itq->second, k.fiber[f], k.fiber[(std::size_t)fg], "pre action"))
                return bad;
        }
    for (std::size_t t = 0; t < d.tracks.size(); ++t)
        if (!chk_hom(k.track_act[t], k.fiber[(std::size_t)d.tsrc[t]],
                     k.fiber[(std::size_t)d.ttgt[t]], "track action"))
            return bad;
    // (fg)_* = f_* g_* and (fg)^* = g^* f^*
    for (std::size_t f = 0; f < b.arrows.size(); ++f)
        for (std::size_t g = 0; g < b.arrows.size(); ++g) {
            if (!b.composable((int)g, (int)f)) continue;
            int fg = b.then_((int)g, (int)f);
            for (std::size_t e = 0; e < b.arrows.size(); ++e) {
                if (b.composable((int)e, (int)g)) {  // e then g (then f)
                    int ge = b.then_((int)e, (int)g);
                    if (!homs_equal(k.post(fg, (int)e),
                                    k.post((int)f, ge).compose_after(k.post((int)g, (int)e))))
                        return {"post action not functorial"};
                }
                if (b.composable(fg, (int)e)) {  // fg then e
                    int fe = b.then_((int)f, (int)e);
                    if (!homs_equal(k.pre(fg, (int)e),
                                    k.pre((int)g, fe).compose_after(k.pre((int)f, (int)e))))
                        return {"pre action not functorial"};
                }
            }
        }
    for (std::size_t f = 0; f < b.arrows.size(); ++f) {
        int ida = b.id_arrow[(std::size_t)b.src[f]], idb = b.id_arrow[(std::size_t)b.tgt[f]];
        AbHom ident = AbHom::identity(k.fiber[f]);
        if (!homs_equal(k.pre(ida, (int)f), ident) || !homs_equal(k.post(idb, (int)f), ident))
            return {"identity 1-cells act nontrivially"};
        if (!homs_equal(k.track_act[(std::size_t)d.tid[f]], ident))
            return {"identity tracks act nontrivially"};
    }
    for (std::size_t x = 0; x < d.tracks.size(); ++x)
        for (std::size_t z = 0; z < d.tracks.size(); ++z) {
            if (d.ttgt[x] != d.tsrc[z]) continue;
            if (!homs_equal(k.track_act[(std::size_t)d.boxplus((int)x, (int)z)],
                            k.track_act[z].compose_after(k.track_act[x])))
                return {"track action not functorial under vertical composition"};
        }
    // compatibility of track actions with whiskers (the interchange direction)
    for (std::size_t t = 0; t < d.tracks.size(); ++t) {
        int g0 = d.tsrc[t], g1 = d.ttgt[t];
        for (std::size_t f = 0; f < b.arrows.size(); ++f) {
            if (b.src[f] == b.tgt[(std::size_t)g0]) {
                AbHom lhs = k.track_act[(std::size_t)d.post((int)f, (int)t)].compose_after(
                    k.post((int)f, g0));
                AbHom rhs = k.post((int)f, g1).compose_after(k.track_act[t]);
                if (!homs_equal(lhs, rhs))
                    return {"track action incompatible with post whisker"};
            }
            if (b.tgt[f] == b.src[(std::size_t)g0]) {
                AbHom lhs = k.track_act[(std::size_t)d.pre((int)f, (int)t)].compose_after(
                    k.pre((int)f, g0));
                AbHom rhs = k.pre((int)f, g1).compose_after(k.track_act[t]);
                if (!homs_equal(lhs, rhs)) return {"track action incompatible with pre whisker"};
            }
        }
    }
    return bad;
}

NaturalSystem constant_natsys(const TrackCategory& d, const FGAbGroup& g) {
    NaturalSystem k;
    k.fiber.assign(d.base.arrows.size(), g);
    AbHom ident = AbHom::identity(g);
    for (std::size_t f = 0; f < d.base.arrows.size(); ++f)
        for (std::size_t h = 0; h < d.base.arrows.size(); ++h) {
            if (!d.base.composable((int)h, (int)f)) continue;  // h then f
            k.post_act[pair_key((int)f, (int)h)] = ident;
            k.pre_act[pair_key((int)h, (int)f)] = ident;
        }
    k.track_act.assign(d.tracks.size(), ident);
    return k;
}

std::vector<std::vector<Int>> all_elements(const FGAbGroup& g) {
    if (g.rank > 0) throw std::invalid_argument("all_elements: infinite group");
    std::vector<std::vector<Int>> out;
    std::vector<Int> cur(g.torsion.size(), 0);
    while (true) {
        out.push_back(cur);
        std::size_t i = 0;
        while (i < cur.size() && ++cur[i] == g.torsion[i]) cur[i++] = 0;
        if (i == cur.size()) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// free natural systems

SetNaturalSystem free_natural_system(const std::vector<int>& gen_count, const TrackCategory& d,
                                     const FacCat& fac) {
    SetNaturalSystem out;
    out.fac = &fac;
    out.fiber.assign(d.base.arrows.size(), {});
    for (std::size_t g = 0; g < d.base.arrows.size(); ++g)
        for (std::size_t a = 0; a < fac.cat.arrows.size(); ++a) {
            if (fac.obj_cell[(std::size_t)fac.cat.tgt[a]] != (int)g) continue;
            int f = fac.obj_cell[(std::size_t)fac.cat.src[a]];
            for (int x = 0; x < gen_count[(std::size_t)f]; ++x)
                out.fiber[g].push_back({f, x, (int)a});
        }
    return out;
}

SetNaturalSystem::Elem star_free(const FacCat& fac, int sq, const SetNaturalSystem::Elem& e) {
    return {e.f, e.x, fac.cat.then_(e.sq, sq)};
}

// ---------------------------------------------------------------------------
// modules

std::vector<std::string> validate_module(const TrackCategory& d, const TrackModule& mod) {
    std::vector<std::string> bad = validate_track(mod.m);
    if (!bad.empty()) return bad;
    if (mod.m.base.arrows.size() != d.base.arrows.size())
        return {"module base differs from the base of d"};
    if (mod.p_track.size() != mod.m.tracks.size() || mod.s_track.size() != d.tracks.size())
        return {"module retraction/section not total"};
    for (std::size_t t = 0; t < d.tracks.size(); ++t) {
        int st = mod.s_track[t];
        if (mod.m.tsrc[(std::size_t)st] != d.tsrc[t] || mod.m.ttgt[(std::size_t)st] != d.ttgt[t])
            return {"section ill-typed"};
        if (mod.p_track[(std::size_t)st] != (int)t) return {"p . s is not the identity"};
    }
    for (std::size_t t = 0; t < mod.m.tracks.size(); ++t) {
        int pt = mod.p_track[t];
        if (d.tsrc[(std::size_t)pt] != mod.m.tsrc[t] || d.ttgt[(std::size_t)pt] != mod.m.ttgt[t])
            return {"retraction ill-typed"};
    }
    for (std::size_t x = 0; x < mod.m.tracks.size(); ++x)
        for (std::size_t z = 0; z < mod.m.tracks.size(); ++z) {
            if (mod.m.ttgt[x] != mod.m.tsrc[z]) continue;
            if (mod.p_track[(std::size_t)mod.m.boxplus((int)x, (int)z)] !=
                d.boxplus(mod.p_track[x], mod.p_track[z]))
                return {"retraction not a track functor"};
        }
    for (std::size_t x = 0; x < d.tracks.size(); ++x)
        for (std::size_t z = 0; z < d.tracks.size(); ++z) {
            if (d.ttgt[x] != d.tsrc[z]) continue;
            if (mod.s_track[(std::size_t)d.boxplus((int)x, (int)z)] !=
                mod.m.boxplus(mod.s_track[x], mod.s_track[z]))
                return {"section not a track functor"};
        }
    for (std::size_t f = 0; f < d.base.arrows.size(); ++f) {
        for (std::size_t t = 0; t < mod.m.tracks.size(); ++t) {
            int a = d.base.src[(std::size_t)mod.m.tsrc[t]];
            int c = d.base.tgt[(std::size_t)mod.m.tsrc[t]];
            if ((int)d.base.src[f] == c &&
                mod.p_track[(std::size_t)mod.m.post((int)f, (int)t)] !=
                    d.post((int)f, mod.p_track[t]))
                return {"retraction incompatible with whiskers"};
            if ((int)d.base.tgt[f] == a &&
                mod.p_track[(std::size_t)mod.m.pre((int)f, (int)t)] !=
                    d.pre((int)f, mod.p_track[t]))
                return {"retraction incompatible with whiskers"};
        }
        for (std::size_t t = 0; t < d.tracks.size(); ++t) {
            int a = d.base.src[(std::size_t)d.tsrc[t]];
            int c = d.base.tgt[(std::size_t)d.tsrc[t]];
            if ((int)d.base.src[f] == c &&
                mod.s_track[(std::size_t)d.post((int)f, (int)t)] !=
                    mod.m.post((int)f, mod.s_track[t]))
                return {"section incompatible with whiskers"};
            if ((int)d.base.tgt[f] == a &&
                mod.s_track[(std::size_t)d.pre((int)f, (int)t)] !=
                    mod.m.pre((int)f, mod.s_track[t]))
                return {"section incompatible with whiskers"};
        }
    }
    for (std::size_t f = 0; f < d.base.arrows.size(); ++f) {
        std::vector<int> ker;
        for (std::size_t t = 0; t < mod.m.tracks.size(); ++t)
            if (mod.m.tsrc[t] == (int)f && mod.m.ttgt[t] == (int)f && mod.p_track[t] == d.tid[f])
                ker.push_back((int)t);
        for (int x : ker)
            for (int z : ker)
                if (mod.m.boxplus(x, z) != mod.m.boxplus(z, x)) return {"kernel fiber not abelian"};
    }
    return bad;
}

NaturalSystem module_to_natsys(const TrackCategory& d, const TrackModule& mod,
                               KernelTables* tables) {
    auto bad = validate_module(d, mod);
    if (!bad.empty()) throw NotSplit("module_to_natsys: " + bad.front());
    const auto& b = d.base;
    NaturalSystem out;
    out.fiber.resize(b.arrows.size());

    std::vector<std::vector<int>> ker(b.arrows.size());
    std::vector<ablin::AbelianTable> tab(b.arrows.size());
    std::vector<std::unordered_map<int, int>> pos(b.arrows.size());
    for (std::size_t f = 0; f < b.arrows.size(); ++f) {
        for (std::size_t t = 0; t < mod.m.tracks.size(); ++t)
            if (mod.m.tsrc[t] == (int)f && mod.m.ttgt[t] == (int)f && mod.p_track[t] == d.tid[f])
                ker[f].push_back((int)t);
        std::sort(ker[f].begin(), ker[f].end(),
                  [&](int x, int y) { return mod.m.tracks.name(x) < mod.m.tracks.name(y); });
        for (std::size_t i = 0; i < ker[f].size(); ++i) pos[f][ker[f][i]] = (int)i;
        std::vector<std::vector<int>> mul(ker[f].size(), std::vector<int>(ker[f].size()));
        for (std::size_t i = 0; i < ker[f].size(); ++i)
            for (std::size_t j = 0; j < ker[f].size(); ++j)
                mul[i][j] = pos[f][mod.m.boxplus(ker[f][i], ker[f][j])];
        tab[f] = ablin::abelian_from_table(mul);
        out.fiber[f] = tab[f].group;
    }
    auto gen_elem = [&](std::size_t f, std::size_t j) {
        std::vector<Int> e(out.fiber[f].ngens(), 0);
        e[j] = 1;
        int idx = ablin::element_with_coords(tab[f], e);
        if (idx < 0) throw std::runtime_error("module_to_natsys: generator not realized");
        return ker[f][(std::size_t)idx];
    };
    auto hom_from = [&](std::size_t fs, std::size_t ft, const std::function<int(int)>& img) {
        AbHom h{out.fiber[fs], out.fiber[ft],
                IntMatrix(out.fiber[ft].ngens(), out.fiber[fs].ngens())};
        for (std::size_t j = 0; j < out.fiber[fs].ngens(); ++j) {
            int ie = img(gen_elem(fs, j));
            auto c = tab[ft].coords[(std::size_t)pos[ft][ie]];
            for (std::size_t i = 0; i < c.size(); ++i) h.matrix(i, j) = c[i];
        }
        return h;
    };
    for (std::size_t f = 0; f < b.arrows.size(); ++f)
        for (std::size_t g = 0; g < b.arrows.size(); ++g) {
            if (!b.composable((int)g, (int)f)) continue;  // g then f
            std::size_t fg = (std::size_t)b.then_((int)g, (int)f);
            out.post_act[pair_key((int)f, (int)g)] =
                hom_from(g, fg, [&](int t) { return mod.m.post((int)f, t); });
            out.pre_act[pair_key((int)g, (int)f)] =
                hom_from(f, fg, [&](int t) { return mod.m.pre((int)g, t); });
        }
    out.track_act.resize(d.tracks.size());
    for (std::size_t t = 0; t < d.tracks.size(); ++t) {
        std::size_t f0 = (std::size_t)d.tsrc[t], f1 = (std::size_t)d.ttgt[t];
        int st = mod.s_track[t];
        out.track_act[t] = hom_from(f0, f1, [&](int a) {
            return mod.m.boxplus(mod.m.boxplus(mod.m.tinv[(std::size_t)st], a), st);
        });
    }
    auto check = validate_natsys(d, out);
    if (!check.empty())
        throw NotSplit("module_to_natsys: induced system invalid: " + check.front());
    if (tables) {
        tables->ker = ker;
        tables->tab = tab;
    }
    return out;
}

TrackModule natsys_to_module(const TrackCategory& d, const NaturalSystem& k) {
    for (auto& g : k.fiber)
        if (g.rank > 0) throw std::invalid_argument("natsys_to_module: fibers must be finite");
    TrackModule mod;
    mod.m.base = d.base;
    const auto& b = d.base;
    std::vector<std::vector<std::vector<Int>>> elems(b.arrows.size());
    for (std::size_t f = 0; f < b.arrows.size(); ++f) elems[f] = all_elements(k.fiber[f]);
    auto elem_pos = [&](std::size_t f, const std::vector<Int>& v) {
        auto rv = k.fiber[f].reduce(v);
        for (std::size_t i = 0; i < elems[f].size(); ++i)
            if (elems[f][i] == rv) return (int)i;
        throw std::runtime_error("natsys_to_module: element not found");
    };
    auto coordstr = [](const std::vector<Int>& v) {
        std::string s = "(";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
        return s + ")";
    };
    std::vector<std::vector<int>> tr(d.tracks.size());
    for (std::size_t t = 0; t < d.tracks.size(); ++t) {
        std::size_t f0 = (std::size_t)d.tsrc[t];
        tr[t].resize(elems[f0].size());
        for (std::size_t a = 0; a < elems[f0].size(); ++a)
            tr[t][a] = mod.m.add_track(d.tracks.name((int)t) + coordstr(elems[f0][a]), d.tsrc[t],
                                       d.ttgt[t]);
    }
    mod.m.tid.resize(b.arrows.size());
    for (std::size_t f = 0; f < b.arrows.size(); ++f)
        mod.m.tid[f] = tr[(std::size_t)d.tid[f]]
                         [(std::size_t)elem_pos(f, std::vector<Int>(k.fiber[f].ngens(), 0))];
    mod.m.tinv.assign(0, 0);
    mod.m.tinv.resize(mod.m.tracks.size(), -1);
    // (xi, a) then (zeta, a') = (xi zeta, a + xi_*^{-1} a'); xi_*^{-1} = (xi^{-1})_*
    for (std::size_t x = 0; x < d.tracks.size(); ++x)
        for (std::size_t z = 0; z < d.tracks.size(); ++z) {
            if (d.ttgt[x] != d.tsrc[z]) continue;
            int xz = d.boxplus((int)x, (int)z);
            std::size_t f0 = (std::size_t)d.tsrc[x], f1 = (std::size_t)d.tsrc[z];
            const AbHom& xinv = k.track_act[(std::size_t)d.tinv[x]];
            for (std::size_t a = 0; a < elems[f0].size(); ++a)
                for (std::size_t a2 = 0; a2 < elems[f1].size(); ++a2) {
                    auto pre = xinv.apply(elems[f1][a2]);
                    std::vector<Int> sum(k.fiber[f0].ngens());
                    for (std::size_t i = 0; i < sum.size(); ++i)
                        sum[i] = elems[f0][a][i] + pre[i];
                    mod.m.vcomp[pair_key(tr[x][a], tr[z][a2])] =
                        tr[(std::size_t)xz][(std::size_t)elem_pos(f0, sum)];
                }
        }
    for (std::size_t x = 0; x < d.tracks.size(); ++x) {
        std::size_t f0 = (std::size_t)d.tsrc[x], f1 = (std::size_t)d.ttgt[x];
        for (std::size_t a = 0; a < elems[f0].size(); ++a) {
            auto xa = k.track_act[x].apply(elems[f0][a]);
            for (auto& v : xa) v = -v;
            mod.m.tinv[(std::size_t)tr[x][a]] =
                tr[(std::size_t)d.tinv[x]][(std::size_t)elem_pos(f1, xa)];
        }
    }
    for (std::size_t f = 0; f < b.arrows.size(); ++f)
        for (std::size_t t = 0; t < d.tracks.size(); ++t) {
            std::size_t g0 = (std::size_t)d.tsrc[t];
            int a0 = b.src[g0], c0 = b.tgt[g0];
            if ((int)b.src[f] == c0) {
                int wt = d.post((int)f, (int)t);
                std::size_t fg0 = (std::size_t)b.then_((int)g0, (int)f);
                for (std::size_t a = 0; a < elems[g0].size(); ++a)
                    mod.m.wpost[pair_key((int)f, tr[t][a])] = tr[(std::size_t)wt][(std::size_t)
                        elem_pos(fg0, k.post((int)f, (int)g0).apply(elems[g0][a]))];
            }
            if ((int)b.tgt[f] == a0) {
                int wt = d.pre((int)f, (int)t);
                std::size_t g0f = (std::size_t)b.then_((int)f, (int)g0);
                for (std::size_t a = 0; a < elems[g0].size(); ++a)
                    mod.m.wpre[pair_key((int)f, tr[t][a])] = tr[(std::size_t)wt][(std::size_t)
                        elem_pos(g0f, k.pre((int)f, (int)g0).apply(elems[g0][a]))];
            }
        }
    mod.p_track.resize(mod.m.tracks.size());
    for (std::size_t x = 0; x < d.tracks.size(); ++x)
        for (std::size_t a = 0; a < tr[x].size(); ++a)
            mod.p_track[(std::size_t)tr[x][a]] = (int)x;
    mod.s_track.resize(d.tracks.size());
    for (std::size_t x = 0; x < d.tracks.size(); ++x)
        mod.s_track[x] = tr[x][(std::size_t)elem_pos(
            (std::size_t)d.tsrc[x], std::vector<Int>(k.fiber[(std::size_t)d.tsrc[x]].ngens(), 0))];
    return mod;
}

bool natsys_equal(const TrackCategory& d, const NaturalSystem& a, const NaturalSystem& b) {
    const auto& base = d.base;
    for (std::size_t f = 0; f < base.arrows.size(); ++f)
        if (!(a.fiber[f] == b.fiber[f])) return false;
    for (std::size_t f = 0; f < base.arrows.size(); ++f)
        for (std::size_t g = 0; g < base.arrows.size(); ++g)
            if (base.composable((int)g, (int)f)) {
                if (!homs_equal(a.post((int)f, (int)g), b.post((int)f, (int)g))) return false;
                if (!homs_equal(a.pre((int)g, (int)f), b.pre((int)g, (int)f))) return false;
            }
    for (std::size_t t = 0; t < d.tracks.size(); ++t)
        if (!homs_equal(a.track_act[t], b.track_act[t])) return false;
    return true;
}

std::vector<IntMatrix> automorphisms(const FGAbGroup& g) {
    if (g.rank > 0) throw std::invalid_argument("automorphisms: infinite group");
    auto elems = all_elements(g);
    auto order_of = [&](const std::vector<Int>& v) {
        Int o = 1;
        for (std::size_t i = 0; i < v.size(); ++i) {
            Int d = g.torsion[i];
            Int x = v[i] % d;
            if (x < 0) x += d;
            if (x == 0) continue;
            Int go = d / boost::multiprecision::gcd(x, d);
            o = o / boost::multiprecision::gcd(o, go) * go;
        }
        return o;
    };
    std::size_t n = g.ngens();
    std::vector<IntMatrix> out;
    std::vector<std::vector<Int>> cols((std::size_t)n);
    std::function<void(std::size_t)> rec = [&](std::size_t j) {
        if (j == n) {
            IntMatrix m(n, n);
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t r = 0; r < n; ++r) m(r, c) = cols[c][r];
            AbHom h{g, g, m};
            // bijectivity on elements
            std::set<std::vector<Int>> img;
            for (auto& e : elems) img.insert(h.apply(e));
            if (img.size() == elems.size()) out.push_back(m);
            return;
        }
        Int need = g.gen_order(j);
        for (auto& e : elems) {
            Int o = order_of(e);
            if (need % o != 0) continue;  // image order must divide generator order
            cols[j] = e;
            rec(j + 1);
        }
    };
    rec(0);
    return out;
}

bool natsys_isomorphic(const TrackCategory& d, const NaturalSystem& a, const NaturalSystem& b) {
    const auto& base = d.base;
    std::size_t n = base.arrows.size();
    for (std::size_t f = 0; f < n; ++f)
        if (!(a.fiber[f] == b.fiber[f])) return false;
    std::vector<std::vector<IntMatrix>> autos(n);
    for (std::size_t f = 0; f < n; ++f) autos[f] = automorphisms(a.fiber[f]);
    std::vector<int> pick(n, -1);
    auto compatible = [&](std::size_t f) {
        // check all actions whose endpoints are both assigned
        auto phi = [&](std::size_t c) { return AbHom{a.fiber[c], a.fiber[c], autos[c][(std::size_t)pick[c]]}; };
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                if (!base.composable((int)y, (int)x)) continue;  // y then x
                std::size_t xy = (std::size_t)base.then_((int)y, (int)x);
                if (pick[x] < 0 || pick[y] < 0 || pick[xy] < 0) continue;
                if ((x != f && y != f && xy != f)) continue;
                if (!homs_equal(b.post((int)x, (int)y).compose_after(phi(y)),
                                phi(xy).compose_after(a.post((int)x, (int)y))))
                    return false;
                if (!homs_equal(b.pre((int)y, (int)x).compose_after(phi(x)),
                                phi(xy).compose_after(a.pre((int)y, (int)x))))
                    return false;
            }
        for (std::size_t t = 0; t < d.tracks.size(); ++t) {
            std::size_t f0 = (std::size_t)d.tsrc[t], f1 = (std::size_t)d.ttgt[t];
            if (pick[f0] < 0 || pick[f1] < 0) continue;
            if (f0 != f && f1 != f) continue;
            if (!homs_equal(b.track_act[t].compose_after(phi(f0)),
                            phi(f1).compose_after(a.track_act[t])))
                return false;
        }
        return true;
    };
    std::function<bool(std::size_t)> rec = [&](std::size_t f) -> bool {
        if (f == n) return true;
        for (std::size_t c = 0; c < autos[f].size(); ++c) {
            pick[f] = (int)c;
            if (compatible(f) && rec(f + 1)) return true;
        }
        pick[f] = -1;
        return false;
    };
    return rec(0);
}

TrackCategory product_track(const TrackCategory& a, const TrackCategory& b) {
    TrackCategory out;
    // base product
    gpd::FinCat pb;
    for (std::size_t i = 0; i < a.base.objects.size(); ++i)
        for (std::size_t j = 0; j < b.base.objects.size(); ++j)
            pb.add_object("(" + a.base.objects.name((int)i) + "|" + b.base.objects.name((int)j) +
                          ")");
    auto oenc = [&](int i, int j) {
        return (int)((std::size_t)i * b.base.objects.size() + (std::size_t)j);
    };
    auto aenc = [&](int i, int j) {
        return (int)((std::size_t)i * b.base.arrows.size() + (std::size_t)j);
    };
    for (std::size_t i = 0; i < a.base.arrows.size(); ++i)
        for (std::size_t j = 0; j < b.base.arrows.size(); ++j)
            pb.add_arrow("(" + a.base.arrows.name((int)i) + "|" + b.base.arrows.name((int)j) + ")",
                         oenc(a.base.src[i], b.base.src[j]), oenc(a.base.tgt[i], b.base.tgt[j]));
    for (std::size_t i = 0; i < a.base.objects.size(); ++i)
        for (std::size_t j = 0; j < b.base.objects.size(); ++j)
            pb.id_arrow[(std::size_t)oenc((int)i, (int)j)] =
                aenc(a.base.id_arrow[i], b.base.id_arrow[j]);
    for (auto& [ka, va] : a.base.comp)
        for (auto& [kb, vb] : b.base.comp) {
            int f1 = (int)(ka >> 32), g1 = (int)(ka & 0xffffffff);
            int f2 = (int)(kb >> 32), g2 = (int)(kb & 0xffffffff);
            pb.set_comp(aenc(f1, f2), aenc(g1, g2), aenc(va, vb));
        }
    out.base = pb;
    auto tenc = [&](int i, int j) {
        return (int)((std::size_t)i * b.tracks.size() + (std::size_t)j);
    };
    for (std::size_t i = 0; i < a.tracks.size(); ++i)
        for (std::size_t j = 0; j < b.tracks.size(); ++j)
            out.add_track("(" + a.tracks.name((int)i) + "|" + b.tracks.name((int)j) + ")",
                          aenc(a.tsrc[i], b.tsrc[j]), aenc(a.ttgt[i], b.ttgt[j]));
    out.tid.resize(pb.arrows.size());
    for (std::size_t i = 0; i < a.base.arrows.size(); ++i)
        for (std::size_t j = 0; j < b.base.arrows.size(); ++j)
            out.tid[(std::size_t)aenc((int)i, (int)j)] = tenc(a.tid[i], b.tid[j]);
    out.tinv.resize(out.tracks.size());
    for (std::size_t i = 0; i < a.tracks.size(); ++i)
        for (std::size_t j = 0; j < b.tracks.size(); ++j)
            out.tinv[(std::size_t)tenc((int)i, (int)j)] = tenc(a.tinv[i], b.tinv[j]);
    for (auto& [ka, va] : a.vcomp)
        for (auto& [kb, vb] : b.vcomp) {
            int x1 = (int)(ka >> 32), z1 = (int)(ka & 0xffffffff);
            int x2 = (int)(kb >> 32), z2 = (int)(kb & 0xffffffff);
            out.vcomp[pair_key(tenc(x1, x2), tenc(z1, z2))] = tenc(va, vb);
        }
    for (auto& [ka, va] : a.wpost)
        for (auto& [kb, vb] : b.wpost) {
            int f1 = (int)(ka >> 32), t1 = (int)(ka & 0xffffffff);
            int f2 = (int)(kb >> 32), t2 = (int)(kb & 0xffffffff);
            out.wpost[pair_key(aenc(f1, f2), tenc(t1, t2))] = tenc(va, vb);
        }
    for (auto& [ka, va] : a.wpre)
        for (auto& [kb, vb] : b.wpre) {
            int f1 = (int)(ka >> 32), t1 = (int)(ka & 0xffffffff);
            int f2 = (int)(kb >> 32), t2 = (int)(kb & 0xffffffff);
            out.wpre[pair_key(aenc(f1, f2), tenc(t1, t2))] = tenc(va, vb);
        }
    return out;
}

}  // namespace tcat::track
