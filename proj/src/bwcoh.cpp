#include "tcat/bwcoh.hpp"

#include <algorithm>
#include <map>

namespace tcat::bwcoh {

using ablin::AbHom;
using ablin::FGAbGroup;
using ablin::Int;
using ablin::IntMatrix;
using track::NaturalSystem;
using track::TrackCategory;

int TrackNerve::long_edge(int lvl, int idx) const {
    if (lvl == 0) return d->base.id_arrow[(std::size_t)idx];
    int cur = idx;
    for (int l = lvl; l >= 2; --l) cur = x.face(l, l - 1, cur);
    return cur;
}

TrackNerve track_nerve(const TrackCategory& d, int top) {
    if (top > 6) throw std::invalid_argument("track_nerve: top > 6 not supported");
    const auto& b = d.base;
    TrackNerve n;
    n.d = &d;
    simp::TruncSSet& x = n.x;
    int build_top = std::min(top, 3);
    x.init_levels(build_top);
    for (std::size_t o = 0; o < b.objects.size(); ++o) x.levels[0].add(b.objects.name((int)o));
    for (std::size_t f = 0; f < b.arrows.size(); ++f) x.levels[1].add(b.arrows.name((int)f));
    if (build_top >= 1) {
        auto& d0 = x.faces[1][0];
        auto& d1 = x.faces[1][1];
        for (std::size_t f = 0; f < b.arrows.size(); ++f) {
            d0.push_back(b.tgt[f]);
            d1.push_back(b.src[f]);
        }
        auto& s0 = x.degens[0][0];
        for (std::size_t o = 0; o < b.objects.size(); ++o) s0.push_back(b.id_arrow[o]);
    }
    std::map<std::tuple<int, int, int>, int> two_index;  // (h, g, xi) -> level-2 index
    if (build_top >= 2) {
        struct Two {
            std::string id;
            std::array<int, 4> data;
        };
        std::vector<Two> twos;
        for (std::size_t h = 0; h < b.arrows.size(); ++h)
            for (std::size_t g = 0; g < b.arrows.size(); ++g) {
                if (!b.composable((int)h, (int)g)) continue;
                int gh = b.then_((int)h, (int)g);
                for (std::size_t t = 0; t < d.tracks.size(); ++t) {
                    if (d.tsrc[t] != gh) continue;
                    twos.push_back({"t2:" + b.arrows.name((int)h) + "|" + b.arrows.name((int)g) +
                                        "|" + d.tracks.name((int)t),
                                    {(int)h, (int)g, d.ttgt[t], (int)t}});
                }
            }
        std::sort(twos.begin(), twos.end(), [](const Two& a, const Two& c) { return a.id < c.id; });
        for (auto& t : twos) {
            int idx = x.levels[2].add(t.id);
            n.two_data.push_back(t.data);
            two_index[{t.data[0], t.data[1], t.data[3]}] = idx;
        }
        auto& d0 = x.faces[2][0];
        auto& d1 = x.faces[2][1];
        auto& d2 = x.faces[2][2];
        for (auto& t : n.two_data) {
            d0.push_back(t[1]);
            d1.push_back(t[2]);
            d2.push_back(t[0]);
        }
        auto& s0 = x.degens[1][0];
        auto& s1 = x.degens[1][1];
        for (std::size_t f = 0; f < b.arrows.size(); ++f) {
            s0.push_back(two_index.at({b.id_arrow[(std::size_t)b.src[f]], (int)f, d.tid[f]}));
            s1.push_back(two_index.at({(int)f, b.id_arrow[(std::size_t)b.tgt[f]], d.tid[f]}));
        }
    }
    if (build_top >= 3) {
        struct Three {
            std::array<int, 4> faces;
        };
        std::vector<Three> threes;
        for (std::size_t h = 0; h < b.arrows.size(); ++h)
            for (std::size_t g = 0; g < b.arrows.size(); ++g) {
                if (!b.composable((int)h, (int)g)) continue;
                int gh = b.then_((int)h, (int)g);
                for (std::size_t f = 0; f < b.arrows.size(); ++f) {
                    if (!b.composable((int)g, (int)f)) continue;
                    int fg = b.then_((int)g, (int)f);
                    for (std::size_t eta = 0; eta < d.tracks.size(); ++eta) {
                        if (d.tsrc[eta] != gh) continue;
                        int m = d.ttgt[eta];
                        int fm = b.then_(m, (int)f);
                        for (std::size_t th = 0; th < d.tracks.size(); ++th) {
                            if (d.tsrc[th] != fg) continue;
                            int kk = d.ttgt[th];
                            for (std::size_t ze = 0; ze < d.tracks.size(); ++ze) {
                                if (d.tsrc[ze] != fm) continue;
                                // the pasting equation determines the last face:
                                // xi = (h^* theta)^{-1} (f_* eta) zeta
                                int hth = d.pre((int)h, (int)th);
                                int feta = d.post((int)f, (int)eta);
                                int xi =
                                    d.boxplus(d.boxplus(d.tinv[(std::size_t)hth], feta), (int)ze);
                                Three t3;
                                t3.faces[0] = two_index.at({(int)g, (int)f, (int)th});
                                t3.faces[1] = two_index.at({m, (int)f, (int)ze});
                                t3.faces[2] = two_index.at({(int)h, kk, xi});
                                t3.faces[3] = two_index.at({(int)h, (int)g, (int)eta});
                                threes.push_back(t3);
                            }
                        }
                    }
                }
            }
        std::sort(threes.begin(), threes.end(), [&](const Three& a, const Three& c) {
            for (int i = 0; i < 4; ++i) {
                const std::string& sa = x.levels[2].name(a.faces[(std::size_t)i]);
                const std::string& sc = x.levels[2].name(c.faces[(std::size_t)i]);
                if (sa != sc) return sa < sc;
            }
            return false;
        });
        std::map<std::array<int, 4>, int> three_index;
        for (std::size_t i = 0; i < threes.size(); ++i) {
            int idx = x.levels[3].add("t3:" + std::to_string(i));
            three_index[threes[i].faces] = idx;
        }
        for (int i = 0; i <= 3; ++i) {
            auto& fi = x.faces[3][(std::size_t)i];
            for (auto& t : threes) fi.push_back(t.faces[(std::size_t)i]);
        }
        for (int j = 0; j <= 2; ++j) {
            auto& sj = x.degens[2][(std::size_t)j];
            for (std::size_t s = 0; s < x.size(2); ++s) {
                std::array<int, 4> want{};
                for (int i = 0; i <= 3; ++i) {
                    if (i == j || i == j + 1)
                        want[(std::size_t)i] = (int)s;
                    else if (i < j)
                        want[(std::size_t)i] = x.degen(1, j - 1, x.face(2, i, (int)s));
                    else
                        want[(std::size_t)i] = x.degen(1, j, x.face(2, i - 1, (int)s));
                }
                auto it = three_index.find(want);
                if (it == three_index.end())
                    throw std::runtime_error("track_nerve: degenerate 3-simplex missing");
                sj.push_back(it->second);
            }
        }
    }
    if (top > 3) n.x = simp::coskeleton(x, 3, top);
    auto bad = n.x.validate();
    if (!bad.empty()) throw std::runtime_error("track_nerve: " + bad.front());
    return n;
}

// ---------------------------------------------------------------------------
// cochains

CochainLayout cochain_group(const TrackNerve& n, const NaturalSystem& k, int lvl) {
    CochainLayout out;
    std::size_t cnt = n.x.size(lvl);
    out.free_off.resize(cnt);
    out.tor_off.resize(cnt);
    out.fiber_of.resize(cnt);
    std::size_t free_total = 0;
    for (std::size_t s = 0; s < cnt; ++s) {
        int f = n.long_edge(lvl, (int)s);
        out.fiber_of[s] = f;
        out.free_off[s] = (int)free_total;
        free_total += k.fiber[(std::size_t)f].rank;
    }
    std::size_t tor_total = 0;
    for (std::size_t s = 0; s < cnt; ++s) {
        out.tor_off[s] = (int)(free_total + tor_total);
        for (const auto& t : k.fiber[(std::size_t)out.fiber_of[s]].torsion) {
            out.group.torsion.push_back(t);
            ++tor_total;
        }
    }
    out.group.rank = free_total;
    return out;
}

namespace {

inline std::size_t blk(const CochainLayout& lay, const FGAbGroup& fib, std::size_t s,
                       std::size_t j) {
    return j < fib.rank ? (std::size_t)lay.free_off[s] + j
                        : (std::size_t)lay.tor_off[s] + (j - fib.rank);
}

}  // namespace

AbHom face_transport(const TrackNerve& n, const NaturalSystem& k, int lvl, int simplex, int i) {
    int ntop = lvl + 1;
    int tau = n.x.face(ntop, i, simplex);
    int dom_fiber = n.long_edge(lvl, tau);
    const FGAbGroup& df = k.fiber[(std::size_t)dom_fiber];
    if (i == 0) {
        if (ntop == 1) return k.pre(simplex, dom_fiber);
        int rho = simplex;  // d_2 ... d_{ntop-1} keeps vertices {0, 1, ntop}
        for (int l = ntop; l >= 3; --l) rho = n.x.face(l, 2, rho);
        const auto& td = n.two_data[(std::size_t)rho];
        return k.track_act[(std::size_t)td[3]].compose_after(k.pre(td[0], dom_fiber));
    }
    if (i == ntop) {
        if (ntop == 1) return k.post(simplex, dom_fiber);
        int rho = simplex;  // d_1 ... d_{ntop-2} keeps vertices {0, ntop-1, ntop}
        for (int l = ntop; l >= 3; --l) rho = n.x.face(l, 1, rho);
        const auto& td = n.two_data[(std::size_t)rho];
        return k.track_act[(std::size_t)td[3]].compose_after(k.post(td[1], dom_fiber));
    }
    return AbHom::identity(df);
}

AbHom coboundary(const TrackNerve& n, const NaturalSystem& k, int lvl) {
    CochainLayout dom = cochain_group(n, k, lvl);
    CochainLayout cod = cochain_group(n, k, lvl + 1);
    IntMatrix mat(cod.group.ngens(), dom.group.ngens());
    int ntop = lvl + 1;
    for (std::size_t s = 0; s < n.x.size(ntop); ++s) {
        const FGAbGroup& cf = k.fiber[(std::size_t)cod.fiber_of[s]];
        for (int i = 0; i <= ntop; ++i) {
            int tau = n.x.face(ntop, i, (int)s);
            const FGAbGroup& df = k.fiber[(std::size_t)dom.fiber_of[(std::size_t)tau]];
            int sgn = (i % 2 == 0) ? 1 : -1;
            AbHom tr = face_transport(n, k, lvl, (int)s, i);
            for (std::size_t r = 0; r < cf.ngens(); ++r)
                for (std::size_t c = 0; c < df.ngens(); ++c) {
                    const Int& v = tr.matrix(r, c);
                    if (v != 0)
                        mat(blk(cod, cf, s, r), blk(dom, df, (std::size_t)tau, c)) += sgn * v;
                }
        }
    }
    return AbHom{dom.group, cod.group, std::move(mat)};
}

std::vector<Int> apply_coboundary(const TrackNerve& n, const NaturalSystem& k, int lvl,
                                  const std::vector<Int>& c) {
    CochainLayout dom = cochain_group(n, k, lvl);
    CochainLayout cod = cochain_group(n, k, lvl + 1);
    if (c.size() != dom.group.ngens()) throw std::invalid_argument("apply_coboundary: bad cochain");
    std::vector<Int> out(cod.group.ngens(), 0);
    int ntop = lvl + 1;
    for (std::size_t s = 0; s < n.x.size(ntop); ++s) {
        const FGAbGroup& cf = k.fiber[(std::size_t)cod.fiber_of[s]];
        std::vector<Int> acc(cf.ngens(), 0);
        for (int i = 0; i <= ntop; ++i) {
            int tau = n.x.face(ntop, i, (int)s);
            const FGAbGroup& df = k.fiber[(std::size_t)dom.fiber_of[(std::size_t)tau]];
            std::vector<Int> val(df.ngens());
            for (std::size_t j = 0; j < df.ngens(); ++j)
                val[j] = c[blk(dom, df, (std::size_t)tau, j)];
            auto tv = face_transport(n, k, lvl, (int)s, i).apply(val);
            int sgn = (i % 2 == 0) ? 1 : -1;
            for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += sgn * tv[j];
        }
        acc = cf.reduce(acc);
        for (std::size_t j = 0; j < cf.ngens(); ++j) out[blk(cod, cf, s, j)] = acc[j];
    }
    return out;
}

std::vector<FGAbGroup> bw_cohomology_range(const TrackCategory& d, const NaturalSystem& k,
                                           int maxdeg) {
    TrackNerve n = track_nerve(d, maxdeg + 1);
    std::vector<AbHom> delta;
    for (int l = 0; l <= maxdeg; ++l) delta.push_back(coboundary(n, k, l));
    std::vector<FGAbGroup> out;
    for (int deg = 0; deg <= maxdeg; ++deg) {
        AbHom below =
            deg == 0 ? AbHom::zero(FGAbGroup{}, delta[0].source) : delta[(std::size_t)(deg - 1)];
        out.push_back(ablin::presented_cohomology(below, delta[(std::size_t)deg]).group);
    }
    return out;
}

FGAbGroup bw_cohomology(const TrackCategory& d, const NaturalSystem& k, int deg) {
    return bw_cohomology_range(d, k, deg)[(std::size_t)deg];
}

// ---------------------------------------------------------------------------
// classical oracle on the ordinary nerve

namespace {

struct ClassicalLayout {
    FGAbGroup group;
    std::vector<int> free_off, tor_off, fiber_of;
};

int chain_long_edge(const simp::TruncSSet& x, const std::vector<int>& edge_arrow,
                    const std::vector<int>& vert_id, int lvl, int idx) {
    if (lvl == 0) return vert_id[(std::size_t)idx];
    int cur = idx;
    for (int l = lvl; l >= 2; --l) cur = x.face(l, l - 1, cur);
    return edge_arrow[(std::size_t)cur];
}

}  // namespace

std::vector<FGAbGroup> classical_bw_range(const gpd::FinCat& e, const NaturalSystem& k,
                                          int maxdeg) {
    simp::TruncSSet x = gpd::nerve(e, maxdeg + 1);
    std::vector<int> edge_arrow(x.size(1));
    for (std::size_t i = 0; i < x.size(1); ++i) {
        const std::string& id = x.levels[1].name((int)i);  // "[name]"
        edge_arrow[i] = e.arrows.get(id.substr(1, id.size() - 2));
    }
    std::vector<int> vert_id(x.size(0));
    for (std::size_t v = 0; v < x.size(0); ++v)
        vert_id[v] = e.id_arrow[(std::size_t)e.objects.get(x.levels[0].name((int)v))];

    auto layout = [&](int lvl) {
        ClassicalLayout out;
        std::size_t cnt = x.size(lvl);
        out.free_off.resize(cnt);
        out.tor_off.resize(cnt);
        out.fiber_of.resize(cnt);
        std::size_t free_total = 0;
        for (std::size_t s = 0; s < cnt; ++s) {
            out.fiber_of[s] = chain_long_edge(x, edge_arrow, vert_id, lvl, (int)s);
            out.free_off[s] = (int)free_total;
            free_total += k.fiber[(std::size_t)out.fiber_of[s]].rank;
        }
        std::size_t tor_total = 0;
        for (std::size_t s = 0; s < cnt; ++s) {
            out.tor_off[s] = (int)(free_total + tor_total);
            for (const auto& t : k.fiber[(std::size_t)out.fiber_of[s]].torsion) {
                out.group.torsion.push_back(t);
                ++tor_total;
            }
        }
        out.group.rank = free_total;
        return out;
    };
    auto blk2 = [&](const ClassicalLayout& lay, const FGAbGroup& fib, std::size_t s,
                    std::size_t j) {
        return j < fib.rank ? (std::size_t)lay.free_off[s] + j
                            : (std::size_t)lay.tor_off[s] + (j - fib.rank);
    };
    auto delta = [&](int lvl) {
        ClassicalLayout dom = layout(lvl), cod = layout(lvl + 1);
        IntMatrix mat(cod.group.ngens(), dom.group.ngens());
        int ntop = lvl + 1;
        for (std::size_t s = 0; s < x.size(ntop); ++s) {
            const FGAbGroup& cf = k.fiber[(std::size_t)cod.fiber_of[s]];
            for (int i = 0; i <= ntop; ++i) {
                int tau = x.face(ntop, i, (int)s);
                const FGAbGroup& df = k.fiber[(std::size_t)dom.fiber_of[(std::size_t)tau]];
                int sgn = (i % 2 == 0) ? 1 : -1;
                AbHom tr = AbHom::identity(df);
                if (i == 0) {
                    int first = (int)s;
                    for (int l = ntop; l >= 2; --l) first = x.face(l, l, first);
                    tr = k.pre(edge_arrow[(std::size_t)first], dom.fiber_of[(std::size_t)tau]);
                } else if (i == ntop) {
                    int last = (int)s;
                    for (int l = ntop; l >= 2; --l) last = x.face(l, 0, last);
                    tr = k.post(edge_arrow[(std::size_t)last], dom.fiber_of[(std::size_t)tau]);
                }
                for (std::size_t r = 0; r < cf.ngens(); ++r)
                    for (std::size_t c = 0; c < df.ngens(); ++c) {
                        const Int& v = tr.matrix(r, c);
                        if (v != 0)
                            mat(blk2(cod, cf, s, r), blk2(dom, df, (std::size_t)tau, c)) += sgn * v;
                    }
            }
        }
        return AbHom{dom.group, cod.group, std::move(mat)};
    };
    std::vector<AbHom> ds;
    for (int l = 0; l <= maxdeg; ++l) ds.push_back(delta(l));
    std::vector<FGAbGroup> out;
    for (int deg = 0; deg <= maxdeg; ++deg) {
        AbHom below =
            deg == 0 ? AbHom::zero(FGAbGroup{}, ds[0].source) : ds[(std::size_t)(deg - 1)];
        out.push_back(ablin::presented_cohomology(below, ds[(std::size_t)deg]).group);
    }
    return out;
}

FGAbGroup classical_bw(const gpd::FinCat& e, const NaturalSystem& k, int deg) {
    return classical_bw_range(e, k, deg)[(std::size_t)deg];
}

}  // namespace tcat::bwcoh
