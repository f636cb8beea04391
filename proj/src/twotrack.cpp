#include "tcat/twotrack.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace tcat::twotrack {

using ablin::AbHom;
using ablin::FGAbGroup;
using ablin::Int;
using ablin::IntMatrix;
using dblgpd::DoubleGroupoid;

// ---------------------------------------------------------------------------
// split construction

namespace {

std::string coordstr(const std::vector<Int>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
    return s + ")";
}

std::string cell_name(const gpd::FinGroupoid& t, const gen::TwistedComplex::Cell& c) {
    std::ostringstream os;
    os << "w[";
    for (std::size_t i = 0; i < c.chain.size(); ++i)
        os << (i ? "|" : "") << t.arrows.name(c.chain[i]);
    os << "]";
    for (auto& v : c.z0) os << coordstr(v);
    return os.str();
}

struct HomBuild {
    gpd::FinGroupoid t;              // hom track groupoid
    std::vector<int> cell_of;        // t-object -> 1-cell of d
    std::vector<int> track_of;       // t-arrow -> track of d
    std::unordered_map<int, int> local_cell, local_track;  // inverse maps
    gen::TwistedComplex tc;
    dblgpd::PtResult pt;
    bool empty = false;
};

}  // namespace

TwoTrackCategory split_two_track(const track::TrackCategory& d, const track::NaturalSystem& k) {
    {
        auto bd = track::validate_track(d);
        if (!bd.empty()) throw std::invalid_argument("split_two_track: invalid d: " + bd.front());
        auto bk = track::validate_natsys(d, k);
        if (!bk.empty()) throw std::invalid_argument("split_two_track: invalid k: " + bk.front());
    }
    const auto& b = d.base;
    TwoTrackCategory g;
    for (std::size_t o = 0; o < b.objects.size(); ++o) g.objects.add(b.objects.name((int)o));
    int nobj = (int)b.objects.size();
    g.hom_index.assign((std::size_t)nobj, std::vector<int>((std::size_t)nobj, -1));

    std::vector<std::vector<HomBuild>> hb((std::size_t)nobj);
    std::vector<HomBuild> built;
    for (int a = 0; a < nobj; ++a)
        for (int c = 0; c < nobj; ++c) {
            HomBuild h;
            for (std::size_t f = 0; f < b.arrows.size(); ++f)
                if (b.src[f] == a && b.tgt[f] == c) {
                    h.local_cell[(int)f] = (int)h.t.add_object(b.arrows.name((int)f));
                    h.cell_of.push_back((int)f);
                }
            if (h.cell_of.empty()) {
                h.empty = true;
            } else {
                for (std::size_t tr = 0; tr < d.tracks.size(); ++tr) {
                    int f0 = d.tsrc[tr];
                    if (b.src[(std::size_t)f0] != a || b.tgt[(std::size_t)f0] != c) continue;
                    int loc = h.t.add_arrow(d.tracks.name((int)tr), h.local_cell[f0],
                                            h.local_cell[d.ttgt[tr]]);
                    h.local_track[(int)tr] = loc;
                    h.track_of.push_back((int)tr);
                }
                h.t.id_arrow.assign(h.t.objects.size(), -1);
                for (std::size_t i = 0; i < h.cell_of.size(); ++i)
                    h.t.id_arrow[i] = h.local_track[d.tid[(std::size_t)h.cell_of[i]]];
                h.t.inv.assign(h.t.arrows.size(), -1);
                for (std::size_t i = 0; i < h.track_of.size(); ++i)
                    h.t.inv[i] = h.local_track[d.tinv[(std::size_t)h.track_of[i]]];
                for (std::size_t i = 0; i < h.track_of.size(); ++i)
                    for (std::size_t j = 0; j < h.track_of.size(); ++j) {
                        int gi = h.track_of[i], gj = h.track_of[j];
                        if (d.ttgt[(std::size_t)gi] != d.tsrc[(std::size_t)gj]) continue;
                        h.t.set_comp((int)i, (int)j, h.local_track[d.boxplus(gi, gj)]);
                    }
                gen::Twist tw;
                tw.base = &h.t;
                for (int f : h.cell_of) tw.fiber.push_back(k.fiber[(std::size_t)f]);
                for (int tr : h.track_of) tw.transport.push_back(k.track_act[(std::size_t)tr]);
                h.tc = gen::twisted_complex(tw, 5);
                h.pt = dblgpd::pt_of_kan(h.tc.x);
            }
            g.hom_index[(std::size_t)a][(std::size_t)c] = (int)built.size();
            built.push_back(std::move(h));
        }
    for (auto& h : built) g.homs.push_back(h.pt.dg);

    // identity points: the level-1 cell of the identity track at Id_a
    g.id_point.assign((std::size_t)nobj, -1);
    for (int a = 0; a < nobj; ++a) {
        auto& h = built[(std::size_t)g.hom_index[(std::size_t)a][(std::size_t)a]];
        int idc = b.id_arrow[(std::size_t)a];
        int loctr = h.local_track.at(d.tid[(std::size_t)idc]);
        gen::TwistedComplex::Cell c;
        c.chain = {loctr};
        g.id_point[(std::size_t)a] = h.tc.x.levels[1].get(cell_name(h.t, c));
    }

    // composition tables
    for (int a = 0; a < nobj; ++a)
        for (int bb = 0; bb < nobj; ++bb)
            for (int c = 0; c < nobj; ++c) {
                auto& hab = built[(std::size_t)g.hom_index[(std::size_t)a][(std::size_t)bb]];
                auto& hbc = built[(std::size_t)g.hom_index[(std::size_t)bb][(std::size_t)c]];
                auto& hac = built[(std::size_t)g.hom_index[(std::size_t)a][(std::size_t)c]];
                if (hab.empty || hbc.empty) continue;
                TwoTrackCategory::CompTable tab;
                // compose twisted cells at a given level
                auto compose_cell = [&](int lvl, int i, int j) {
                    const auto& ca = hab.tc.cells[(std::size_t)lvl][(std::size_t)i];
                    const auto& cb = hbc.tc.cells[(std::size_t)lvl][(std::size_t)j];
                    gen::TwistedComplex::Cell out;
                    for (int p = 0; p < lvl; ++p) {
                        int ta = hab.track_of[(std::size_t)ca.chain[(std::size_t)p]];
                        int tb = hbc.track_of[(std::size_t)cb.chain[(std::size_t)p]];
                        out.chain.push_back(hac.local_track.at(d.hcomp(ta, tb)));
                    }
                    // base 1-cells at vertex 0
                    int g0 = lvl ? hab.cell_of[(std::size_t)hab.t.src[(std::size_t)ca.chain[0]]]
                                 : -1;
                    int f0 = lvl ? hbc.cell_of[(std::size_t)hbc.t.src[(std::size_t)cb.chain[0]]]
                                 : -1;
                    for (std::size_t zi = 0; zi < ca.z0.size(); ++zi) {
                        auto va = k.post(f0, g0).apply(ca.z0[zi]);
                        auto vb = k.pre(g0, f0).apply(cb.z0[zi]);
                        std::vector<Int> sum(va.size());
                        for (std::size_t x2 = 0; x2 < va.size(); ++x2)
                            sum[x2] = va[x2] + vb[x2];
                        int fg = b.then_(g0, f0);
                        out.z0.push_back(k.fiber[(std::size_t)fg].reduce(sum));
                    }
                    return hac.tc.x.levels[(std::size_t)lvl].get(cell_name(hac.t, out));
                };
                std::size_t na1 = hab.tc.x.size(1), nb1 = hbc.tc.x.size(1);
                tab.point.assign(na1, std::vector<int>(nb1));
                for (std::size_t i = 0; i < na1; ++i)
                    for (std::size_t j = 0; j < nb1; ++j)
                        tab.point[i][j] = compose_cell(1, (int)i, (int)j);
                auto fill_cls = [&](int lvl, const std::vector<int>& cls_a,
                                    const std::vector<int>& cls_b, const std::vector<int>& cls_c,
                                    std::size_t ncls_a, std::size_t ncls_b,
                                    std::vector<std::vector<int>>& out) {
                    out.assign(ncls_a, std::vector<int>(ncls_b, -1));
                    for (std::size_t i = 0; i < hab.tc.x.size(lvl); ++i)
                        for (std::size_t j = 0; j < hbc.tc.x.size(lvl); ++j) {
                            int comp = compose_cell(lvl, (int)i, (int)j);
                            int& slot = out[(std::size_t)cls_a[i]][(std::size_t)cls_b[j]];
                            int val = cls_c[(std::size_t)comp];
                            if (slot < 0)
                                slot = val;
                            else if (slot != val)
                                throw std::runtime_error(
                                    "split_two_track: composition not class-constant");
                        }
                };
                fill_cls(2, hab.pt.vert_class, hbc.pt.vert_class, hac.pt.vert_class,
                         hab.pt.dg.vert.arrows.size(), hbc.pt.dg.vert.arrows.size(), tab.vedge);
                fill_cls(2, hab.pt.horiz_class, hbc.pt.horiz_class, hac.pt.horiz_class,
                         hab.pt.dg.horiz.arrows.size(), hbc.pt.dg.horiz.arrows.size(), tab.hedge);
                fill_cls(3, hab.pt.sq_class, hbc.pt.sq_class, hac.pt.sq_class,
                         hab.pt.dg.squares.size(), hbc.pt.dg.squares.size(), tab.square);
                g.comp[{a, bb, c}] = std::move(tab);
            }
    return g;
}

// ---------------------------------------------------------------------------
// validation

std::vector<std::string> validate_two_track(const TwoTrackCategory& g, bool thorough) {
    std::vector<std::string> bad;
    int nobj = (int)g.objects.size();
    for (int a = 0; a < nobj; ++a)
        for (int bb = 0; bb < nobj; ++bb) {
            const auto& h = g.hom(a, bb);
            auto v = h.validate(thorough);
            for (auto& e : v)
                bad.push_back("hom(" + g.objects.name(a) + "," + g.objects.name(bb) + "): " + e);
            if (!bad.empty()) return bad;
            if (h.points.size() > 0 && !dblgpd::is_two_typical(h))
                return {"hom(" + g.objects.name(a) + "," + g.objects.name(bb) +
                        ") is not two-typical"};
        }
    // composition tables: check functoriality on squares and interchange
    for (auto& [key, tab] : g.comp) {
        auto [a, bb, c] = key;
        const auto& ha = g.hom(a, bb);
        const auto& hb = g.hom(bb, c);
        const auto& hc = g.hom(a, c);
        // boundary compatibility
        for (std::size_t s1 = 0; s1 < ha.squares.size(); ++s1)
            for (std::size_t s2 = 0; s2 < hb.squares.size(); ++s2) {
                int sq = tab.square[s1][s2];
                if (tab.hedge[(std::size_t)ha.sq_top[s1]][(std::size_t)hb.sq_top[s2]] !=
                        hc.sq_top[(std::size_t)sq] ||
                    tab.hedge[(std::size_t)ha.sq_bot[s1]][(std::size_t)hb.sq_bot[s2]] !=
                        hc.sq_bot[(std::size_t)sq] ||
                    tab.vedge[(std::size_t)ha.sq_left[s1]][(std::size_t)hb.sq_left[s2]] !=
                        hc.sq_left[(std::size_t)sq] ||
                    tab.vedge[(std::size_t)ha.sq_right[s1]][(std::size_t)hb.sq_right[s2]] !=
                        hc.sq_right[(std::size_t)sq])
                    return {"composition does not respect square boundaries"};
            }
        if (!thorough) continue;
        // interchange between composition and the two pastings
        for (std::size_t s1 = 0; s1 < ha.squares.size(); ++s1)
            for (std::size_t s2 = 0; s2 < hb.squares.size(); ++s2) {
                for (std::size_t u1 = 0; u1 < ha.squares.size(); ++u1) {
                    if (ha.sq_bot[s1] != ha.sq_top[u1]) continue;
                    for (std::size_t u2 = 0; u2 < hb.squares.size(); ++u2) {
                        if (hb.sq_bot[s2] != hb.sq_top[u2]) continue;
                        int lhs = tab.square[(std::size_t)ha.vpaste((int)s1, (int)u1)]
                                            [(std::size_t)hb.vpaste((int)s2, (int)u2)];
                        int rhs = hc.vpaste(tab.square[s1][s2], tab.square[u1][u2]);
                        if (lhs != rhs) return {"composition not functorial for vpaste"};
                    }
                }
            }
    }
    // associativity on points across composable homs
    for (int a = 0; a < nobj && thorough; ++a)
        for (int b2 = 0; b2 < nobj; ++b2)
            for (int c = 0; c < nobj; ++c)
                for (int dd = 0; dd < nobj; ++dd) {
                    const auto& hab = g.hom(a, b2);
                    const auto& hbc = g.hom(b2, c);
                    const auto& hcd = g.hom(c, dd);
                    if (!hab.points.size() || !hbc.points.size() || !hcd.points.size()) continue;
                    const auto& t_ab_c = g.table(a, b2, c);
                    const auto& t_a_cd = g.table(a, c, dd);
                    const auto& t_bc_d = g.table(b2, c, dd);
                    const auto& t_ab_d = g.table(a, b2, dd);
                    for (std::size_t p = 0; p < hab.points.size(); ++p)
                        for (std::size_t q = 0; q < hbc.points.size(); ++q)
                            for (std::size_t r = 0; r < hcd.points.size(); ++r)
                                if (t_a_cd.point[(std::size_t)t_ab_c.point[p][q]][r] !=
                                    t_ab_d.point[p][(std::size_t)t_bc_d.point[q][r]])
                                    return {"composition of points not associative"};
                }
    return bad;
}

// ---------------------------------------------------------------------------
// homotopy track category

HoData ho_track(const TwoTrackCategory& g) {
    HoData ho;
    int nobj = (int)g.objects.size();
    for (int a = 0; a < nobj; ++a) ho.d.base.add_object(g.objects.name(a));
    ho.cell_of_point.resize(g.homs.size());
    ho.track_of_hedge.resize(g.homs.size());

    std::vector<std::vector<int>> pt_cls(g.homs.size()), ed_cls(g.homs.size());
    std::vector<gpd::FinGroupoid> fgd(g.homs.size());
    std::vector<int> cell_base(g.homs.size(), -1), track_base(g.homs.size(), -1);
    for (int a = 0; a < nobj; ++a)
        for (int bb = 0; bb < nobj; ++bb) {
            int h = g.hom_index[(std::size_t)a][(std::size_t)bb];
            const auto& dg = g.homs[(std::size_t)h];
            if (dg.points.size() == 0) {
                cell_base[(std::size_t)h] = (int)ho.d.base.arrows.size();
                track_base[(std::size_t)h] = (int)ho.d.tracks.size();
                continue;
            }
            fgd[(std::size_t)h] =
                dblgpd::fundamental_groupoid_dg(dg, &ed_cls[(std::size_t)h], &pt_cls[(std::size_t)h]);
            cell_base[(std::size_t)h] = (int)ho.d.base.arrows.size();
            for (std::size_t o = 0; o < fgd[(std::size_t)h].objects.size(); ++o) {
                int cell = ho.d.base.add_arrow("h" + std::to_string(h) + ":" +
                                                   fgd[(std::size_t)h].objects.name((int)o),
                                               a, bb);
                ho.hom_of_cell.push_back(h);
                ho.hom_pair_of_cell.push_back({a, bb});
                (void)cell;
            }
            track_base[(std::size_t)h] = (int)ho.d.tracks.size();
            for (std::size_t e = 0; e < fgd[(std::size_t)h].arrows.size(); ++e) {
                ho.d.add_track("h" + std::to_string(h) + ":" + fgd[(std::size_t)h].arrows.name((int)e),
                               cell_base[(std::size_t)h] + fgd[(std::size_t)h].src[e],
                               cell_base[(std::size_t)h] + fgd[(std::size_t)h].tgt[e]);
            }
            ho.cell_of_point[(std::size_t)h].resize(dg.points.size());
            for (std::size_t p = 0; p < dg.points.size(); ++p)
                ho.cell_of_point[(std::size_t)h][p] = cell_base[(std::size_t)h] + pt_cls[(std::size_t)h][p];
            ho.track_of_hedge[(std::size_t)h].resize(dg.horiz.arrows.size());
            for (std::size_t e = 0; e < dg.horiz.arrows.size(); ++e)
                ho.track_of_hedge[(std::size_t)h][e] =
                    track_base[(std::size_t)h] + ed_cls[(std::size_t)h][e];
        }
    // identities on objects
    ho.d.base.id_arrow.assign((std::size_t)nobj, -1);
    for (int a = 0; a < nobj; ++a) {
        int h = g.hom_index[(std::size_t)a][(std::size_t)a];
        ho.d.base.id_arrow[(std::size_t)a] =
            ho.cell_of_point[(std::size_t)h][(std::size_t)g.id_point[(std::size_t)a]];
    }
    // composition of 1-cells from the point tables
    for (auto& [key, tab] : g.comp) {
        auto [a, bb, c] = key;
        int hab = g.hom_index[(std::size_t)a][(std::size_t)bb];
        int hbc = g.hom_index[(std::size_t)bb][(std::size_t)c];
        int hac = g.hom_index[(std::size_t)a][(std::size_t)c];
        for (std::size_t p = 0; p < tab.point.size(); ++p)
            for (std::size_t q = 0; q < tab.point[p].size(); ++q) {
                int f = ho.cell_of_point[(std::size_t)hab][p];
                int g2 = ho.cell_of_point[(std::size_t)hbc][q];
                int fg = ho.cell_of_point[(std::size_t)hac][(std::size_t)tab.point[p][q]];
                auto it = ho.d.base.comp.find(pair_key(f, g2));
                if (it == ho.d.base.comp.end())
                    ho.d.base.set_comp(f, g2, fg);
                else if (it->second != fg)
                    throw std::runtime_error("ho_track: cell composition not well defined");
            }
    }
    // vertical track structure from the fundamental groupoids
    ho.d.tid.assign(ho.d.base.arrows.size(), -1);
    ho.d.tinv.assign(ho.d.tracks.size(), -1);
    for (std::size_t h = 0; h < g.homs.size(); ++h) {
        if (g.homs[h].points.size() == 0) continue;
        const auto& f = fgd[h];
        for (std::size_t o = 0; o < f.objects.size(); ++o)
            ho.d.tid[(std::size_t)(cell_base[h] + (int)o)] = track_base[h] + f.id_arrow[o];
        for (std::size_t e = 0; e < f.arrows.size(); ++e)
            ho.d.tinv[(std::size_t)(track_base[h] + (int)e)] = track_base[h] + f.inv[e];
        for (auto& [kk, vv] : f.comp)
            ho.d.vcomp[pair_key(track_base[h] + (int)(kk >> 32),
                                track_base[h] + (int)(kk & 0xffffffff))] = track_base[h] + vv;
    }
    // whiskers via the horizontal edge tables
    for (auto& [key, tab] : g.comp) {
        auto [a, bb, c] = key;
        int hab = g.hom_index[(std::size_t)a][(std::size_t)bb];
        int hbc = g.hom_index[(std::size_t)bb][(std::size_t)c];
        int hac = g.hom_index[(std::size_t)a][(std::size_t)c];
        const auto& dga = g.homs[(std::size_t)hab];
        const auto& dgb = g.homs[(std::size_t)hbc];
        for (std::size_t e = 0; e < dga.horiz.arrows.size(); ++e)
            for (std::size_t p = 0; p < dgb.points.size(); ++p) {
                int tr = ho.track_of_hedge[(std::size_t)hab][e];
                int f = ho.cell_of_point[(std::size_t)hbc][p];
                int w = ho.track_of_hedge[(std::size_t)hac][(std::size_t)
                        tab.hedge[e][(std::size_t)dgb.horiz.id_arrow[p]]];
                auto it = ho.d.wpost.find(pair_key(f, tr));
                if (it == ho.d.wpost.end())
                    ho.d.wpost[pair_key(f, tr)] = w;
                else if (it->second != w)
                    throw std::runtime_error("ho_track: post whisker not well defined");
            }
        for (std::size_t e = 0; e < dgb.horiz.arrows.size(); ++e)
            for (std::size_t p = 0; p < dga.points.size(); ++p) {
                int tr = ho.track_of_hedge[(std::size_t)hbc][e];
                int f = ho.cell_of_point[(std::size_t)hab][p];
                int w = ho.track_of_hedge[(std::size_t)hac][(std::size_t)
                        tab.hedge[(std::size_t)dga.horiz.id_arrow[p]][e]];
                auto it = ho.d.wpre.find(pair_key(f, tr));
                if (it == ho.d.wpre.end())
                    ho.d.wpre[pair_key(f, tr)] = w;
                else if (it->second != w)
                    throw std::runtime_error("ho_track: pre whisker not well defined");
            }
    }
    auto bad = track::validate_track(ho.d);
    if (!bad.empty()) throw std::runtime_error("ho_track: invalid result: " + bad.front());
    return ho;
}

// ---------------------------------------------------------------------------
// pi2 natural system

namespace {

// transport of a closed square along a vertical edge
int t_vedge(const DoubleGroupoid& dg, int v, int sq) {
    int vin = dg.vert.inv[(std::size_t)v];
    return dg.vpaste(dg.vpaste(dg.hid[(std::size_t)vin], sq), dg.hid[(std::size_t)v]);
}
// transport of a closed square along a horizontal edge
int t_hedge(const DoubleGroupoid& dg, int e, int sq) {
    int ein = dg.horiz.inv[(std::size_t)e];
    return dg.hpaste(dg.hpaste(dg.vid[(std::size_t)ein], sq), dg.vid[(std::size_t)e]);
}

// shortest mixed path between points, as (is_vert, edge) steps
std::vector<std::pair<bool, int>> point_path(const DoubleGroupoid& dg, int from, int to) {
    if (from == to) return {};
    std::vector<int> prev(dg.points.size(), -1);
    std::vector<std::pair<bool, int>> via(dg.points.size(), {false, -1});
    std::deque<int> bfs{from};
    prev[(std::size_t)from] = from;
    while (!bfs.empty()) {
        int p = bfs.front();
        bfs.pop_front();
        if (p == to) break;
        for (std::size_t e = 0; e < dg.vert.arrows.size(); ++e) {
            if (dg.vert.src[e] == p && prev[(std::size_t)dg.vert.tgt[e]] < 0) {
                prev[(std::size_t)dg.vert.tgt[e]] = p;
                via[(std::size_t)dg.vert.tgt[e]] = {true, (int)e};
                bfs.push_back(dg.vert.tgt[e]);
            }
        }
        for (std::size_t e = 0; e < dg.horiz.arrows.size(); ++e) {
            if (dg.horiz.src[e] == p && prev[(std::size_t)dg.horiz.tgt[e]] < 0) {
                prev[(std::size_t)dg.horiz.tgt[e]] = p;
                via[(std::size_t)dg.horiz.tgt[e]] = {false, (int)e};
                bfs.push_back(dg.horiz.tgt[e]);
            }
        }
    }
    if (prev[(std::size_t)to] < 0) throw LiftMissing("no path between points");
    std::vector<std::pair<bool, int>> path;
    for (int p = to; p != from; p = prev[(std::size_t)p]) path.push_back(via[(std::size_t)p]);
    std::reverse(path.begin(), path.end());
    return path;
}

int transport_to(const DoubleGroupoid& dg, int sq, int from, int to) {
    for (auto& [isv, e] : point_path(dg, from, to)) sq = isv ? t_vedge(dg, e, sq) : t_hedge(dg, e, sq);
    return sq;
}

}  // namespace

Pi2Natsys pi2_natsys(const TwoTrackCategory& g, const HoData& ho) {
    Pi2Natsys out;
    std::size_t ncell = ho.d.base.arrows.size();
    out.pi2.resize(ncell);
    out.base_point.assign(ncell, -1);
    for (std::size_t f = 0; f < ncell; ++f) {
        int h = ho.hom_of_cell[f];
        const auto& dg = g.homs[(std::size_t)h];
        for (std::size_t p = 0; p < dg.points.size(); ++p)
            if (ho.cell_of_point[(std::size_t)h][p] == (int)f) {
                out.base_point[f] = (int)p;
                break;
            }
        if (out.base_point[f] < 0) throw std::runtime_error("pi2_natsys: cell with no point");
        out.pi2[f] = dblgpd::pi2_at(dg, out.base_point[f]);
    }
    out.k.fiber.resize(ncell);
    for (std::size_t f = 0; f < ncell; ++f) out.k.fiber[f] = out.pi2[f].group;

    auto gen_square = [&](std::size_t f, std::size_t j) {
        std::vector<Int> e(out.pi2[f].group.ngens(), 0);
        e[j] = 1;
        int idx = ablin::element_with_coords(out.pi2[f].tab, e);
        if (idx < 0) throw std::runtime_error("pi2_natsys: generator not realized");
        return out.pi2[f].squares[(std::size_t)idx];
    };
    auto coords_of = [&](std::size_t f, int sq) {
        auto it = out.pi2[f].sq_pos.find(sq);
        if (it == out.pi2[f].sq_pos.end())
            throw std::runtime_error("pi2_natsys: square outside the vertex group");
        return out.pi2[f].tab.coords[(std::size_t)it->second];
    };
    auto hom_from = [&](std::size_t fs, std::size_t ft, const std::function<int(int)>& img) {
        AbHom hh{out.pi2[fs].group, out.pi2[ft].group,
                 IntMatrix(out.pi2[ft].group.ngens(), out.pi2[fs].group.ngens())};
        for (std::size_t j = 0; j < out.pi2[fs].group.ngens(); ++j) {
            auto c = coords_of(ft, img(gen_square(fs, j)));
            for (std::size_t i = 0; i < c.size(); ++i) hh.matrix(i, j) = c[i];
        }
        return hh;
    };

    const auto& b = ho.d.base;
    for (std::size_t f = 0; f < ncell; ++f)
        for (std::size_t g2 = 0; g2 < ncell; ++g2) {
            if (!b.composable((int)g2, (int)f)) continue;  // g2 then f
            std::size_t fg = (std::size_t)b.then_((int)g2, (int)f);
            auto [a, bb] = ho.hom_pair_of_cell[g2];
            auto [bb2, c] = ho.hom_pair_of_cell[f];
            const auto& tab = g.table(a, bb, c);
            int hac = g.hom_index[(std::size_t)a][(std::size_t)c];
            const auto& dgc = g.homs[(std::size_t)hac];
            const auto& dga = g.hom(a, bb);
            const auto& dgb = g.hom(bb, c);
            int dbl_f = dgb.vid[(std::size_t)dgb.horiz.id_arrow[(std::size_t)out.base_point[f]]];
            int dbl_g = dga.vid[(std::size_t)dga.horiz.id_arrow[(std::size_t)out.base_point[g2]]];
            int q = tab.point[(std::size_t)out.base_point[g2]][(std::size_t)out.base_point[f]];
            out.k.post_act[pair_key((int)f, (int)g2)] = hom_from(g2, fg, [&](int sq) {
                int comp = tab.square[(std::size_t)sq][(std::size_t)dbl_f];
                return transport_to(dgc, comp, q, out.base_point[fg]);
            });
            out.k.pre_act[pair_key((int)g2, (int)f)] = hom_from(f, fg, [&](int sq) {
                int comp = tab.square[(std::size_t)dbl_g][(std::size_t)sq];
                return transport_to(dgc, comp, q, out.base_point[fg]);
            });
        }
    out.k.track_act.resize(ho.d.tracks.size());
    for (std::size_t t = 0; t < ho.d.tracks.size(); ++t) {
        std::size_t f0 = (std::size_t)ho.d.tsrc[t], f1 = (std::size_t)ho.d.ttgt[t];
        int h = ho.hom_of_cell[f0];
        const auto& dg = g.homs[(std::size_t)h];
        // least horizontal edge representing the track
        int rep = -1;
        for (std::size_t e = 0; e < dg.horiz.arrows.size(); ++e)
            if (ho.track_of_hedge[(std::size_t)h][e] == (int)t) {
                rep = (int)e;
                break;
            }
        if (rep < 0) throw std::runtime_error("pi2_natsys: track without edge");
        out.k.track_act[t] = hom_from(f0, f1, [&](int sq) {
            int cur = transport_to(dg, sq, out.base_point[f0], dg.horiz.src[(std::size_t)rep]);
            cur = t_hedge(dg, rep, cur);
            return transport_to(dg, cur, dg.horiz.tgt[(std::size_t)rep], out.base_point[f1]);
        });
    }
    auto bad = track::validate_natsys(ho.d, out.k);
    if (!bad.empty()) throw std::runtime_error("pi2_natsys: induced system invalid: " + bad.front());
    return out;
}

// ---------------------------------------------------------------------------
// sections and the obstruction cocycle

Section choose_section(const TwoTrackCategory& g, const HoData& ho, std::uint64_t seed) {
    Section s;
    s.seed = seed;
    gen::Rng rng(seed * 0x9e3779b97f4a7c15ull + 1);
    std::size_t ncell = ho.d.base.arrows.size();
    s.cell_rep.assign(ncell, -1);
    for (std::size_t f = 0; f < ncell; ++f) {
        int h = ho.hom_of_cell[f];
        std::vector<int> cand;
        for (std::size_t p = 0; p < g.homs[(std::size_t)h].points.size(); ++p)
            if (ho.cell_of_point[(std::size_t)h][p] == (int)f) cand.push_back((int)p);
        if (cand.empty()) throw LiftMissing("choose_section: cell without representative");
        s.cell_rep[f] = seed == 0 ? cand.front() : cand[(std::size_t)rng.pick((int)cand.size())];
    }
    s.track_rep.assign(ho.d.tracks.size(), -1);
    for (std::size_t t = 0; t < ho.d.tracks.size(); ++t) {
        int h = ho.hom_of_cell[(std::size_t)ho.d.tsrc[t]];
        std::vector<int> cand;
        for (std::size_t e = 0; e < g.homs[(std::size_t)h].horiz.arrows.size(); ++e)
            if (ho.track_of_hedge[(std::size_t)h][e] == (int)t) cand.push_back((int)e);
        if (cand.empty()) throw LiftMissing("choose_section: track without representative");
        s.track_rep[t] = seed == 0 ? cand.front() : cand[(std::size_t)rng.pick((int)cand.size())];
    }
    s.sq_rank.resize(g.homs.size());
    for (std::size_t h = 0; h < g.homs.size(); ++h) {
        auto& r = s.sq_rank[h];
        r.resize(g.homs[h].squares.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = i;
        if (seed != 0)
            std::shuffle(r.begin(), r.end(), rng.eng);
    }
    return s;
}

namespace {

// seed-least square with the given top and bottom edges; vid when equal
int base_square(const DoubleGroupoid& dg, const std::vector<std::size_t>& rank, int top, int bot) {
    if (top == bot) return dg.vid[(std::size_t)top];
    int best = -1;
    for (std::size_t sq = 0; sq < dg.squares.size(); ++sq) {
        if (dg.sq_top[sq] != top || dg.sq_bot[sq] != bot) continue;
        if (best < 0 || rank[sq] < rank[(std::size_t)best]) best = (int)sq;
    }
    if (best < 0) throw LiftMissing("no square between homotopic edges");
    return best;
}

// close a (top, bot) square into a pi2 element at the source of its top edge
int close_square(const DoubleGroupoid& dg, const std::vector<std::size_t>& rank, int sq) {
    int top = dg.sq_top[(std::size_t)sq], bot = dg.sq_bot[(std::size_t)sq];
    int cl = dg.vpaste(sq, base_square(dg, rank, bot, top));
    // conjugate the closed-at-edge loop down to the identity edge
    return dg.hpaste(cl, dg.vid[(std::size_t)dg.horiz.inv[(std::size_t)top]]);
}

}  // namespace

std::vector<Int> psi(const TwoTrackCategory& g, const HoData& ho, const Pi2Natsys& p2,
                     const Section& s, const bwcoh::TrackNerve& nerve, int tau) {
    // faces of the 3-simplex in the nerve of ho.d
    const auto& d0 = nerve.two_data[(std::size_t)nerve.x.face(3, 0, tau)];  // (g, f, k, theta)
    const auto& d2 = nerve.two_data[(std::size_t)nerve.x.face(3, 2, tau)];  // (h, k, l, xi)
    const auto& d3 = nerve.two_data[(std::size_t)nerve.x.face(3, 3, tau)];  // (h, g, m, eta)
    int cell_h = d3[0], cell_g = d3[1], cell_f = d0[1], cell_l = d2[2];
    int eta = d3[3], theta = d0[3];
    auto [a, bobj] = ho.hom_pair_of_cell[(std::size_t)cell_h];
    auto [b2, c] = ho.hom_pair_of_cell[(std::size_t)cell_g];
    auto [c2, dd] = ho.hom_pair_of_cell[(std::size_t)cell_f];

    int had = g.hom_index[(std::size_t)a][(std::size_t)dd];
    const DoubleGroupoid& HD = g.homs[(std::size_t)had];
    const auto& rank_ad = s.sq_rank[(std::size_t)had];

    // whiskered section edges of the two outer faces
    int hac = g.hom_index[(std::size_t)a][(std::size_t)c];
    const DoubleGroupoid& HAC = g.homs[(std::size_t)hac];
    int P_f = s.cell_rep[(std::size_t)cell_f];
    int P_h = s.cell_rep[(std::size_t)cell_h];
    const auto& tab_acd = g.table(a, c, dd);
    const auto& tab_abd = g.table(a, bobj, dd);
    int hbd = g.hom_index[(std::size_t)bobj][(std::size_t)dd];
    const DoubleGroupoid& HBD = g.homs[(std::size_t)hbd];
    const DoubleGroupoid& HAB = g.hom(a, bobj);

    int A = tab_acd.hedge[(std::size_t)s.track_rep[(std::size_t)eta]]
                         [(std::size_t)g.hom(c, dd).horiz.id_arrow[(std::size_t)P_f]];
    int C = tab_abd.hedge[(std::size_t)HAB.horiz.id_arrow[(std::size_t)P_h]]
                         [(std::size_t)s.track_rep[(std::size_t)theta]];
    (void)HBD;
    (void)HAC;
    (void)b2;
    (void)c2;

    auto defect = [&](int edge) {
        int t = ho.track_of_hedge[(std::size_t)had][(std::size_t)edge];
        int ref = s.track_rep[(std::size_t)t];
        if (ref == edge) return std::vector<Int>(p2.pi2[(std::size_t)cell_l].group.ngens(), 0);
        int w = base_square(HD, rank_ad, edge, ref);
        int cl = close_square(HD, rank_ad, w);
        int at = HD.horiz.src[(std::size_t)edge];
        int moved = transport_to(HD, cl, at, p2.base_point[(std::size_t)cell_l]);
        auto it = p2.pi2[(std::size_t)cell_l].sq_pos.find(moved);
        if (it == p2.pi2[(std::size_t)cell_l].sq_pos.end())
            throw LiftMissing("psi: defect outside pi2");
        return p2.pi2[(std::size_t)cell_l].tab.coords[(std::size_t)it->second];
    };
    auto va = defect(A);
    auto vc = defect(C);
    std::vector<Int> out(va.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = va[i] - vc[i];
    return p2.pi2[(std::size_t)cell_l].group.reduce(out);
}

std::vector<Int> bw_cocycle(const TwoTrackCategory& g, const HoData& ho, const Pi2Natsys& p2,
                            const Section& s, const bwcoh::TrackNerve& nerve) {
    auto lay4 = bwcoh::cochain_group(nerve, p2.k, 4);
    std::vector<Int> phi(lay4.group.ngens(), 0);
    for (std::size_t sg = 0; sg < nerve.x.size(4); ++sg) {
        const FGAbGroup& fib = p2.k.fiber[(std::size_t)lay4.fiber_of[sg]];
        std::vector<Int> acc(fib.ngens(), 0);
        for (int i = 0; i <= 4; ++i) {
            int tau = nerve.x.face(4, i, (int)sg);
            auto v = psi(g, ho, p2, s, nerve, tau);
            auto tr = bwcoh::face_transport(nerve, p2.k, 3, (int)sg, i);
            auto tv = tr.apply(v);
            int sgn = (i % 2 == 0) ? 1 : -1;
            for (std::size_t x2 = 0; x2 < acc.size(); ++x2) acc[x2] += sgn * tv[x2];
        }
        acc = fib.reduce(acc);
        for (std::size_t j = 0; j < fib.ngens(); ++j) {
            std::size_t coord = j < fib.rank
                                    ? (std::size_t)lay4.free_off[sg] + j
                                    : (std::size_t)lay4.tor_off[sg] + (j - fib.rank);
            phi[coord] = acc[j];
        }
    }
    return phi;
}

bool is_cocycle(const Pi2Natsys& p2, const bwcoh::TrackNerve& nerve,
                const std::vector<Int>& phi) {
    for (auto& v : bwcoh::apply_coboundary(nerve, p2.k, 4, phi))
        if (v != 0) return false;
    return true;
}

ClassTester::ClassTester(const Pi2Natsys& p2, const bwcoh::TrackNerve& nerve) {
    AbHom d3 = bwcoh::coboundary(nerve, p2.k, 3);
    auto lay = bwcoh::cochain_group(nerve, p2.k, 4);
    c4 = lay.group;
    std::size_t nrel = c4.torsion.size();
    IntMatrix m(c4.ngens(), d3.matrix.cols() + nrel);
    for (std::size_t r = 0; r < d3.matrix.rows(); ++r)
        for (std::size_t c = 0; c < d3.matrix.cols(); ++c) m(r, c) = d3.matrix(r, c);
    for (std::size_t t = 0; t < nrel; ++t)
        m(c4.rank + t, d3.matrix.cols() + t) = c4.torsion[t];
    rows = m.rows();
    cols = m.cols();
    snf = ablin::smith_normal_form(m);
}

bool ClassTester::same(const std::vector<Int>& phi1, const std::vector<Int>& phi2) const {
    std::vector<Int> diff(phi1.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = phi1[i] - phi2[i];
    diff = c4.reduce(diff);
    std::vector<Int> y;
    return ablin::solve(snf, rows, cols, diff, y);
}

bool same_class(const Pi2Natsys& p2, const bwcoh::TrackNerve& nerve,
                const std::vector<Int>& phi1, const std::vector<Int>& phi2) {
    return ClassTester(p2, nerve).same(phi1, phi2);
}

BwClass bw_class(const TwoTrackCategory& g, int nseeds) {
    HoData ho = ho_track(g);
    Pi2Natsys p2 = pi2_natsys(g, ho);
    bwcoh::TrackNerve nerve = bwcoh::track_nerve(ho.d, 5);
    AbHom d3 = bwcoh::coboundary(nerve, p2.k, 3);
    AbHom d4 = bwcoh::coboundary(nerve, p2.k, 4);
    auto ph = ablin::presented_cohomology(d3, d4);
    BwClass out;
    out.h4 = ph.group;
    bool first = true;
    for (int seed = 0; seed < nseeds; ++seed) {
        Section s = choose_section(g, ho, (std::uint64_t)seed);
        auto phi = bw_cocycle(g, ho, p2, s, nerve);
        for (auto& v : d4.apply(phi))
            if (v != 0) throw NotACocycle("bw_class: the assembled cochain is not a cocycle");
        auto cls = ablin::class_of(ph, d4.source, d4, phi);
        if (first) {
            out.coords = cls;
            first = false;
        } else if (cls != out.coords)
            throw NotACocycle("bw_class: class depends on the section seed");
    }
    return out;
}

}  // namespace tcat::twotrack
