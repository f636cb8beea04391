#include "tcat/io.hpp"

#include <fstream>
#include <set>

namespace tcat::io {

std::string schema_of(const json& j) {
    if (!j.is_object() || !j.contains("schema") || !j["schema"].is_string())
        throw SchemaError("missing schema tag");
    return j["schema"].get<std::string>();
}

namespace {

void expect(const json& j, const char* schema) {
    if (schema_of(j) != schema) throw SchemaError(std::string("expected schema ") + schema);
}

json matrix_to_json(const ablin::IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) r.push_back(m(i, c).str());
        rows.push_back(r);
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

ablin::IntMatrix matrix_from_json(const json& j) {
    ablin::IntMatrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    const auto& rows = j.at("entries");
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t c = 0; c < m.cols(); ++c)
            m(i, c) = ablin::Int(rows.at(i).at(c).get<std::string>());
    return m;
}

json group_to_json(const ablin::FGAbGroup& g) {
    json t = json::array();
    for (auto& d : g.torsion) t.push_back(d.str());
    return json{{"rank", g.rank}, {"torsion", t}};
}

ablin::FGAbGroup group_from_json(const json& j) {
    ablin::FGAbGroup g;
    g.rank = j.at("rank").get<std::size_t>();
    for (auto& d : j.at("torsion")) g.torsion.push_back(ablin::Int(d.get<std::string>()));
    return g;
}

}  // namespace

// ---------------------------------------------------------------------------
// categories and groupoids

json save_cat(const gpd::FinCat& c) {
    json objs = json::array(), arrs = json::array(), comp = json::array();
    for (std::size_t o = 0; o < c.objects.size(); ++o) objs.push_back(c.objects.name((int)o));
    for (std::size_t a = 0; a < c.arrows.size(); ++a)
        arrs.push_back(json{{"id", c.arrows.name((int)a)},
                            {"src", c.objects.name(c.src[a])},
                            {"tgt", c.objects.name(c.tgt[a])}});
    for (auto& [k, v] : c.comp)
        comp.push_back(json::array({c.arrows.name((int)(k >> 32)),
                                    c.arrows.name((int)(k & 0xffffffff)), c.arrows.name(v)}));
    json ids = json::array();
    for (std::size_t o = 0; o < c.objects.size(); ++o)
        ids.push_back(c.arrows.name(c.id_arrow[o]));
    return json{{"schema", "gpd/v1"}, {"objects", objs},   {"arrows", arrs},
                {"comp", comp},       {"identities", ids}};
}

json save_groupoid(const gpd::FinGroupoid& g) {
    json j = save_cat(g);
    json inv = json::array();
    for (std::size_t a = 0; a < g.arrows.size(); ++a)
        inv.push_back(json::array({g.arrows.name((int)a), g.arrows.name(g.inv[a])}));
    j["inv"] = inv;
    return j;
}

gpd::FinCat load_cat(const json& j) {
    expect(j, "gpd/v1");
    gpd::FinCat c;
    for (auto& o : j.at("objects")) c.add_object(o.get<std::string>());
    for (auto& a : j.at("arrows"))
        c.add_arrow(a.at("id").get<std::string>(), c.objects.get(a.at("src").get<std::string>()),
                    c.objects.get(a.at("tgt").get<std::string>()));
    std::size_t oi = 0;
    for (auto& id : j.at("identities")) c.id_arrow[oi++] = c.arrows.get(id.get<std::string>());
    for (auto& t : j.at("comp"))
        c.set_comp(c.arrows.get(t.at(0).get<std::string>()),
                   c.arrows.get(t.at(1).get<std::string>()),
                   c.arrows.get(t.at(2).get<std::string>()));
    return c;
}

gpd::FinGroupoid load_groupoid(const json& j) {
    gpd::FinGroupoid g;
    (gpd::FinCat&)g = load_cat(j);
    if (!j.contains("inv")) throw SchemaError("gpd/v1: groupoid requires inverses");
    g.inv.assign(g.arrows.size(), -1);
    for (auto& p : j.at("inv"))
        g.inv[(std::size_t)g.arrows.get(p.at(0).get<std::string>())] =
            g.arrows.get(p.at(1).get<std::string>());
    return g;
}

// ---------------------------------------------------------------------------
// simplicial sets

json save_sset(const simp::TruncSSet& x) {
    json levels = json::array(), faces = json::array(), degens = json::array();
    for (int n = 0; n <= x.top_dim; ++n) {
        json ids = json::array();
        for (std::size_t s = 0; s < x.size(n); ++s) ids.push_back(x.levels[(std::size_t)n].name((int)s));
        levels.push_back(ids);
    }
    for (int n = 1; n <= x.top_dim; ++n) {
        json per = json::array();
        for (int i = 0; i <= n; ++i) {
            json m = json::object();
            for (std::size_t s = 0; s < x.size(n); ++s)
                m[x.levels[(std::size_t)n].name((int)s)] =
                    x.levels[(std::size_t)(n - 1)].name(x.face(n, i, (int)s));
            per.push_back(m);
        }
        faces.push_back(per);
    }
    for (int n = 0; n < x.top_dim; ++n) {
        json per = json::array();
        for (int jdx = 0; jdx <= n; ++jdx) {
            json m = json::object();
            for (std::size_t s = 0; s < x.size(n); ++s)
                m[x.levels[(std::size_t)n].name((int)s)] =
                    x.levels[(std::size_t)(n + 1)].name(x.degen(n, jdx, (int)s));
            per.push_back(m);
        }
        degens.push_back(per);
    }
    return json{{"schema", "ssset/v1"}, {"top_dim", x.top_dim}, {"levels", levels},
                {"faces", faces},       {"degens", degens}};
}

simp::TruncSSet load_sset(const json& j) {
    expect(j, "ssset/v1");
    simp::TruncSSet x;
    x.init_levels(j.at("top_dim").get<int>());
    const auto& levels = j.at("levels");
    for (int n = 0; n <= x.top_dim; ++n)
        for (auto& id : levels.at((std::size_t)n)) x.levels[(std::size_t)n].add(id.get<std::string>());
    const auto& faces = j.at("faces");
    for (int n = 1; n <= x.top_dim; ++n)
        for (int i = 0; i <= n; ++i) {
            auto& fi = x.faces[(std::size_t)n][(std::size_t)i];
            fi.resize(x.size(n));
            const auto& m = faces.at((std::size_t)(n - 1)).at((std::size_t)i);
            for (auto it = m.begin(); it != m.end(); ++it)
                fi[(std::size_t)x.levels[(std::size_t)n].get(it.key())] =
                    x.levels[(std::size_t)(n - 1)].get(it.value().get<std::string>());
        }
    const auto& degens = j.at("degens");
    for (int n = 0; n < x.top_dim; ++n)
        for (int jdx = 0; jdx <= n; ++jdx) {
            auto& sj = x.degens[(std::size_t)n][(std::size_t)jdx];
            sj.resize(x.size(n));
            const auto& m = degens.at((std::size_t)n).at((std::size_t)jdx);
            for (auto it = m.begin(); it != m.end(); ++it)
                sj[(std::size_t)x.levels[(std::size_t)n].get(it.key())] =
                    x.levels[(std::size_t)(n + 1)].get(it.value().get<std::string>());
        }
    return x;
}

json save_bisset(const simp::TruncBiSSet& w) {
    json j{{"schema", "bisset/v1"},
           {"top_p", w.top_p},
           {"top_q", w.top_q},
           {"triangular", w.triangular}};
    json levels = json::array();
    auto dump_maps = [&](auto getter, int cnt, int p, int q) {
        json per = json::array();
        for (int i = 0; i <= cnt; ++i) {
            json m = json::object();
            for (std::size_t s = 0; s < w.size(p, q); ++s)
                m[w.levels[(std::size_t)p][(std::size_t)q].name((int)s)] = getter(i, (int)s);
            per.push_back(m);
        }
        return per;
    };
    json hf = json::array(), vf = json::array(), hd = json::array(), vd = json::array();
    for (int p = 0; p <= w.top_p; ++p)
        for (int q = 0; q <= w.top_q; ++q) {
            if (!w.has_level(p, q)) continue;
            json ids = json::array();
            for (std::size_t s = 0; s < w.size(p, q); ++s)
                ids.push_back(w.levels[(std::size_t)p][(std::size_t)q].name((int)s));
            levels.push_back(json{{"p", p}, {"q", q}, {"ids", ids}});
            if (p >= 1)
                hf.push_back(json{{"p", p},
                                  {"q", q},
                                  {"maps", dump_maps(
                                               [&](int i, int s) {
                                                   return w.levels[(std::size_t)(p - 1)][(std::size_t)q]
                                                       .name(w.h_faces[(std::size_t)p][(std::size_t)q]
                                                                      [(std::size_t)i][(std::size_t)s]);
                                               },
                                               p, p, q)}});
            if (q >= 1)
                vf.push_back(json{{"p", p},
                                  {"q", q},
                                  {"maps", dump_maps(
                                               [&](int i, int s) {
                                                   return w.levels[(std::size_t)p][(std::size_t)(q - 1)]
                                                       .name(w.v_faces[(std::size_t)p][(std::size_t)q]
                                                                      [(std::size_t)i][(std::size_t)s]);
                                               },
                                               q, p, q)}});
            if (w.has_level(p + 1, q))
                hd.push_back(json{{"p", p},
                                  {"q", q},
                                  {"maps", dump_maps(
                                               [&](int i, int s) {
                                                   return w.levels[(std::size_t)(p + 1)][(std::size_t)q]
                                                       .name(w.h_degens[(std::size_t)p][(std::size_t)q]
                                                                       [(std::size_t)i][(std::size_t)s]);
                                               },
                                               p, p, q)}});
            if (w.has_level(p, q + 1))
                vd.push_back(json{{"p", p},
                                  {"q", q},
                                  {"maps", dump_maps(
                                               [&](int i, int s) {
                                                   return w.levels[(std::size_t)p][(std::size_t)(q + 1)]
                                                       .name(w.v_degens[(std::size_t)p][(std::size_t)q]
                                                                       [(std::size_t)i][(std::size_t)s]);
                                               },
                                               q, p, q)}});
        }
    j["levels"] = levels;
    j["h_faces"] = hf;
    j["v_faces"] = vf;
    j["h_degens"] = hd;
    j["v_degens"] = vd;
    return j;
}

simp::TruncBiSSet load_bisset(const json& j) {
    expect(j, "bisset/v1");
    simp::TruncBiSSet w;
    w.init_levels(j.at("top_p").get<int>(), j.at("top_q").get<int>(),
                  j.at("triangular").get<bool>());
    for (auto& lv : j.at("levels")) {
        int p = lv.at("p").get<int>(), q = lv.at("q").get<int>();
        for (auto& id : lv.at("ids"))
            w.levels[(std::size_t)p][(std::size_t)q].add(id.get<std::string>());
    }
    auto fill = [&](const json& arr, bool horiz, bool face) {
        for (auto& blk : arr) {
            int p = blk.at("p").get<int>(), q = blk.at("q").get<int>();
            auto& tgt = horiz ? (face ? w.h_faces : w.h_degens) : (face ? w.v_faces : w.v_degens);
            int cnt = horiz ? p : q;
            auto& slot = tgt[(std::size_t)p][(std::size_t)q];
            slot.assign((std::size_t)cnt + 1, {});
            int tp = horiz ? (face ? p - 1 : p + 1) : p;
            int tq = horiz ? q : (face ? q - 1 : q + 1);
            for (int i = 0; i <= cnt; ++i) {
                slot[(std::size_t)i].resize(w.size(p, q));
                const auto& m = blk.at("maps").at((std::size_t)i);
                for (auto it = m.begin(); it != m.end(); ++it)
                    slot[(std::size_t)i][(std::size_t)w.levels[(std::size_t)p][(std::size_t)q].get(
                        it.key())] =
                        w.levels[(std::size_t)tp][(std::size_t)tq].get(it.value().get<std::string>());
            }
        }
    };
    fill(j.at("h_faces"), true, true);
    fill(j.at("v_faces"), false, true);
    fill(j.at("h_degens"), true, false);
    fill(j.at("v_degens"), false, false);
    return w;
}

// ---------------------------------------------------------------------------
// track categories, natural systems, modules

json save_track(const track::TrackCategory& d) {
    json j = save_cat(d.base);
    j["schema"] = "track/v1";
    json tracks = json::array(), vcomp = json::array(), tid = json::array(), tinv = json::array();
    json wpost = json::array(), wpre = json::array();
    for (std::size_t t = 0; t < d.tracks.size(); ++t)
        tracks.push_back(json{{"id", d.tracks.name((int)t)},
                              {"src", d.base.arrows.name(d.tsrc[t])},
                              {"tgt", d.base.arrows.name(d.ttgt[t])}});
    for (auto& [k, v] : d.vcomp)
        vcomp.push_back(json::array({d.tracks.name((int)(k >> 32)),
                                     d.tracks.name((int)(k & 0xffffffff)), d.tracks.name(v)}));
    for (std::size_t f = 0; f < d.base.arrows.size(); ++f) tid.push_back(d.tracks.name(d.tid[f]));
    for (std::size_t t = 0; t < d.tracks.size(); ++t) tinv.push_back(d.tracks.name(d.tinv[t]));
    for (auto& [k, v] : d.wpost)
        wpost.push_back(json::array({d.base.arrows.name((int)(k >> 32)),
                                     d.tracks.name((int)(k & 0xffffffff)), d.tracks.name(v)}));
    for (auto& [k, v] : d.wpre)
        wpre.push_back(json::array({d.base.arrows.name((int)(k >> 32)),
                                    d.tracks.name((int)(k & 0xffffffff)), d.tracks.name(v)}));
    j["tracks"] = tracks;
    j["vcomp"] = vcomp;
    j["track_identities"] = tid;
    j["track_inverses"] = tinv;
    j["whisker_post"] = wpost;
    j["whisker_pre"] = wpre;
    return j;
}

track::TrackCategory load_track(const json& j) {
    expect(j, "track/v1");
    json base = j;
    base["schema"] = "gpd/v1";
    track::TrackCategory d;
    d.base = load_cat(base);
    for (auto& t : j.at("tracks"))
        d.add_track(t.at("id").get<std::string>(),
                    d.base.arrows.get(t.at("src").get<std::string>()),
                    d.base.arrows.get(t.at("tgt").get<std::string>()));
    for (auto& id : j.at("track_identities")) d.tid.push_back(d.tracks.get(id.get<std::string>()));
    for (auto& id : j.at("track_inverses")) d.tinv.push_back(d.tracks.get(id.get<std::string>()));
    for (auto& t : j.at("vcomp"))
        d.vcomp[pair_key(d.tracks.get(t.at(0).get<std::string>()),
                         d.tracks.get(t.at(1).get<std::string>()))] =
            d.tracks.get(t.at(2).get<std::string>());
    for (auto& t : j.at("whisker_post"))
        d.wpost[pair_key(d.base.arrows.get(t.at(0).get<std::string>()),
                         d.tracks.get(t.at(1).get<std::string>()))] =
            d.tracks.get(t.at(2).get<std::string>());
    for (auto& t : j.at("whisker_pre"))
        d.wpre[pair_key(d.base.arrows.get(t.at(0).get<std::string>()),
                        d.tracks.get(t.at(1).get<std::string>()))] =
            d.tracks.get(t.at(2).get<std::string>());
    return d;
}

json save_natsys(const track::TrackCategory& d, const track::NaturalSystem& k) {
    json fib = json::object(), post = json::array(), pre = json::array(), tr = json::array();
    for (std::size_t f = 0; f < k.fiber.size(); ++f)
        fib[d.base.arrows.name((int)f)] = group_to_json(k.fiber[f]);
    for (auto& [key, h] : k.post_act)
        post.push_back(json{{"f", d.base.arrows.name((int)(key >> 32))},
                            {"g", d.base.arrows.name((int)(key & 0xffffffff))},
                            {"matrix", matrix_to_json(h.matrix)}});
    for (auto& [key, h] : k.pre_act)
        pre.push_back(json{{"g", d.base.arrows.name((int)(key >> 32))},
                           {"f", d.base.arrows.name((int)(key & 0xffffffff))},
                           {"matrix", matrix_to_json(h.matrix)}});
    for (std::size_t t = 0; t < k.track_act.size(); ++t)
        tr.push_back(json{{"track", d.tracks.name((int)t)},
                          {"matrix", matrix_to_json(k.track_act[t].matrix)}});
    return json{{"schema", "natsys/v1"}, {"fibers", fib}, {"post", post},
                {"pre", pre},            {"track", tr}};
}

track::NaturalSystem load_natsys(const track::TrackCategory& d, const json& j) {
    expect(j, "natsys/v1");
    track::NaturalSystem k;
    k.fiber.resize(d.base.arrows.size());
    for (auto it = j.at("fibers").begin(); it != j.at("fibers").end(); ++it)
        k.fiber[(std::size_t)d.base.arrows.get(it.key())] = group_from_json(it.value());
    for (auto& e : j.at("post")) {
        int f = d.base.arrows.get(e.at("f").get<std::string>());
        int g = d.base.arrows.get(e.at("g").get<std::string>());
        int fg = d.base.then_(g, f);
        k.post_act[pair_key(f, g)] = ablin::AbHom{k.fiber[(std::size_t)g],
                                                  k.fiber[(std::size_t)fg],
                                                  matrix_from_json(e.at("matrix"))};
    }
    for (auto& e : j.at("pre")) {
        int g = d.base.arrows.get(e.at("g").get<std::string>());
        int f = d.base.arrows.get(e.at("f").get<std::string>());
        int fg = d.base.then_(g, f);
        k.pre_act[pair_key(g, f)] = ablin::AbHom{k.fiber[(std::size_t)f],
                                                 k.fiber[(std::size_t)fg],
                                                 matrix_from_json(e.at("matrix"))};
    }
    k.track_act.resize(d.tracks.size());
    for (auto& e : j.at("track")) {
        int t = d.tracks.get(e.at("track").get<std::string>());
        k.track_act[(std::size_t)t] =
            ablin::AbHom{k.fiber[(std::size_t)d.tsrc[(std::size_t)t]],
                         k.fiber[(std::size_t)d.ttgt[(std::size_t)t]],
                         matrix_from_json(e.at("matrix"))};
    }
    return k;
}

json save_module(const track::TrackCategory& d, const track::TrackModule& m) {
    json j{{"schema", "module/v1"}};
    json mt = save_track(m.m);
    j["track"] = mt;
    json p = json::array(), s = json::array();
    for (std::size_t t = 0; t < m.p_track.size(); ++t)
        p.push_back(json::array({m.m.tracks.name((int)t), d.tracks.name(m.p_track[t])}));
    for (std::size_t t = 0; t < m.s_track.size(); ++t)
        s.push_back(json::array({d.tracks.name((int)t), m.m.tracks.name(m.s_track[t])}));
    j["p"] = p;
    j["s"] = s;
    return j;
}

track::TrackModule load_module(const track::TrackCategory& d, const json& j) {
    expect(j, "module/v1");
    track::TrackModule m;
    m.m = load_track(j.at("track"));
    m.p_track.assign(m.m.tracks.size(), -1);
    for (auto& e : j.at("p"))
        m.p_track[(std::size_t)m.m.tracks.get(e.at(0).get<std::string>())] =
            d.tracks.get(e.at(1).get<std::string>());
    m.s_track.assign(d.tracks.size(), -1);
    for (auto& e : j.at("s"))
        m.s_track[(std::size_t)d.tracks.get(e.at(0).get<std::string>())] =
            m.m.tracks.get(e.at(1).get<std::string>());
    return m;
}

// ---------------------------------------------------------------------------
// double groupoids and two-track categories

json save_dgpd(const dblgpd::DoubleGroupoid& g) {
    json j{{"schema", "dgpd/v1"}};
    json pts = json::array();
    for (std::size_t p = 0; p < g.points.size(); ++p) pts.push_back(g.points.name((int)p));
    j["points"] = pts;
    j["vert"] = save_groupoid(g.vert);
    j["horiz"] = save_groupoid(g.horiz);
    json sqs = json::array();
    for (std::size_t s = 0; s < g.squares.size(); ++s)
        sqs.push_back(json{{"id", g.squares.name((int)s)},
                           {"top", g.horiz.arrows.name(g.sq_top[s])},
                           {"bot", g.horiz.arrows.name(g.sq_bot[s])},
                           {"left", g.vert.arrows.name(g.sq_left[s])},
                           {"right", g.vert.arrows.name(g.sq_right[s])}});
    j["squares"] = sqs;
    auto dump_paste = [&](const std::unordered_map<std::int64_t, int>& paste) {
        json out = json::array();
        for (auto& [k, v] : paste)
            out.push_back(json::array({g.squares.name((int)(k >> 32)),
                                       g.squares.name((int)(k & 0xffffffff)),
                                       g.squares.name(v)}));
        return out;
    };
    j["vpaste"] = dump_paste(g.vpaste_);
    j["hpaste"] = dump_paste(g.hpaste_);
    json vid = json::array(), hid = json::array(), vinv = json::array(), hinv = json::array();
    for (std::size_t e = 0; e < g.vid.size(); ++e) vid.push_back(g.squares.name(g.vid[e]));
    for (std::size_t e = 0; e < g.hid.size(); ++e) hid.push_back(g.squares.name(g.hid[e]));
    for (std::size_t s = 0; s < g.vinv.size(); ++s) vinv.push_back(g.squares.name(g.vinv[s]));
    for (std::size_t s = 0; s < g.hinv.size(); ++s) hinv.push_back(g.squares.name(g.hinv[s]));
    j["vid"] = vid;
    j["hid"] = hid;
    j["vinv"] = vinv;
    j["hinv"] = hinv;
    return j;
}

dblgpd::DoubleGroupoid load_dgpd(const json& j) {
    expect(j, "dgpd/v1");
    dblgpd::DoubleGroupoid g;
    for (auto& p : j.at("points")) g.points.add(p.get<std::string>());
    g.vert = load_groupoid(j.at("vert"));
    g.horiz = load_groupoid(j.at("horiz"));
    for (auto& s : j.at("squares")) {
        g.squares.add(s.at("id").get<std::string>());
        g.sq_top.push_back(g.horiz.arrows.get(s.at("top").get<std::string>()));
        g.sq_bot.push_back(g.horiz.arrows.get(s.at("bot").get<std::string>()));
        g.sq_left.push_back(g.vert.arrows.get(s.at("left").get<std::string>()));
        g.sq_right.push_back(g.vert.arrows.get(s.at("right").get<std::string>()));
    }
    for (auto& t : j.at("vpaste"))
        g.vpaste_[pair_key(g.squares.get(t.at(0).get<std::string>()),
                           g.squares.get(t.at(1).get<std::string>()))] =
            g.squares.get(t.at(2).get<std::string>());
    for (auto& t : j.at("hpaste"))
        g.hpaste_[pair_key(g.squares.get(t.at(0).get<std::string>()),
                           g.squares.get(t.at(1).get<std::string>()))] =
            g.squares.get(t.at(2).get<std::string>());
    for (auto& e : j.at("vid")) g.vid.push_back(g.squares.get(e.get<std::string>()));
    for (auto& e : j.at("hid")) g.hid.push_back(g.squares.get(e.get<std::string>()));
    for (auto& e : j.at("vinv")) g.vinv.push_back(g.squares.get(e.get<std::string>()));
    for (auto& e : j.at("hinv")) g.hinv.push_back(g.squares.get(e.get<std::string>()));
    return g;
}

json save_dgpd_sym(const dblgpd::SymmetricPresentation& s) {
    json j = save_dgpd(s.dg);
    j["schema"] = "dgpd-sym/v1";
    j["point_map"] = s.point_map;
    j["edge_map"] = s.edge_map;
    j["square_map"] = s.square_map;
    return j;
}

dblgpd::SymmetricPresentation load_dgpd_sym(const json& j) {
    expect(j, "dgpd-sym/v1");
    json base = j;
    base["schema"] = "dgpd/v1";
    dblgpd::SymmetricPresentation s;
    s.dg = load_dgpd(base);
    s.point_map = j.at("point_map").get<std::vector<int>>();
    s.edge_map = j.at("edge_map").get<std::vector<int>>();
    s.square_map = j.at("square_map").get<std::vector<int>>();
    return s;
}

json save_twotrack(const twotrack::TwoTrackCategory& g) {
    json j{{"schema", "twotrack/v1"}};
    json objs = json::array();
    for (std::size_t o = 0; o < g.objects.size(); ++o) objs.push_back(g.objects.name((int)o));
    j["objects"] = objs;
    j["hom_index"] = g.hom_index;
    json homs = json::array();
    for (auto& h : g.homs) homs.push_back(save_dgpd(h));
    j["homs"] = homs;
    j["id_point"] = g.id_point;
    json comp = json::array();
    for (auto& [key, tab] : g.comp)
        comp.push_back(json{{"a", key[0]},
                            {"b", key[1]},
                            {"c", key[2]},
                            {"point", tab.point},
                            {"vedge", tab.vedge},
                            {"hedge", tab.hedge},
                            {"square", tab.square}});
    j["comp"] = comp;
    return j;
}

twotrack::TwoTrackCategory load_twotrack(const json& j) {
    expect(j, "twotrack/v1");
    twotrack::TwoTrackCategory g;
    for (auto& o : j.at("objects")) g.objects.add(o.get<std::string>());
    g.hom_index = j.at("hom_index").get<std::vector<std::vector<int>>>();
    for (auto& h : j.at("homs")) g.homs.push_back(load_dgpd(h));
    g.id_point = j.at("id_point").get<std::vector<int>>();
    for (auto& e : j.at("comp")) {
        twotrack::TwoTrackCategory::CompTable tab;
        tab.point = e.at("point").get<std::vector<std::vector<int>>>();
        tab.vedge = e.at("vedge").get<std::vector<std::vector<int>>>();
        tab.hedge = e.at("hedge").get<std::vector<std::vector<int>>>();
        tab.square = e.at("square").get<std::vector<std::vector<int>>>();
        g.comp[{e.at("a").get<int>(), e.at("b").get<int>(), e.at("c").get<int>()}] = std::move(tab);
    }
    return g;
}

json save_extension(const ExtensionBundle& b) {
    json j{{"schema", "extension/v1"}};
    j["twotrack"] = save_twotrack(b.g);
    j["track"] = save_track(b.d);
    j["natsys"] = save_natsys(b.d, b.k);
    j["cell_map"] = b.cell_map;
    j["track_map"] = b.track_map;
    json isos = json::array();
    for (auto& m : b.fiber_iso) isos.push_back(matrix_to_json(m));
    j["fiber_iso"] = isos;
    return j;
}

ExtensionBundle load_extension(const json& j) {
    expect(j, "extension/v1");
    ExtensionBundle b;
    b.g = load_twotrack(j.at("twotrack"));
    b.d = load_track(j.at("track"));
    b.k = load_natsys(b.d, j.at("natsys"));
    b.cell_map = j.at("cell_map").get<std::vector<int>>();
    b.track_map = j.at("track_map").get<std::vector<int>>();
    for (auto& m : j.at("fiber_iso")) b.fiber_iso.push_back(matrix_from_json(m));
    return b;
}

std::vector<std::string> validate_extension(const ExtensionBundle& b) {
    std::vector<std::string> bad;
    auto v = twotrack::validate_two_track(b.g);
    if (!v.empty()) return {"twotrack: " + v.front()};
    auto vd = track::validate_track(b.d);
    if (!vd.empty()) return {"track: " + vd.front()};
    auto vk = track::validate_natsys(b.d, b.k);
    if (!vk.empty()) return {"natsys: " + vk.front()};
    auto ho = twotrack::ho_track(b.g);
    if (b.cell_map.size() != ho.d.base.arrows.size() ||
        b.track_map.size() != ho.d.tracks.size())
        return {"identification maps have the wrong size"};
    // bijections preserving the track structure
    {
        std::set<int> seen(b.cell_map.begin(), b.cell_map.end());
        if (seen.size() != b.d.base.arrows.size())
            return {"cell identification is not a bijection"};
        std::set<int> seent(b.track_map.begin(), b.track_map.end());
        if (seent.size() != b.d.tracks.size())
            return {"track identification is not a bijection"};
    }
    for (std::size_t f = 0; f < ho.d.base.arrows.size(); ++f)
        for (std::size_t g2 = 0; g2 < ho.d.base.arrows.size(); ++g2) {
            if (!ho.d.base.composable((int)f, (int)g2)) continue;
            int lhs = b.cell_map[(std::size_t)ho.d.base.then_((int)f, (int)g2)];
            int rhs = b.d.base.then_(b.cell_map[f], b.cell_map[g2]);
            if (lhs != rhs) return {"cell identification does not preserve composition"};
        }
    // fiber isos commute with the track actions (checked on post actions)
    auto p2 = twotrack::pi2_natsys(b.g, ho);
    for (std::size_t f = 0; f < ho.d.base.arrows.size(); ++f) {
        if (b.fiber_iso[f].rows() != b.k.fiber[(std::size_t)b.cell_map[f]].ngens() ||
            b.fiber_iso[f].cols() != p2.k.fiber[f].ngens())
            return {"fiber isomorphism has the wrong shape"};
    }
    for (std::size_t f = 0; f < ho.d.base.arrows.size(); ++f)
        for (std::size_t g2 = 0; g2 < ho.d.base.arrows.size(); ++g2) {
            if (!ho.d.base.composable((int)g2, (int)f)) continue;
            std::size_t fg = (std::size_t)ho.d.base.then_((int)g2, (int)f);
            ablin::AbHom lhs{p2.k.fiber[g2], b.k.fiber[(std::size_t)b.cell_map[fg]],
                             b.fiber_iso[fg] * p2.k.post((int)f, (int)g2).matrix};
            ablin::AbHom rhs{p2.k.fiber[g2], b.k.fiber[(std::size_t)b.cell_map[fg]],
                             b.k.post(b.cell_map[f], b.cell_map[g2]).matrix * b.fiber_iso[g2]};
            if (!track::homs_equal(lhs, rhs))
                return {"fiber isomorphism does not commute with the actions"};
        }
    return bad;
}

json cohomology_report(const std::vector<ablin::FGAbGroup>& degrees) {
    json out{{"schema", "cohomology/v1"}};
    json degs = json::array();
    for (std::size_t n = 0; n < degrees.size(); ++n) {
        json t = json::array();
        for (auto& d : degrees[n].torsion) t.push_back(d.str());
        degs.push_back(json{{"degree", n}, {"rank", degrees[n].rank}, {"torsion", t}});
    }
    out["degrees"] = degs;
    return out;
}

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void save_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot write " + path);
    out << j.dump(1) << "\n";
}

}  // namespace tcat::io
