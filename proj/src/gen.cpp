#include "tcat/gen.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>

namespace tcat::gen {

using ablin::AbHom;
using ablin::FGAbGroup;
using ablin::Int;

ablin::FGAbGroup zn(int n) {
    FGAbGroup g;
    if (n > 1) g.torsion = {n};
    return g;
}

ablin::FGAbGroup zfree() {
    FGAbGroup g;
    g.rank = 1;
    return g;
}

// ---------------------------------------------------------------------------
// twisted nerve

using Cell = TwistedComplex::Cell;

namespace {

std::string cell_id(const gpd::FinGroupoid& t, const Cell& c) {
    std::ostringstream os;
    os << "w[";
    for (std::size_t i = 0; i < c.chain.size(); ++i)
        os << (i ? "|" : "") << t.arrows.name(c.chain[i]);
    os << "]";
    for (auto& v : c.z0) {
        os << "(";
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
        os << ")";
    }
    return os.str();
}

}  // namespace

simp::TruncSSet twisted_nerve(const Twist& tw, int top) { return twisted_complex(tw, top).x; }

TwistedComplex twisted_complex(const Twist& tw, int top) {
    const gpd::FinGroupoid& t = *tw.base;
    auto vertex_of = [&](const std::vector<int>& chain, int i) {
        return (i < (int)chain.size()) ? t.src[(std::size_t)chain[(std::size_t)i]]
                                       : t.tgt[(std::size_t)chain.back()];
    };
    // z0 position of the triple (0, j, k), 1 <= j < k <= n
    auto z0_index = [](int n, int j, int k) {
        return (j - 1) * n - (j - 1) * j / 2 + (k - j - 1);
    };

    TwistedComplex out;
    simp::TruncSSet& x = out.x;
    x.init_levels(top);
    std::vector<std::vector<Cell>>& cells = out.cells;
    cells.assign((std::size_t)top + 1, {});
    for (std::size_t o = 0; o < t.objects.size(); ++o) {
        x.levels[0].add(t.objects.name((int)o));
        cells[0].push_back({{}, {}});
    }
    for (int n = 1; n <= top; ++n) {
        std::vector<std::vector<int>> chains;
        for (std::size_t a = 0; a < t.arrows.size(); ++a) chains.push_back({(int)a});
        for (int l = 2; l <= n; ++l) {
            std::vector<std::vector<int>> next;
            for (auto& ch : chains)
                for (std::size_t a = 0; a < t.arrows.size(); ++a)
                    if (t.tgt[(std::size_t)ch.back()] == t.src[a]) {
                        auto e = ch;
                        e.push_back((int)a);
                        next.push_back(e);
                    }
            chains = next;
        }
        int tri = n * (n - 1) / 2;
        for (auto& ch : chains) {
            const FGAbGroup& f0 = tw.fiber[(std::size_t)t.src[(std::size_t)ch[0]]];
            auto elems = track::all_elements(f0);
            std::vector<std::size_t> odo((std::size_t)tri, 0);
            while (true) {
                Cell c;
                c.chain = ch;
                for (int i = 0; i < tri; ++i) c.z0.push_back(elems[odo[(std::size_t)i]]);
                cells[(std::size_t)n].push_back(c);
                int i = 0;
                while (i < tri && ++odo[(std::size_t)i] == elems.size()) odo[(std::size_t)i++] = 0;
                if (i == tri) break;
            }
        }
        {
            std::vector<std::pair<std::string, std::size_t>> order;
            order.reserve(cells[(std::size_t)n].size());
            for (std::size_t i = 0; i < cells[(std::size_t)n].size(); ++i)
                order.emplace_back(cell_id(t, cells[(std::size_t)n][i]), i);
            std::sort(order.begin(), order.end());
            std::vector<Cell> sorted;
            sorted.reserve(order.size());
            for (auto& [id, i] : order) {
                sorted.push_back(std::move(cells[(std::size_t)n][i]));
                x.levels[(std::size_t)n].add(id);
            }
            cells[(std::size_t)n] = std::move(sorted);
        }
    }

    for (int n = 1; n <= top; ++n) {
        for (int i = 0; i <= n; ++i)
            x.faces[(std::size_t)n][(std::size_t)i].resize(cells[(std::size_t)n].size());
        for (std::size_t ci = 0; ci < cells[(std::size_t)n].size(); ++ci) {
            const Cell& c = cells[(std::size_t)n][ci];
            const FGAbGroup& f0 = tw.fiber[(std::size_t)vertex_of(c.chain, 0)];
            for (int i = 0; i <= n; ++i) {
                if (n == 1) {
                    x.faces[1][(std::size_t)i][ci] = (i == 0)
                                                         ? t.tgt[(std::size_t)c.chain[0]]
                                                         : t.src[(std::size_t)c.chain[0]];
                    continue;
                }
                Cell f;
                for (int p = 0; p < n; ++p) {
                    if (i > 0 && i < n && p == i - 1) {
                        f.chain.push_back(
                            t.then_(c.chain[(std::size_t)p], c.chain[(std::size_t)(p + 1)]));
                        ++p;
                    } else if (!(i == 0 && p == 0) && !(i == n && p == n - 1))
                        f.chain.push_back(c.chain[(std::size_t)p]);
                }
                if (i >= 1) {
                    // surviving triples keep their values; only indices shift
                    auto u = [&](int v) { return v < i ? v : v + 1; };
                    for (int j = 1; j < n; ++j)
                        for (int k = j + 1; k <= n - 1; ++k)
                            f.z0.push_back(c.z0[(std::size_t)z0_index(n, u(j), u(k))]);
                } else {
                    // rebase at the old vertex 1: derived values through the
                    // transport along the first arrow of the chain
                    const AbHom& t01 = tw.transport[(std::size_t)c.chain[0]];
                    for (int j = 1; j < n; ++j)
                        for (int k = j + 1; k <= n - 1; ++k) {
                            const auto& a = c.z0[(std::size_t)z0_index(n, j + 1, k + 1)];
                            const auto& b = c.z0[(std::size_t)z0_index(n, 1, k + 1)];
                            const auto& d = c.z0[(std::size_t)z0_index(n, 1, j + 1)];
                            std::vector<Int> v(f0.ngens());
                            for (std::size_t q = 0; q < v.size(); ++q) v[q] = a[q] - b[q] + d[q];
                            f.z0.push_back(t01.apply(f0.reduce(v)));
                        }
                }
                x.faces[(std::size_t)n][(std::size_t)i][ci] =
                    x.levels[(std::size_t)(n - 1)].get(cell_id(t, f));
            }
        }
    }
    for (int n = 0; n < top; ++n) {
        for (int j = 0; j <= n; ++j)
            x.degens[(std::size_t)n][(std::size_t)j].resize(cells[(std::size_t)n].size());
        for (std::size_t ci = 0; ci < cells[(std::size_t)n].size(); ++ci) {
            const Cell& c = cells[(std::size_t)n][ci];
            const FGAbGroup& f0 =
                tw.fiber[(std::size_t)(n >= 1 ? vertex_of(c.chain, 0) : (int)ci)];
            for (int j = 0; j <= n; ++j) {
                Cell dcell;
                for (int p = 0; p <= n; ++p) {
                    if (p == j) {
                        int v = (n == 0) ? (int)ci : vertex_of(c.chain, p);
                        dcell.chain.push_back(t.id_arrow[(std::size_t)v]);
                    }
                    if (p < n) dcell.chain.push_back(c.chain[(std::size_t)p]);
                }
                auto mm = [&](int v) { return v <= j ? v : v - 1; };
                for (int b = 1; b <= n; ++b)
                    for (int k = b + 1; k <= n + 1; ++k) {
                        int mb = mm(b), mk = mm(k);
                        if (mb == 0 || mb == mk)
                            dcell.z0.push_back(std::vector<Int>(f0.ngens(), 0));
                        else
                            dcell.z0.push_back(c.z0[(std::size_t)z0_index(n, mb, mk)]);
                    }
                x.degens[(std::size_t)n][(std::size_t)j][ci] =
                    x.levels[(std::size_t)(n + 1)].get(cell_id(t, dcell));
            }
        }
    }
    auto bad = x.validate();
    if (!bad.empty()) throw std::runtime_error("twisted_nerve: " + bad.front());
    return out;
}

// ---------------------------------------------------------------------------
// random instances

gpd::FinCat random_category(Rng& rng, int max_objects, int max_arrows, std::size_t chain5_cap) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        gpd::FinCat cat;
        int kind = rng.pick(4);
        if (kind == 0) {
            int n = std::min(max_objects, 2 + rng.pick(std::max(1, max_objects - 1)));
            for (int i = 0; i < n; ++i) cat.add_object("p" + std::to_string(i));
            std::map<std::pair<int, int>, int> arr;
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j)
                    arr[{i, j}] =
                        cat.add_arrow("a" + std::to_string(i) + "_" + std::to_string(j), i, j);
            for (int i = 0; i < n; ++i) cat.id_arrow[(std::size_t)i] = arr[{i, i}];
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j)
                    for (int k = j; k < n; ++k) cat.set_comp(arr[{i, j}], arr[{j, k}], arr[{i, k}]);
        } else if (kind == 1) {
            cat = (gpd::FinCat)gpd::cyclic_groupoid(2 + rng.pick(2));
        } else if (kind == 2) {
            std::vector<std::string> objs;
            int m = std::min(max_objects, 2 + rng.pick(2));
            for (int i = 0; i < m; ++i) objs.push_back("i" + std::to_string(i));
            cat = (gpd::FinCat)gpd::indiscrete_groupoid(objs);
        } else {
            auto g = gpd::cyclic_groupoid(2 + rng.pick(2));
            cat = (gpd::FinCat)gpd::disjoint_union(g, gpd::discrete_groupoid({"q"}));
        }
        if ((int)cat.arrows.size() > max_arrows || (int)cat.objects.size() > max_objects) continue;
        std::vector<std::size_t> cnt(cat.arrows.size(), 1);
        for (int l = 1; l < 5; ++l) {
            std::vector<std::size_t> next(cat.arrows.size(), 0);
            for (std::size_t f = 0; f < cat.arrows.size(); ++f)
                for (std::size_t g2 = 0; g2 < cat.arrows.size(); ++g2)
                    if (cat.tgt[f] == cat.src[g2]) next[g2] += cnt[f];
            cnt = next;
        }
        std::size_t chains = 0;
        for (auto v : cnt) chains += v;
        if (chains > chain5_cap) continue;
        return cat;
    }
    return (gpd::FinCat)gpd::cyclic_groupoid(2);
}

track::TrackCategory random_track_category(Rng& rng, int max_objects, int max_arrows,
                                           int max_tracks_per_hom, std::size_t chain5_cap) {
    for (int attempt = 0; attempt < 32; ++attempt) {
        auto base = random_category(rng, max_objects, max_arrows, chain5_cap);
        auto d0 = track::discrete_track(base);
        int kind = rng.pick(3);
        if (kind == 0) return d0;
        int m = 2 + rng.pick(2);
        if (m > max_tracks_per_hom) m = 2;
        try {
            auto mod = track::natsys_to_module(d0, track::constant_natsys(d0, zn(m)));
            return mod.m;
        } catch (...) {
            continue;
        }
    }
    return track::discrete_track((gpd::FinCat)gpd::cyclic_groupoid(2));
}

track::NaturalSystem random_natsys(Rng& rng, const track::TrackCategory& d,
                                   const std::vector<FGAbGroup>& choices) {
    const FGAbGroup& g = choices[(std::size_t)rng.pick((int)choices.size())];
    auto k = track::constant_natsys(d, g);
    if (rng.pick(2) == 0) return k;
    track::NaturalSystem k2 = k;
    ablin::IntMatrix minus = ablin::IntMatrix::identity(g.ngens());
    for (std::size_t i = 0; i < g.ngens(); ++i) minus(i, i) = -1;
    AbHom mih{g, g, minus};
    const auto& b = d.base;
    for (std::size_t f = 0; f < b.arrows.size(); ++f) {
        if ((int)f == b.id_arrow[(std::size_t)b.src[f]]) continue;
        if (b.src[f] != b.tgt[f]) continue;
        for (std::size_t h = 0; h < b.arrows.size(); ++h)
            if (b.composable((int)h, (int)f)) k2.post_act[pair_key((int)f, (int)h)] = mih;
    }
    if (track::validate_natsys(d, k2).empty()) return k2;
    return k;
}

}  // namespace tcat::gen
