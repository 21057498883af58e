#include "mgn/graph.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mgn {

int StableGraph::add_vertex(int g, int t) {
    genus.push_back(g);
    tag.push_back(t);
    return num_vertices() - 1;
}

int StableGraph::add_edge(int u, int v) {
    hv.push_back(u);
    hv.push_back(v);
    return num_edges() - 1;
}

int StableGraph::valence(int v) const {
    int n = 0;
    for (const auto& l : legs) n += l.vertex == v;
    for (int x : hv) n += x == v;
    return n;
}

int StableGraph::leg_index(int label) const {
    for (int i = 0; i < num_legs(); ++i)
        if (legs[i].label == label) return i;
    return -1;
}

std::vector<int> StableGraph::halfedges_at(int v) const {
    std::vector<int> out;
    for (int h = 0; h < num_halfedges(); ++h)
        if (hv[h] == v) out.push_back(h);
    return out;
}

std::vector<int> StableGraph::legs_at(int v) const {
    std::vector<int> out;
    for (int i = 0; i < num_legs(); ++i)
        if (legs[i].vertex == v) out.push_back(i);
    return out;
}

int StableGraph::loops_at(int v) const {
    int n = 0;
    for (int e = 0; e < num_edges(); ++e) n += hv[2 * e] == v && hv[2 * e + 1] == v;
    return n;
}

int StableGraph::dimension() const {
    int d = 0;
    for (int v = 0; v < num_vertices(); ++v) d += vertex_dim(v);
    return d;
}

std::vector<int> StableGraph::components() const {
    std::vector<int> p(num_vertices());
    std::iota(p.begin(), p.end(), 0);
    auto find = [&](int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    };
    for (int e = 0; e < num_edges(); ++e) p[find(hv[2 * e])] = find(hv[2 * e + 1]);
    std::vector<int> comp(num_vertices()), id(num_vertices(), -1);
    int k = 0;
    for (int v = 0; v < num_vertices(); ++v) {
        int r = find(v);
        if (id[r] < 0) id[r] = k++;
        comp[v] = id[r];
    }
    return comp;
}

int StableGraph::num_components() const {
    auto c = components();
    return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

int StableGraph::component_genus(int v) const {
    auto c = components();
    int g = 0, nv = 0, ne = 0;
    for (int w = 0; w < num_vertices(); ++w)
        if (c[w] == c[v]) {
            g += genus[w];
            ++nv;
        }
    for (int e = 0; e < num_edges(); ++e) ne += c[hv[2 * e]] == c[v];
    return g + ne - nv + 1;
}

int StableGraph::total_genus() const {
    int g = 0;
    for (int x : genus) g += x;
    return g + num_edges() - num_vertices() + num_components();
}

bool StableGraph::is_stable() const {
    for (int v = 0; v < num_vertices(); ++v)
        if (2 * genus[v] - 2 + valence(v) <= 0) return false;
    return true;
}

std::vector<int> StableGraph::leg_labels() const {
    std::vector<int> out;
    for (const auto& l : legs) out.push_back(l.label);
    return out;
}

Decoration Decoration::trivial(const StableGraph& g) {
    Decoration d;
    d.lpsi.assign(g.num_legs(), 0);
    d.hpsi.assign(g.num_halfedges(), 0);
    d.kappa.assign(g.num_vertices(), {});
    return d;
}

int Decoration::degree() const {
    int d = 0;
    for (int x : lpsi) d += x;
    for (int x : hpsi) d += x;
    for (const auto& k : kappa)
        for (int x : k) d += x;
    return d;
}

int Decoration::vertex_degree(const StableGraph& g, int v) const {
    int d = 0;
    for (int i = 0; i < g.num_legs(); ++i)
        if (g.legs[i].vertex == v) d += lpsi[i];
    for (int h = 0; h < g.num_halfedges(); ++h)
        if (g.hv[h] == v) d += hpsi[h];
    for (int x : kappa[v]) d += x;
    return d;
}

bool Decoration::is_trivial() const { return degree() == 0; }

bool Decoration::vanishes(const StableGraph& g) const {
    for (int v = 0; v < g.num_vertices(); ++v)
        if (vertex_degree(g, v) > g.vertex_dim(v)) return true;
    return false;
}

Contraction contract(const StableGraph& g, const std::vector<bool>& ce) {
    Contraction c;
    const int n = g.num_vertices();
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    auto find = [&](int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    };
    for (int e = 0; e < g.num_edges(); ++e)
        if (ce[e]) p[find(g.hv[2 * e])] = find(g.hv[2 * e + 1]);
    std::vector<int> id(n, -1), nv, ne;
    c.vmap.assign(n, -1);
    for (int v = 0; v < n; ++v) {
        int r = find(v);
        if (id[r] < 0) {
            id[r] = c.graph.add_vertex(0, g.tag[v]);
            nv.push_back(0);
            ne.push_back(0);
        }
        c.vmap[v] = id[r];
        if (c.graph.tag[id[r]] != g.tag[v]) c.valid = false;
        c.graph.genus[id[r]] += g.genus[v];
        ++nv[id[r]];
    }
    c.emap.assign(g.num_edges(), -1);
    for (int e = 0; e < g.num_edges(); ++e) {
        if (ce[e])
            ++ne[c.vmap[g.hv[2 * e]]];
        else
            c.emap[e] = c.graph.add_edge(c.vmap[g.hv[2 * e]], c.vmap[g.hv[2 * e + 1]]);
    }
    for (int w = 0; w < c.graph.num_vertices(); ++w) c.graph.genus[w] += ne[w] - nv[w] + 1;
    for (const auto& l : g.legs) c.graph.add_leg(l.label, c.vmap[l.vertex]);
    return c;
}

namespace {

struct CanonCtx {
    const StableGraph& g;
    const Decoration& d;
    std::vector<int> lcol;
    std::vector<std::vector<int>> nbr;  // per vertex: (u, psi_h, psi_partner) triples flattened
    std::vector<int> best;
    std::vector<int> best_order;
    long long best_count = 0;

    CanonCtx(const StableGraph& g_, const Decoration& d_) : g(g_), d(d_) {}

    static std::vector<int> rank(const std::vector<std::vector<int>>& sig) {
        std::vector<int> idx(sig.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return sig[a] < sig[b]; });
        std::vector<int> out(sig.size());
        int r = 0;
        for (size_t i = 0; i < idx.size(); ++i) {
            if (i > 0 && sig[idx[i]] != sig[idx[i - 1]]) ++r;
            out[idx[i]] = r;
        }
        return out;
    }

    static int ncolors(const std::vector<int>& c) {
        return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
    }

    std::vector<int> initial() const {
        const int n = g.num_vertices();
        std::vector<std::vector<int>> sig(n);
        for (int v = 0; v < n; ++v) {
            auto& s = sig[v];
            s.push_back(g.tag[v]);
            s.push_back(g.genus[v]);
            s.push_back(static_cast<int>(d.kappa[v].size()));
            s.insert(s.end(), d.kappa[v].begin(), d.kappa[v].end());
            std::vector<std::pair<int, int>> ls, lp;
            for (int i = 0; i < g.num_legs(); ++i)
                if (g.legs[i].vertex == v) ls.push_back({lcol[i], d.lpsi[i]});
            std::sort(ls.begin(), ls.end());
            s.push_back(static_cast<int>(ls.size()));
            for (auto [a, b] : ls) {
                s.push_back(a);
                s.push_back(b);
            }
            int deg = 0;
            for (int e = 0; e < g.num_edges(); ++e) {
                if (g.hv[2 * e] == v && g.hv[2 * e + 1] == v) {
                    int a = d.hpsi[2 * e], b = d.hpsi[2 * e + 1];
                    lp.push_back({std::min(a, b), std::max(a, b)});
                } else {
                    deg += (g.hv[2 * e] == v) + (g.hv[2 * e + 1] == v);
                }
            }
            std::sort(lp.begin(), lp.end());
            s.push_back(static_cast<int>(lp.size()));
            for (auto [a, b] : lp) {
                s.push_back(a);
                s.push_back(b);
            }
            s.push_back(deg);
        }
        return rank(sig);
    }

    std::vector<int> refine(std::vector<int> c) const {
        const int n = g.num_vertices();
        int k = ncolors(c);
        while (true) {
            std::vector<std::vector<int>> sig(n);
            for (int v = 0; v < n; ++v) {
                std::vector<std::array<int, 3>> t;
                const auto& nb = nbr[v];
                for (size_t i = 0; i < nb.size(); i += 3) t.push_back({c[nb[i]], nb[i + 1], nb[i + 2]});
                std::sort(t.begin(), t.end());
                sig[v].push_back(c[v]);
                for (auto& x : t) sig[v].insert(sig[v].end(), x.begin(), x.end());
            }
            auto nc = rank(sig);
            int nk = ncolors(nc);
            c = std::move(nc);
            if (nk == k) return c;
            k = nk;
        }
    }

    std::vector<int> serialize(const std::vector<int>& pos) const {
        const int n = g.num_vertices();
        std::vector<int> s{n, g.num_edges(), g.num_legs()};
        std::vector<int> inv(n);
        for (int v = 0; v < n; ++v) inv[pos[v]] = v;
        for (int p = 0; p < n; ++p) {
            int v = inv[p];
            s.push_back(g.tag[v]);
            s.push_back(g.genus[v]);
            s.push_back(static_cast<int>(d.kappa[v].size()));
            s.insert(s.end(), d.kappa[v].begin(), d.kappa[v].end());
        }
        std::vector<std::array<int, 3>> ls;
        for (int i = 0; i < g.num_legs(); ++i) ls.push_back({pos[g.legs[i].vertex], lcol[i], d.lpsi[i]});
        std::sort(ls.begin(), ls.end());
        for (auto& x : ls) s.insert(s.end(), x.begin(), x.end());
        for (auto& x : edge_tuples(pos)) s.insert(s.end(), x.begin(), x.begin() + 4);
        return s;
    }

    std::vector<std::array<int, 5>> edge_tuples(const std::vector<int>& pos) const {
        std::vector<std::array<int, 5>> es;
        for (int e = 0; e < g.num_edges(); ++e) {
            int a = pos[g.hv[2 * e]], b = pos[g.hv[2 * e + 1]];
            int pa = d.hpsi[2 * e], pb = d.hpsi[2 * e + 1];
            bool flip = a > b || (a == b && pa > pb);
            if (flip) es.push_back({b, a, pb, pa, e});
            else es.push_back({a, b, pa, pb, e});
        }
        std::sort(es.begin(), es.end());
        return es;
    }

    void search(std::vector<int> c) {
        c = refine(std::move(c));
        const int n = g.num_vertices();
        int k = ncolors(c);
        if (k == n) {
            auto s = serialize(c);
            if (best_count == 0 || s < best) {
                best = std::move(s);
                best_order = c;
                best_count = 1;
            } else if (s == best) {
                ++best_count;
            }
            return;
        }
        std::vector<int> size(k, 0);
        for (int x : c) ++size[x];
        int cell = 0;
        while (size[cell] == 1) ++cell;
        for (int v = 0; v < n; ++v) {
            if (c[v] != cell) continue;
            std::vector<int> nc(n);
            for (int x = 0; x < n; ++x) nc[x] = 2 * c[x] + (x == v ? 0 : 1);
            std::vector<std::vector<int>> sig(n);
            for (int x = 0; x < n; ++x) sig[x] = {nc[x]};
            search(rank(sig));
        }
    }
};

std::string pack(const std::vector<int>& s) {
    std::string out(s.size() * sizeof(int), '\0');
    for (size_t i = 0; i < s.size(); ++i) {
        // big-endian with sign flip so byte order matches integer order
        unsigned u = static_cast<unsigned>(s[i]) ^ 0x80000000u;
        for (int b = 0; b < 4; ++b) out[4 * i + b] = static_cast<char>((u >> (24 - 8 * b)) & 0xff);
    }
    return out;
}

}  // namespace

Canon canonicalize(const StableGraph& g, const Decoration* dec, const std::vector<int>* leg_color) {
    Decoration triv;
    if (!dec) {
        triv = Decoration::trivial(g);
        dec = &triv;
    }
    CanonCtx ctx(g, *dec);
    const int n = g.num_vertices();
    if (leg_color) ctx.lcol = *leg_color;
    else
        for (const auto& l : g.legs) ctx.lcol.push_back(l.label);
    ctx.nbr.assign(n, {});
    for (int h = 0; h < g.num_halfedges(); ++h) {
        int v = g.hv[h], u = g.hv[h ^ 1];
        if (u == v) continue;
        ctx.nbr[v].insert(ctx.nbr[v].end(), {u, dec->hpsi[h], dec->hpsi[h ^ 1]});
    }
    Canon out;
    if (n == 0) {
        out.key = pack({0, 0, 0});
        return out;
    }
    ctx.search(ctx.initial());
    const auto& pos = ctx.best_order;
    out.key = pack(ctx.best);
    out.vperm = pos;
    long long aut = ctx.best_count;
    auto es = ctx.edge_tuples(pos);
    out.hperm.assign(g.num_halfedges(), -1);
    std::vector<int> inv(n);
    for (int v = 0; v < n; ++v) inv[pos[v]] = v;
    StableGraph& cg = out.graph;
    Decoration& cd = out.dec;
    for (int p = 0; p < n; ++p) {
        cg.add_vertex(g.genus[inv[p]], g.tag[inv[p]]);
        cd.kappa.push_back(dec->kappa[inv[p]]);
    }
    for (size_t i = 0; i < es.size(); ++i) {
        auto [a, b, pa, pb, e] = es[i];
        cg.add_edge(a, b);
        cd.hpsi.push_back(pa);
        cd.hpsi.push_back(pb);
        bool flip = pos[g.hv[2 * e]] != a || dec->hpsi[2 * e] != pa;
        out.hperm[2 * e] = 2 * static_cast<int>(i) + (flip ? 1 : 0);
        out.hperm[2 * e + 1] = 2 * static_cast<int>(i) + (flip ? 0 : 1);
        if (a == b && pa == pb) aut *= 2;
    }
    for (size_t i = 0; i < es.size();) {
        size_t j = i;
        while (j < es.size() && std::equal(es[j].begin(), es[j].begin() + 4, es[i].begin())) ++j;
        for (size_t m = 2; m <= j - i; ++m) aut *= static_cast<long long>(m);
        i = j;
    }
    std::vector<int> lidx(g.num_legs());
    std::iota(lidx.begin(), lidx.end(), 0);
    auto lkey = [&](int i) {
        return std::array<int, 4>{pos[g.legs[i].vertex], ctx.lcol[i], dec->lpsi[i], g.legs[i].label};
    };
    if (leg_color)
        std::sort(lidx.begin(), lidx.end(), [&](int a, int b) { return lkey(a) < lkey(b); });
    else
        std::sort(lidx.begin(), lidx.end(), [&](int a, int b) { return g.legs[a].label < g.legs[b].label; });
    out.lperm.assign(g.num_legs(), -1);
    for (size_t k = 0; k < lidx.size(); ++k) {
        int i = lidx[k];
        cg.add_leg(g.legs[i].label, pos[g.legs[i].vertex]);
        cd.lpsi.push_back(dec->lpsi[i]);
        out.lperm[i] = static_cast<int>(k);
    }
    if (leg_color) {
        for (size_t i = 0; i < lidx.size();) {
            size_t j = i;
            auto ki = lkey(lidx[i]);
            while (j < lidx.size()) {
                auto kj = lkey(lidx[j]);
                if (!std::equal(kj.begin(), kj.begin() + 3, ki.begin())) break;
                ++j;
            }
            for (size_t m = 2; m <= j - i; ++m) aut *= static_cast<long long>(m);
            i = j;
        }
    }
    out.aut = aut;
    return out;
}

std::string canonical_key(const StableGraph& g, const Decoration* dec, const std::vector<int>* leg_color) {
    return canonicalize(g, dec, leg_color).key;
}

StableGraph relabel_legs(const StableGraph& g, const std::vector<std::pair<int, int>>& map) {
    StableGraph out = g;
    for (auto& l : out.legs)
        for (auto [a, b] : map)
            if (l.label == a) {
                l.label = b;
                break;
            }
    return out;
}

StableGraph smooth_graph(int g, const std::vector<int>& labels, int tag) {
    StableGraph out;
    out.add_vertex(g, tag);
    for (int l : labels) out.add_leg(l, 0);
    return out;
}

std::string describe(const StableGraph& g) {
    std::ostringstream os;
    os << "V[";
    for (int v = 0; v < g.num_vertices(); ++v) os << (v ? "," : "") << g.genus[v];
    os << "] L[";
    for (int i = 0; i < g.num_legs(); ++i) os << (i ? "," : "") << g.legs[i].label << "@" << g.legs[i].vertex;
    os << "] E[";
    for (int e = 0; e < g.num_edges(); ++e) os << (e ? "," : "") << g.hv[2 * e] << "-" << g.hv[2 * e + 1];
    os << "]";
    return os.str();
}

}  // namespace mgn
