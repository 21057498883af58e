#include "mgn/taut.hpp"

#include <algorithm>
#include <stdexcept>
#include <map>

namespace mgn {

namespace {

using Items = std::vector<std::pair<Decoration, Rational>>;

// slot of a point of T: leg index if >= 0, else half-edge -(slot+1)
void bump(Decoration& d, int slot, int a) {
    if (slot >= 0)
        d.lpsi[slot] += a;
    else
        d.hpsi[-slot - 1] += a;
}

void add_kappa(Items& items, const std::vector<int>& verts, int k) {
    Items out;
    out.reserve(items.size() * verts.size());
    for (const auto& [d, c] : items)
        for (int v : verts) {
            Decoration e = d;
            e.kappa[v].push_back(k);
            std::sort(e.kappa[v].begin(), e.kappa[v].end());
            out.emplace_back(std::move(e), c);
        }
    items = std::move(out);
}

void mult_excess(Items& items, int leg_a, int leg_b) {
    Items out;
    out.reserve(items.size() * 2);
    for (const auto& [d, c] : items) {
        Decoration e = d;
        e.lpsi[leg_a] += 1;
        out.emplace_back(std::move(e), -c);
        Decoration f = d;
        f.lpsi[leg_b] += 1;
        out.emplace_back(std::move(f), -c);
    }
    items = std::move(out);
}

// identifies a graph together with its numbering
std::string raw_key(const StableGraph& g) {
    std::string k;
    auto put = [&](int x) { k.append(reinterpret_cast<const char*>(&x), sizeof x); };
    put(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) {
        put(g.genus[v]);
        put(g.tag[v]);
    }
    put(g.num_legs());
    for (const auto& l : g.legs) {
        put(l.label);
        put(l.vertex);
    }
    for (int h : g.hv) put(h);
    return k;
}

int max_edges(const TautClass& x) {
    int m = 0;
    for (const auto& [k, t] : x.terms()) m = std::max(m, t.graph.num_edges());
    return m;
}

}  // namespace

TautClass pullback_boundary(const StableGraph& A, const TautClass& x) {
    TautClass out(Space::of_graph(A));
    if (x.space() != Space::target_of(A) && !x.is_zero())
        throw std::invalid_argument("pullback_boundary: class does not live on the target of A");
    const int EA = A.num_edges();

    std::map<std::string, std::vector<GenericAB>> cache;
    for (const auto& [key, term] : x.terms()) {
        const StableGraph& B = term.graph;
        std::string bk = raw_key(B);
        auto it = cache.find(bk);
        if (it == cache.end()) it = cache.emplace(bk, generic_ab(A, B)).first;
        const auto& lam = term.dec;

        for (const auto& s : it->second) {
            const StableGraph& G = s.gamma;
            StableGraph T;
            for (int v = 0; v < G.num_vertices(); ++v) T.add_vertex(G.genus[v], s.fA.alpha[v]);
            for (int e = EA; e < G.num_edges(); ++e) T.add_edge(G.hv[2 * e], G.hv[2 * e + 1]);
            for (const auto& l : G.legs) T.add_leg(l.label, l.vertex);
            const int nl = G.num_legs();
            for (int h = 0; h < 2 * EA; ++h) T.add_leg(kHalfEdgeLeg + h, G.hv[h]);
            auto slot = [&](int gh) { return gh < 2 * EA ? nl + gh : -(gh - 2 * EA) - 1; };
            const Rational base = term.coeff / Rational(s.aut);

            for (const auto& f : s.fB) {
                Decoration d0 = Decoration::trivial(T);
                for (int i = 0; i < B.num_legs(); ++i)
                    if (lam.lpsi[i]) d0.lpsi[T.leg_index(B.legs[i].label)] += lam.lpsi[i];
                for (int b = 0; b < B.num_halfedges(); ++b)
                    if (lam.hpsi[b]) bump(d0, slot(f.beta[b]), lam.hpsi[b]);
                Items items{{d0, base}};
                for (int w = 0; w < B.num_vertices(); ++w) {
                    if (lam.kappa[w].empty()) continue;
                    std::vector<int> pre;
                    for (int v = 0; v < G.num_vertices(); ++v)
                        if (f.alpha[v] == w) pre.push_back(v);
                    for (int k : lam.kappa[w]) add_kappa(items, pre, k);
                }
                for (int e : f.edges)
                    if (e < EA) mult_excess(items, nl + 2 * e, nl + 2 * e + 1);
                for (const auto& [d, c] : items) out.add(T, d, c);
            }
        }
    }
    return out;
}

TautClass pushforward_boundary(const StableGraph& A, const TautClass& x) {
    TautClass out(Space::target_of(A));
    if (x.space() != Space::of_graph(A) && !x.is_zero())
        throw std::invalid_argument("pushforward_boundary: leg/half-edge mismatch during grafting");
    for (const auto& [key, t] : x.terms()) {
        const StableGraph& T = t.graph;
        StableGraph G;
        Decoration d;
        for (int v = 0; v < T.num_vertices(); ++v) {
            G.add_vertex(T.genus[v], A.tag[T.tag[v]]);
            d.kappa.push_back(t.dec.kappa[v]);
        }
        for (int e = 0; e < T.num_edges(); ++e) {
            G.add_edge(T.hv[2 * e], T.hv[2 * e + 1]);
            d.hpsi.push_back(t.dec.hpsi[2 * e]);
            d.hpsi.push_back(t.dec.hpsi[2 * e + 1]);
        }
        for (int e = 0; e < A.num_edges(); ++e) {
            int i = T.leg_index(kHalfEdgeLeg + 2 * e), j = T.leg_index(kHalfEdgeLeg + 2 * e + 1);
            if (i < 0 || j < 0) throw std::invalid_argument("pushforward_boundary: leg/half-edge mismatch during grafting");
            G.add_edge(T.legs[i].vertex, T.legs[j].vertex);
            d.hpsi.push_back(t.dec.lpsi[i]);
            d.hpsi.push_back(t.dec.lpsi[j]);
        }
        for (int i = 0; i < T.num_legs(); ++i) {
            if (T.legs[i].label >= kHalfEdgeLeg) continue;
            G.add_leg(T.legs[i].label, T.legs[i].vertex);
            d.lpsi.push_back(t.dec.lpsi[i]);
        }
        out.add(G, d, t.coeff);
    }
    return out;
}

TautClass multiply_pulled_decoration(const StableGraph& A, const Decoration& theta, const TautClass& x) {
    TautClass out(x.space());
    for (const auto& [key, t] : x.terms()) {
        const StableGraph& T = t.graph;
        Decoration d0 = t.dec;
        for (int i = 0; i < A.num_legs(); ++i)
            if (theta.lpsi[i]) d0.lpsi[T.leg_index(A.legs[i].label)] += theta.lpsi[i];
        for (int h = 0; h < A.num_halfedges(); ++h)
            if (theta.hpsi[h]) d0.lpsi[T.leg_index(kHalfEdgeLeg + h)] += theta.hpsi[h];
        Items items{{d0, t.coeff}};
        for (int v = 0; v < A.num_vertices(); ++v) {
            if (theta.kappa[v].empty()) continue;
            std::vector<int> pre;
            for (int w = 0; w < T.num_vertices(); ++w)
                if (T.tag[w] == v) pre.push_back(w);
            for (int k : theta.kappa[v]) add_kappa(items, pre, k);
        }
        for (const auto& [d, c] : items) out.add(T, d, c);
    }
    return out;
}

TautClass product(const TautClass& x, const TautClass& y) {
    if (x.space() != y.space()) throw std::invalid_argument("product: space mismatch");
    // pull back the side with fewer edges
    if (max_edges(y) > max_edges(x)) return product(y, x);
    TautClass out(x.space());
    std::map<std::string, TautClass> cache;
    for (const auto& [key, t] : x.terms()) {
        const StableGraph& A = t.graph;
        std::string ak = raw_key(A);
        auto it = cache.find(ak);
        // an edgeless A is the space itself, its tags already index the factors
        if (it == cache.end()) it = cache.emplace(ak, A.num_edges() == 0 ? y : pullback_boundary(A, y)).first;
        TautClass m = multiply_pulled_decoration(A, t.dec, it->second);
        out.add(A.num_edges() == 0 ? m : pushforward_boundary(A, m), t.coeff);
    }
    return out;
}

}  // namespace mgn
