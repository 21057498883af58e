#include "mgn/taut.hpp"

#include <algorithm>
#include <stdexcept>

namespace mgn {

namespace {

// points at v: legs as slot >= 0, half-edges as -(h+1)
std::vector<int> points_at(const StableGraph& g, int v) {
    std::vector<int> p;
    for (int i : g.legs_at(v)) p.push_back(i);
    for (int h : g.halfedges_at(v)) p.push_back(-h - 1);
    return p;
}

int& psi_of(Decoration& d, int slot) { return slot >= 0 ? d.lpsi[slot] : d.hpsi[-slot - 1]; }

Space with_label(Space s, int label, int factor) {
    if (factor < 0 || factor >= static_cast<int>(s.factors.size())) throw std::invalid_argument("no such factor");
    if (s.factor_of(label) >= 0) throw std::invalid_argument("label already present: " + std::to_string(label));
    auto& l = s.factors[factor].labels;
    l.insert(std::upper_bound(l.begin(), l.end(), label), label);
    return s;
}

}  // namespace

TautClass pullback_forgetful(const TautClass& x, int new_label, int factor) {
    TautClass out(with_label(x.space(), new_label, factor));
    for (const auto& [key, t] : x.terms()) {
        const StableGraph& G = t.graph;
        for (int v = 0; v < G.num_vertices(); ++v) {
            if (G.tag[v] != factor) continue;
            StableGraph Gv = G;
            Gv.add_leg(new_label, v);
            Decoration dv = t.dec;
            dv.lpsi.push_back(0);
            const int li = Gv.num_legs() - 1;
            const auto& kap = t.dec.kappa[v];
            const int m = static_cast<int>(kap.size());
            for (int mask = 0; mask < (1 << m); ++mask) {
                Decoration d = dv;
                d.kappa[v].clear();
                int sign = 1;
                for (int j = 0; j < m; ++j) {
                    if (mask >> j & 1) {
                        d.lpsi[li] += kap[j];
                        sign = -sign;
                    } else {
                        d.kappa[v].push_back(kap[j]);
                    }
                }
                out.add(Gv, d, t.coeff * Rational(sign));
            }
            for (int p : points_at(G, v)) {
                Decoration d = dv;
                int a = psi_of(d, p);
                if (a == 0) continue;
                StableGraph D = Gv;
                int u = D.add_vertex(0, factor);
                if (p >= 0)
                    D.legs[p].vertex = u;
                else
                    D.hv[-p - 1] = u;
                D.legs[li].vertex = u;
                psi_of(d, p) = 0;
                D.add_edge(v, u);
                d.kappa.push_back({});
                d.hpsi.push_back(a - 1);
                d.hpsi.push_back(0);
                out.add(D, d, -t.coeff);
            }
        }
    }
    return out;
}

TautClass pushforward_forgetful(const TautClass& x, int label) {
    Space s = x.space();
    int f = s.factor_of(label);
    if (f < 0) throw std::invalid_argument("no such leg: " + std::to_string(label));
    auto& fl = s.factors[f].labels;
    fl.erase(std::find(fl.begin(), fl.end(), label));
    if (2 * s.factors[f].g - 2 + static_cast<int>(fl.size()) <= 0)
        throw std::invalid_argument("forgetting the leg gives an unstable space");
    TautClass out(s);
    for (const auto& [key, t] : x.terms()) {
        const StableGraph& G = t.graph;
        const int li = G.leg_index(label);
        const int v = G.legs[li].vertex;
        if (G.genus[v] == 0 && G.valence(v) == 3) {
            if (t.dec.vertex_degree(G, v) > 0) continue;
            std::vector<int> pts;
            for (int p : points_at(G, v))
                if (p != li) pts.push_back(p);
            // result graph: drop v, leg li, and merge the two remaining points
            StableGraph H;
            Decoration d;
            std::vector<int> vm(G.num_vertices(), -1);
            for (int w = 0; w < G.num_vertices(); ++w)
                if (w != v) {
                    vm[w] = H.add_vertex(G.genus[w], G.tag[w]);
                    d.kappa.push_back(t.dec.kappa[w]);
                }
            int p = pts[0], q = pts[1];
            int ep = p < 0 ? (-p - 1) / 2 : -1, eq = q < 0 ? (-q - 1) / 2 : -1;
            for (int e = 0; e < G.num_edges(); ++e) {
                if (e == ep || e == eq) continue;
                H.add_edge(vm[G.hv[2 * e]], vm[G.hv[2 * e + 1]]);
                d.hpsi.push_back(t.dec.hpsi[2 * e]);
                d.hpsi.push_back(t.dec.hpsi[2 * e + 1]);
            }
            for (int i = 0; i < G.num_legs(); ++i) {
                if (i == li || i == p || i == q) continue;
                H.add_leg(G.legs[i].label, vm[G.legs[i].vertex]);
                d.lpsi.push_back(t.dec.lpsi[i]);
            }
            if (p >= 0 && q >= 0) throw std::logic_error("unstable component after forgetting");
            if (p >= 0 || q >= 0) {
                int leg = p >= 0 ? p : q, h = -(p >= 0 ? q : p) - 1, o = h ^ 1;
                if (G.hv[o] == v) throw std::logic_error("unstable component after forgetting");
                H.add_leg(G.legs[leg].label, vm[G.hv[o]]);
                d.lpsi.push_back(t.dec.hpsi[o]);
            } else {
                int hp = -p - 1, hq = -q - 1;
                if ((hp ^ 1) == hq) throw std::logic_error("unstable component after forgetting");
                int op = hp ^ 1, oq = hq ^ 1;
                H.add_edge(vm[G.hv[op]], vm[G.hv[oq]]);
                d.hpsi.push_back(t.dec.hpsi[op]);
                d.hpsi.push_back(t.dec.hpsi[oq]);
            }
            out.add(H, d, t.coeff);
            continue;
        }
        StableGraph H = G;
        H.legs.erase(H.legs.begin() + li);
        Decoration base = t.dec;
        const int a = base.lpsi[li];
        base.lpsi.erase(base.lpsi.begin() + li);
        const auto kap = t.dec.kappa[v];
        const int m = static_cast<int>(kap.size());
        const int kappa0 = 2 * G.genus[v] - 2 + G.valence(v) - 1;
        for (int mask = 0; mask < (1 << m); ++mask) {
            Decoration d = base;
            d.kappa[v].clear();
            int A = a;
            for (int j = 0; j < m; ++j) {
                if (mask >> j & 1)
                    A += kap[j];
                else
                    d.kappa[v].push_back(kap[j]);
            }
            if (A >= 1) {
                Rational c = t.coeff;
                if (A == 1)
                    c *= Rational(kappa0);
                else
                    d.kappa[v].push_back(A - 1);
                std::sort(d.kappa[v].begin(), d.kappa[v].end());
                out.add(H, d, c);
            } else {
                for (int p : points_at(H, v)) {
                    Decoration e = d;
                    if (psi_of(e, p) == 0) continue;
                    psi_of(e, p) -= 1;
                    out.add(H, e, t.coeff);
                }
            }
        }
    }
    return out;
}

}  // namespace mgn
