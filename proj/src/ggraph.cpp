#include "mgn/ggraph.hpp"

#include "mgn/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace mgn {

namespace {

std::vector<int> identity_perm(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

// left cosets tK of a subgroup K
struct Cosets {
    std::vector<int> reps;  // minimal element of each coset
    std::vector<int> idx;   // element -> coset index
};

Cosets cosets(const Group& G, const std::vector<int>& K) {
    Cosets c;
    c.idx.assign(G.order(), -1);
    for (int t = 0; t < G.order(); ++t) {
        if (c.idx[t] >= 0) continue;
        int id = static_cast<int>(c.reps.size());
        c.reps.push_back(t);
        for (int k : K) c.idx[G.mul(t, k)] = id;
    }
    return c;
}

std::vector<std::vector<int>> orbits_of(const std::vector<std::vector<int>>& act, int n) {
    std::vector<int> id(n, -1);
    std::vector<std::vector<int>> out;
    for (int x = 0; x < n; ++x) {
        if (id[x] >= 0) continue;
        std::set<int> o;
        for (const auto& p : act) o.insert(p[x]);
        for (int y : o) id[y] = static_cast<int>(out.size());
        out.emplace_back(o.begin(), o.end());
    }
    return out;
}

int local_index(const std::vector<int>& elems, int a) {
    auto it = std::find(elems.begin(), elems.end(), a);
    if (it == elems.end()) throw std::invalid_argument("stabilizer element outside the vertex stabilizer");
    return static_cast<int>(it - elems.begin());
}

}  // namespace

GGraph GGraph::trivial(const StableGraph& g) {
    GGraph gg;
    gg.graph = g;
    gg.actV = {identity_perm(g.num_vertices())};
    gg.actH = {identity_perm(g.num_halfedges())};
    gg.actL = {identity_perm(g.num_legs())};
    gg.hstab.assign(g.num_halfedges(), 0);
    gg.lstab.assign(g.num_legs(), 0);
    gg.lbranch = identity_perm(g.num_legs());
    return gg;
}

void validate(const GGraph& gg) {
    const Group& G = gg.group;
    const StableGraph& g = gg.graph;
    const int n = G.order();
    auto fail = [](const std::string& m) { throw std::invalid_argument("invalid G-graph: " + m); };
    if (static_cast<int>(gg.actV.size()) != n || static_cast<int>(gg.actH.size()) != n ||
        static_cast<int>(gg.actL.size()) != n)
        fail("one permutation per group element required");
    if (static_cast<int>(gg.hstab.size()) != g.num_halfedges() || static_cast<int>(gg.lstab.size()) != g.num_legs())
        fail("stabilizer data size");
    auto is_perm = [](const std::vector<int>& p, int m) {
        if (static_cast<int>(p.size()) != m) return false;
        std::vector<char> seen(m, 0);
        for (int x : p) {
            if (x < 0 || x >= m || seen[x]) return false;
            seen[x] = 1;
        }
        return true;
    };
    for (int t = 0; t < n; ++t)
        if (!is_perm(gg.actV[t], g.num_vertices()) || !is_perm(gg.actH[t], g.num_halfedges()) ||
            !is_perm(gg.actL[t], g.num_legs()))
            fail("action is not by permutations");
    if (gg.actV[0] != identity_perm(g.num_vertices()) || gg.actH[0] != identity_perm(g.num_halfedges()) ||
        gg.actL[0] != identity_perm(g.num_legs()))
        fail("identity does not act trivially");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int ab = G.mul(a, b);
            for (int v = 0; v < g.num_vertices(); ++v)
                if (gg.actV[ab][v] != gg.actV[a][gg.actV[b][v]]) fail("action is not a homomorphism");
            for (int h = 0; h < g.num_halfedges(); ++h)
                if (gg.actH[ab][h] != gg.actH[a][gg.actH[b][h]]) fail("action is not a homomorphism");
            for (int l = 0; l < g.num_legs(); ++l)
                if (gg.actL[ab][l] != gg.actL[a][gg.actL[b][l]]) fail("action is not a homomorphism");
        }
    for (int t = 0; t < n; ++t) {
        for (int v = 0; v < g.num_vertices(); ++v)
            if (g.genus[gg.actV[t][v]] != g.genus[v]) fail("action does not preserve genus");
        for (int h = 0; h < g.num_halfedges(); ++h) {
            int th = gg.actH[t][h];
            if (g.hv[th] != gg.actV[t][g.hv[h]]) fail("action does not commute with attachment");
            if (gg.actH[t][h ^ 1] != (th ^ 1)) fail("action does not commute with the involution");
            if (th == (h ^ 1)) fail("involution has a fixed point on H/G");
            if (gg.hstab[th] != G.conj(t, gg.hstab[h])) fail("stabilizer data not equivariant");
        }
        for (int l = 0; l < g.num_legs(); ++l) {
            int tl = gg.actL[t][l];
            if (g.legs[tl].vertex != gg.actV[t][g.legs[l].vertex]) fail("action does not commute with legs");
            if (gg.lstab[tl] != G.conj(t, gg.lstab[l])) fail("stabilizer data not equivariant");
            if (!gg.lbranch.empty() && gg.lbranch[tl] != gg.lbranch[l]) fail("action does not preserve branches");
        }
    }
    for (int h = 0; h < g.num_halfedges(); ++h) {
        std::vector<int> st;
        for (int t = 0; t < n; ++t)
            if (gg.actH[t][h] == h) st.push_back(t);
        if (st != G.generated({gg.hstab[h]})) fail("half-edge stabilizer is not generated by h_l");
        if (gg.hstab[h ^ 1] != G.inv(gg.hstab[h])) fail("h at the two halves of an edge are not inverse");
    }
    for (int l = 0; l < g.num_legs(); ++l) {
        std::vector<int> st;
        for (int t = 0; t < n; ++t)
            if (gg.actL[t][l] == l) st.push_back(t);
        if (st != G.generated({gg.lstab[l]})) fail("leg stabilizer is not generated by h_l");
    }
    for (int v : vertex_orbit_reps(gg)) {
        auto lm = local_monodromy(gg, v);
        if (lm.degree.sign() <= 0) fail("vertex " + std::to_string(v) + " has empty local Hurwitz space");
    }
}

std::vector<int> vertex_orbit_reps(const GGraph& gg) {
    std::vector<int> reps;
    for (const auto& o : orbits_of(gg.actV, gg.graph.num_vertices())) reps.push_back(o.front());
    return reps;
}

std::vector<int> edge_orbits(const GGraph& gg) {
    const int ne = gg.graph.num_edges();
    std::vector<int> id(ne, -1);
    int k = 0;
    for (int e = 0; e < ne; ++e) {
        if (id[e] >= 0) continue;
        for (const auto& p : gg.actH) id[p[2 * e] / 2] = k;
        ++k;
    }
    return id;
}

int num_edge_orbits(const GGraph& gg) {
    auto id = edge_orbits(gg);
    return id.empty() ? 0 : *std::max_element(id.begin(), id.end()) + 1;
}

LocalMonodromy local_monodromy(const GGraph& gg, int v) {
    const Group& G = gg.group;
    const StableGraph& g = gg.graph;
    std::vector<int> K;
    for (int t = 0; t < G.order(); ++t)
        if (gg.actV[t][v] == v) K.push_back(t);
    LocalMonodromy lm;
    lm.g = g.genus[v];
    lm.group = G.induced(K, &lm.elems);
    std::set<int> seenL, seenH;
    for (int l : g.legs_at(v)) {
        if (seenL.count(l)) continue;
        for (int t : K) seenL.insert(gg.actL[t][l]);
        lm.reps.push_back({true, l});
        lm.xi.push_back(local_index(lm.elems, gg.lstab[l]));
    }
    for (int h : g.halfedges_at(v)) {
        if (seenH.count(h)) continue;
        for (int t : K) seenH.insert(gg.actH[t][h]);
        lm.reps.push_back({false, h});
        lm.xi.push_back(local_index(lm.elems, gg.hstab[h]));
    }
    auto gp = target_genus(lm.g, lm.group, lm.xi);
    if (!gp) {
        lm.gprime = -1;
        lm.degree = 0;
        return lm;
    }
    lm.gprime = *gp;
    lm.degree = degree_delta(lm.group, lm.gprime, lm.xi);
    return lm;
}

Rational ggraph_degree(const GGraph& gg) {
    Rational d(1);
    for (int v : vertex_orbit_reps(gg)) d *= local_monodromy(gg, v).degree;
    return d;
}

Quotient quotient_graph(const GGraph& gg) {
    const StableGraph& g = gg.graph;
    Quotient q;
    q.piV.assign(g.num_vertices(), -1);
    q.piH.assign(g.num_halfedges(), -1);
    q.piL.assign(g.num_legs(), -1);
    for (const auto& o : orbits_of(gg.actV, g.num_vertices())) {
        auto lm = local_monodromy(gg, o.front());
        if (lm.gprime < 0) throw std::invalid_argument("quotient: vertex genus not compatible with Riemann-Hurwitz");
        int w = q.graph.add_vertex(lm.gprime);
        for (int v : o) q.piV[v] = w;
    }
    auto hor = orbits_of(gg.actH, g.num_halfedges());
    std::vector<int> hid(g.num_halfedges());
    for (size_t i = 0; i < hor.size(); ++i)
        for (int h : hor[i]) hid[h] = static_cast<int>(i);
    std::vector<int> done(hor.size(), -1);
    for (int h = 0; h < g.num_halfedges(); ++h) {
        if (done[hid[h]] >= 0) continue;
        int a = hid[h], b = hid[h ^ 1];
        int e = q.graph.add_edge(q.piV[g.hv[h]], q.piV[g.hv[h ^ 1]]);
        done[a] = 2 * e;
        done[b] = 2 * e + 1;
    }
    for (int h = 0; h < g.num_halfedges(); ++h) q.piH[h] = done[hid[h]];
    for (const auto& o : orbits_of(gg.actL, g.num_legs())) {
        int label = gg.lbranch.empty() ? static_cast<int>(q.graph.legs.size()) + 1 : gg.lbranch[o.front()] + 1;
        int idx = q.graph.num_legs();
        q.graph.add_leg(label, q.piV[g.legs[o.front()].vertex]);
        for (int l : o) q.piL[l] = idx;
    }
    if (!q.graph.is_stable()) throw std::invalid_argument("quotient graph is unstable");
    return q;
}

IsoData iso_data(const GGraph& gg, const std::vector<long long>* lcol) {
    IsoData d;
    d.g = &gg.graph;
    for (int x : gg.graph.genus) d.vcol.push_back(x);
    for (int x : gg.hstab) d.hcol.push_back(x);
    if (lcol)
        d.lcol = *lcol;
    else
        for (const auto& l : gg.graph.legs) d.lcol.push_back(l.label);
    d.actV = gg.actV;
    d.actH = gg.actH;
    d.actL = gg.actL;
    return d;
}

long long aut_count_equivariant(const GGraph& gg) { return count_automorphisms(iso_data(gg)); }

bool equivariantly_isomorphic(const GGraph& a, const GGraph& b) {
    if (a.group.table() != b.group.table()) return false;
    return isomorphic(iso_data(a), iso_data(b));
}

std::vector<Lift> lift_quotient(const HurwitzSpec& s, const StableGraph& Q, const std::vector<int>& branch_color) {
    const Group& G = s.group;
    const int n = G.order();
    const auto layout = marking_layout(s);
    const auto& subs = G.subgroups();
    std::vector<Cosets> subc;
    std::vector<Group> subg;
    std::vector<std::vector<int>> subel;
    for (const auto& K : subs) {
        subc.push_back(cosets(G, K));
        std::vector<int> el;
        subg.push_back(G.induced(K, &el));
        subel.push_back(el);
    }
    std::vector<Cosets> cyc(n);
    for (int h = 0; h < n; ++h) cyc[h] = cosets(G, G.generated({h}));

    const int nw = Q.num_vertices();
    const int nq = Q.num_edges();
    std::vector<int> qleg_of_branch(s.b(), -1);
    for (int i = 0; i < Q.num_legs(); ++i) qleg_of_branch.at(Q.legs[i].label - 1) = i;

    std::vector<int> K(nw), legc(s.b()), hs(nq), c2(nq);
    std::vector<Lift> out;
    std::vector<long long> lcol;
    for (const auto& m : layout) lcol.push_back(static_cast<long long>(branch_color[m.branch]) * 4096 + m.coset);

    auto build = [&]() {
        global_budget().tick();
        // local data and genus per Q vertex
        std::vector<std::vector<int>> lxi(nw);
        for (int i = 0; i < s.b(); ++i) {
            int w = Q.legs[qleg_of_branch[i]].vertex;
            lxi[w].push_back(G.conj(G.inv(legc[i]), s.xi[i]));
        }
        for (int e = 0; e < nq; ++e) {
            lxi[Q.hv[2 * e]].push_back(hs[e]);
            lxi[Q.hv[2 * e + 1]].push_back(G.conj(G.inv(c2[e]), G.inv(hs[e])));
        }
        std::vector<int> gv(nw);
        Rational deg(1);
        for (int w = 0; w < nw; ++w) {
            const Group& Kg = subg[K[w]];
            long ko = Kg.order();
            long rhs = ko * (2L * Q.genus[w] - 2);
            std::vector<int> loc;
            for (int h : lxi[w]) {
                rhs += ko - ko / G.element_order(h);
                loc.push_back(local_index(subel[K[w]], h));
            }
            if (rhs % 2) return;
            gv[w] = static_cast<int>(rhs / 2 + 1);
            if (gv[w] < 0) return;
            Rational d = degree_delta(Kg, Q.genus[w], loc);
            if (d.sign() <= 0) return;
            deg *= d;
        }
        GGraph gg;
        gg.group = G;
        StableGraph& g = gg.graph;
        std::vector<int> base(nw);
        for (int w = 0; w < nw; ++w) {
            base[w] = g.num_vertices();
            for (size_t c = 0; c < subc[K[w]].reps.size(); ++c) g.add_vertex(gv[w]);
        }
        auto vid = [&](int w, int t) { return base[w] + subc[K[w]].idx[t]; };
        std::vector<int> leg_of_label(layout.size() + 1);
        for (const auto& m : layout) {
            int w = Q.legs[qleg_of_branch[m.branch]].vertex;
            leg_of_label[m.label] = g.num_legs();
            g.add_leg(m.label, vid(w, G.mul(m.coset, legc[m.branch])));
            gg.lstab.push_back(m.h);
            gg.lbranch.push_back(m.branch);
        }
        // half-edge of (Q edge e, coset index u, side)
        std::vector<std::vector<int>> eid(nq);
        for (int e = 0; e < nq; ++e) {
            const Cosets& C = cyc[hs[e]];
            int w1 = Q.hv[2 * e], w2 = Q.hv[2 * e + 1];
            for (int u : C.reps) {
                int x = g.add_edge(vid(w1, u), vid(w2, G.mul(u, c2[e])));
                eid[e].push_back(x);
                gg.hstab.push_back(G.conj(u, hs[e]));
                gg.hstab.push_back(G.conj(u, G.inv(hs[e])));
            }
        }
        if (!g.is_connected() || g.total_genus() != s.g) return;
        gg.actV.assign(n, {});
        gg.actH.assign(n, {});
        gg.actL.assign(n, {});
        for (int t = 0; t < n; ++t) {
            auto& V = gg.actV[t];
            for (int w = 0; w < nw; ++w)
                for (int r : subc[K[w]].reps) V.push_back(vid(w, G.mul(t, r)));
            auto& H = gg.actH[t];
            H.assign(g.num_halfedges(), -1);
            for (int e = 0; e < nq; ++e) {
                const Cosets& C = cyc[hs[e]];
                for (size_t ui = 0; ui < C.reps.size(); ++ui) {
                    int y = eid[e][C.idx[G.mul(t, C.reps[ui])]];
                    H[2 * eid[e][ui]] = 2 * y;
                    H[2 * eid[e][ui] + 1] = 2 * y + 1;
                }
            }
            auto& L = gg.actL[t];
            for (const auto& m : layout) L.push_back(leg_of_label[act_on_marking(s, layout, t, m.label)]);
        }
        Quotient q;
        q.graph = Q;
        for (int w = 0; w < nw; ++w)
            for (size_t c = 0; c < subc[K[w]].reps.size(); ++c) q.piV.push_back(w);
        q.piH.assign(g.num_halfedges(), -1);
        for (int e = 0; e < nq; ++e)
            for (int x : eid[e]) {
                q.piH[2 * x] = 2 * e;
                q.piH[2 * x + 1] = 2 * e + 1;
            }
        for (const auto& m : layout) q.piL.push_back(qleg_of_branch[m.branch]);
        IsoData me = iso_data(gg, &lcol);
        for (const auto& o : out)
            if (isomorphic(iso_data(o.gg, &lcol), me)) return;
        Lift lf;
        lf.aut = count_automorphisms(me);
        lf.gg = std::move(gg);
        lf.q = std::move(q);
        lf.degree = deg;
        out.push_back(std::move(lf));
    };

    std::function<void(int)> choose_edge = [&](int e) {
        if (e == nq) {
            build();
            return;
        }
        int w1 = Q.hv[2 * e], w2 = Q.hv[2 * e + 1];
        for (int h : subs[K[w1]]) {
            hs[e] = h;
            for (int c : subc[K[w2]].reps) {
                if (!G.contains(subs[K[w2]], G.conj(G.inv(c), G.inv(h)))) continue;
                c2[e] = c;
                choose_edge(e + 1);
            }
        }
    };
    std::function<void(int)> choose_leg = [&](int i) {
        if (i == s.b()) {
            choose_edge(0);
            return;
        }
        int w = Q.legs[qleg_of_branch[i]].vertex;
        for (int c : subc[K[w]].reps) {
            if (!G.contains(subs[K[w]], G.conj(G.inv(c), s.xi[i]))) continue;
            legc[i] = c;
            choose_leg(i + 1);
        }
    };
    std::function<void(int)> choose_sub = [&](int w) {
        if (w == nw) {
            choose_leg(0);
            return;
        }
        for (size_t k = 0; k < subs.size(); ++k) {
            K[w] = static_cast<int>(k);
            choose_sub(w + 1);
        }
    };
    choose_sub(0);
    return out;
}

std::vector<EquivAStructure> enumerate_generic_A_structures(const HurwitzSpec& s, const StableGraph& A) {
    std::vector<EquivAStructure> out;
    auto gp = s.gprime();
    if (!gp || s.degree().sign() <= 0) return out;
    std::vector<int> labels(s.b()), colors(s.b());
    std::iota(labels.begin(), labels.end(), 1);
    std::iota(colors.begin(), colors.end(), 0);
    for (const auto& Q : enumerate_graphs(*gp, labels, A.num_edges())) {
        for (auto& lf : lift_quotient(s, Q, colors)) {
            const GGraph& gg = lf.gg;
            auto orb = edge_orbits(gg);
            int norb = num_edge_orbits(gg);
            IsoData me = iso_data(gg);
            std::vector<IsoMap> auts;
            for_each_iso(me, me, [&](const IsoMap& m) {
                auts.push_back(m);
                return true;
            });
            std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
            for (auto& f : a_structures(gg.graph, A)) {
                std::vector<char> hit(norb, 0);
                for (int e : f.edges) hit[orb[e]] = 1;
                if (std::count(hit.begin(), hit.end(), 1) != norb) continue;
                std::pair<std::vector<int>, std::vector<int>> best;
                bool first = true;
                for (const auto& m : auts) {
                    std::vector<int> al(f.alpha.size()), be(f.beta.size());
                    for (size_t v = 0; v < f.alpha.size(); ++v) al[m.v[v]] = f.alpha[v];
                    for (size_t h = 0; h < f.beta.size(); ++h) be[h] = m.h[f.beta[h]];
                    auto key = std::make_pair(al, be);
                    if (first || key < best) best = key;
                    first = false;
                }
                if (!seen.insert(best).second) continue;
                out.push_back({gg, f});
            }
        }
    }
    return out;
}

DecSum excess_class(const GGraph& gg, const std::vector<int>& edges) {
    auto orb = edge_orbits(gg);
    std::set<int> first;
    std::vector<int> extra;
    auto sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    for (int e : sorted) {
        if (first.insert(orb[e]).second) continue;
        extra.push_back(e);
    }
    DecSum out{{Decoration::trivial(gg.graph), Rational(1)}};
    for (int e : extra) {
        DecSum next;
        for (auto& [d, c] : out)
            for (int k = 0; k < 2; ++k) {
                Decoration d2 = d;
                ++d2.hpsi[2 * e + k];
                next.push_back({d2, -c});
            }
        out.swap(next);
    }
    return out;
}

DecSum excess_class(const EquivAStructure& s) { return excess_class(s.gg, s.f.edges); }

}  // namespace mgn
