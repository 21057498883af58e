#include "mgn/structures.hpp"

#include "mgn/enumerate.hpp"
#include "mgn/iso.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace mgn {

std::vector<AStructure> a_structures(const StableGraph& gamma, const StableGraph& A, const std::vector<bool>* required) {
    std::vector<AStructure> out;
    const int ne = gamma.num_edges(), k = A.num_edges();
    if (k > ne || gamma.num_legs() != A.num_legs()) return out;
    auto la = gamma.leg_labels(), lb = A.leg_labels();
    std::sort(la.begin(), la.end());
    std::sort(lb.begin(), lb.end());
    if (la != lb) return out;
    const std::string akey = canonical_key(A);
    std::vector<bool> in(ne, false);
    int nreq = 0;
    if (required)
        for (int e = 0; e < ne; ++e) nreq += (*required)[e];
    std::function<void(int, int)> choose = [&](int e, int left) {
        if (left > ne - e) return;
        if (e == ne) {
            global_budget().tick();
            std::vector<bool> ce(ne);
            for (int x = 0; x < ne; ++x) ce[x] = !in[x];
            auto c = contract(gamma, ce);
            if (!c.valid || c.graph.num_vertices() != A.num_vertices()) return;
            if (canonical_key(c.graph) != akey) return;
            std::vector<int> sedges;
            for (int x = 0; x < ne; ++x)
                if (in[x]) sedges.push_back(x);
            for (const auto& m : isomorphisms(c.graph, nullptr, A, nullptr)) {
                AStructure s;
                s.edges = sedges;
                s.alpha.resize(gamma.num_vertices());
                for (int v = 0; v < gamma.num_vertices(); ++v) s.alpha[v] = m.v[c.vmap[v]];
                s.beta.assign(A.num_halfedges(), -1);
                for (int x : sedges) {
                    int ce2 = c.emap[x];
                    s.beta[m.h[2 * ce2]] = 2 * x;
                    s.beta[m.h[2 * ce2 + 1]] = 2 * x + 1;
                }
                out.push_back(std::move(s));
            }
            return;
        }
        bool req = required && (*required)[e];
        if (left > 0) {
            in[e] = true;
            choose(e + 1, left - 1);
            in[e] = false;
        }
        if (!req) choose(e + 1, left);
    };
    if (nreq <= k) choose(0, k);
    return out;
}

std::vector<GenericAB> generic_ab(const StableGraph& A, const StableGraph& B) {
    std::vector<GenericAB> out;
    const int nv = A.num_vertices(), kb = B.num_edges();
    std::vector<std::vector<StableGraph>> local(nv);
    std::vector<std::vector<long long>> local_aut(nv);
    for (int v = 0; v < nv; ++v) {
        std::vector<int> pts;
        for (int i : A.legs_at(v)) pts.push_back(A.legs[i].label);
        for (int h : A.halfedges_at(v)) pts.push_back(kHalfEdgeLeg + h);
        local[v] = enumerate_graphs(A.genus[v], pts, kb);
        for (const auto& d : local[v]) local_aut[v].push_back(canonicalize(d).aut);
    }
    std::vector<int> pick(nv, 0);
    std::function<void(int, int)> rec = [&](int v, int used) {
        if (v == nv) {
            GenericAB s;
            StableGraph& G = s.gamma;
            std::vector<int> offset(nv);
            for (int w = 0; w < nv; ++w) {
                const auto& d = local[w][pick[w]];
                offset[w] = G.num_vertices();
                for (int x = 0; x < d.num_vertices(); ++x) {
                    G.add_vertex(d.genus[x], A.tag[w]);
                    s.local_vertex.push_back(x);
                }
                s.aut *= local_aut[w][pick[w]];
            }
            auto where = [&](int h) {
                int w = A.hv[h];
                const auto& d = local[w][pick[w]];
                return offset[w] + d.legs[d.leg_index(kHalfEdgeLeg + h)].vertex;
            };
            for (int e = 0; e < A.num_edges(); ++e) G.add_edge(where(2 * e), where(2 * e + 1));
            std::vector<bool> req(A.num_edges(), false);
            for (int w = 0; w < nv; ++w) {
                const auto& d = local[w][pick[w]];
                for (int e = 0; e < d.num_edges(); ++e) {
                    G.add_edge(offset[w] + d.hv[2 * e], offset[w] + d.hv[2 * e + 1]);
                    req.push_back(true);
                }
                for (const auto& l : d.legs)
                    if (l.label < kHalfEdgeLeg) G.add_leg(l.label, offset[w] + l.vertex);
            }
            s.fA.alpha.resize(G.num_vertices());
            for (int w = 0; w < nv; ++w)
                for (int x = 0; x < local[w][pick[w]].num_vertices(); ++x) s.fA.alpha[offset[w] + x] = w;
            for (int h = 0; h < A.num_halfedges(); ++h) s.fA.beta.push_back(h);
            for (int e = 0; e < A.num_edges(); ++e) s.fA.edges.push_back(e);
            s.fB = a_structures(G, B, &req);
            if (!s.fB.empty()) out.push_back(std::move(s));
            return;
        }
        for (size_t i = 0; i < local[v].size(); ++i) {
            int e = local[v][i].num_edges();
            if (used + e > kb) continue;
            pick[v] = static_cast<int>(i);
            rec(v + 1, used + e);
        }
    };
    rec(0, 0);
    return out;
}

long long count_generic_classes(const GenericAB& s) {
    long long n = static_cast<long long>(s.fB.size());
    if (n % s.aut != 0) throw std::logic_error("automorphisms do not act freely on generic structures");
    return n / s.aut;
}

}  // namespace mgn
