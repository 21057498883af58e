#include "mgn/enumerate.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <set>

namespace mgn {

void Budget::tick(std::size_t k) {
    used += k;
    if (cap && used > cap) throw BudgetExceeded("enumeration budget exceeded");
    if (deadline > 0 && (used & 0xff) == 0) {
        double now = std::chrono::duration<double>(std::chrono::system_clock::now().time_since_epoch()).count();
        if (now > deadline) throw BudgetExceeded("timeout exceeded");
    }
}

Budget& global_budget() {
    static Budget b;
    return b;
}

namespace {

std::vector<int> colors_for(const StableGraph& g, const std::vector<int>& labels, const std::vector<int>* leg_color) {
    std::vector<int> out;
    for (const auto& l : g.legs) {
        auto it = std::find(labels.begin(), labels.end(), l.label);
        out.push_back((*leg_color)[it - labels.begin()]);
    }
    return out;
}

// All graphs obtained by degenerating one vertex of g along a new edge.
void degenerations(const StableGraph& g, const std::function<void(StableGraph&&)>& emit) {
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (g.genus[v] >= 1) {
            StableGraph x = g;
            --x.genus[v];
            x.add_edge(v, v);
            emit(std::move(x));
        }
        auto hs = g.halfedges_at(v);
        auto ls = g.legs_at(v);
        const int np = static_cast<int>(hs.size() + ls.size());
        for (int mask = 0; mask < (1 << np); ++mask) {
            int k = __builtin_popcount(mask);
            for (int g1 = 0; g1 <= g.genus[v]; ++g1) {
                int g2 = g.genus[v] - g1;
                if (2 * g1 - 2 + k + 1 <= 0 || 2 * g2 - 2 + (np - k) + 1 <= 0) continue;
                // each split appears twice; keep the one where point 0 stays (or g1 >= g2 when no points)
                if (np > 0 && !(mask & 1)) continue;
                if (np == 0 && g1 < g2) continue;
                StableGraph x = g;
                x.genus[v] = g1;
                int w = x.add_vertex(g2, g.tag[v]);
                for (int i = 0; i < np; ++i) {
                    if (mask >> i & 1) continue;
                    if (i < static_cast<int>(hs.size())) x.hv[hs[i]] = w;
                    else x.legs[ls[i - hs.size()]].vertex = w;
                }
                x.add_edge(v, w);
                emit(std::move(x));
            }
        }
    }
}

}  // namespace

std::vector<StableGraph> enumerate_graphs(int g, const std::vector<int>& labels, int max_edges, int min_edges,
                                          const std::vector<int>* leg_color) {
    std::vector<StableGraph> out;
    StableGraph s = smooth_graph(g, labels);
    if (!s.is_stable()) return out;
    std::vector<std::pair<std::string, StableGraph>> level{{"", s}};
    for (int k = 0; k <= max_edges && !level.empty(); ++k) {
        if (k >= min_edges)
            for (auto& [key, gr] : level) out.push_back(gr);
        if (k == max_edges) break;
        std::map<std::string, StableGraph> next;
        for (auto& [key, gr] : level) {
            degenerations(gr, [&](StableGraph&& x) {
                global_budget().tick();
                std::vector<int> col;
                if (leg_color) col = colors_for(x, labels, leg_color);
                auto c = canonicalize(x, nullptr, leg_color ? &col : nullptr);
                if (next.count(c.key)) return;
                next.emplace(c.key, leg_color ? x : c.graph);
            });
        }
        level.assign(next.begin(), next.end());
    }
    return out;
}

namespace {

// distribute `total` among `slots` nonnegative parts
void compositions(int total, int slots, std::vector<int>& cur, const std::function<void()>& f) {
    if (slots == 0) {
        if (total == 0) f();
        return;
    }
    if (slots == 1) {
        cur.push_back(total);
        f();
        cur.pop_back();
        return;
    }
    for (int x = 0; x <= total; ++x) {
        cur.push_back(x);
        compositions(total - x, slots - 1, cur, f);
        cur.pop_back();
    }
}

void partitions(int total, int maxpart, std::vector<int>& cur, const std::function<void()>& f) {
    if (total == 0) {
        f();
        return;
    }
    for (int p = std::min(total, maxpart); p >= 1; --p) {
        cur.push_back(p);
        partitions(total - p, p, cur, f);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Stratum> decorated_strata(int g, const std::vector<int>& labels, int degree) {
    std::map<std::string, Stratum> found;
    int dim = 3 * g - 3 + static_cast<int>(labels.size());
    if (degree < 0 || degree > dim) return {};
    for (const auto& gr : enumerate_graphs(g, labels, degree)) {
        int left = degree - gr.num_edges();
        const int nv = gr.num_vertices();
        // degree per vertex
        std::vector<int> vdeg;
        compositions(left, nv, vdeg, [&]() {
            for (int v = 0; v < nv; ++v)
                if (vdeg[v] > gr.vertex_dim(v)) return;
            Decoration d = Decoration::trivial(gr);
            std::function<void(int)> per_vertex = [&](int v) {
                if (v == nv) {
                    auto c = canonicalize(gr, &d);
                    if (!found.count(c.key)) found.emplace(c.key, Stratum{c.graph, c.dec});
                    return;
                }
                auto hs = gr.halfedges_at(v);
                auto ls = gr.legs_at(v);
                for (int kdeg = 0; kdeg <= vdeg[v]; ++kdeg) {
                    std::vector<int> part;
                    partitions(kdeg, kdeg, part, [&]() {
                        d.kappa[v] = part;
                        std::sort(d.kappa[v].begin(), d.kappa[v].end());
                        std::vector<int> ex;
                        compositions(vdeg[v] - kdeg, static_cast<int>(hs.size() + ls.size()), ex, [&]() {
                            for (size_t i = 0; i < hs.size(); ++i) d.hpsi[hs[i]] = ex[i];
                            for (size_t i = 0; i < ls.size(); ++i) d.lpsi[ls[i]] = ex[hs.size() + i];
                            per_vertex(v + 1);
                        });
                        for (int h : hs) d.hpsi[h] = 0;
                        for (int l : ls) d.lpsi[l] = 0;
                        d.kappa[v].clear();
                    });
                }
            };
            per_vertex(0);
        });
    }
    std::vector<Stratum> out;
    for (auto& [k, s] : found) out.push_back(std::move(s));
    std::stable_sort(out.begin(), out.end(), [](const Stratum& a, const Stratum& b) {
        auto kc = [](const Stratum& s) {
            int n = 0;
            for (const auto& k : s.dec.kappa) n += static_cast<int>(k.size());
            return n;
        };
        return std::make_pair(kc(a), a.graph.num_edges()) < std::make_pair(kc(b), b.graph.num_edges());
    });
    return out;
}

}  // namespace mgn
