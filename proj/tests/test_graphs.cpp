#include "doctest.h"
#include "fixtures.hpp"
#include "mgn/enumerate.hpp"
#include "mgn/iso.hpp"
#include "mgn/structures.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

using namespace mgn;
using namespace mgn::fixtures;

namespace {

// Brute-force invariant: minimum over all vertex permutations of (genus, legs, adjacency counts).
std::vector<int> brute_form(const StableGraph& g) {
    const int n = g.num_vertices();
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<int> best;
    do {
        std::vector<int> s;
        for (int i = 0; i < n; ++i) {
            int v = p[i];
            s.push_back(g.genus[v]);
            std::vector<int> ls;
            for (const auto& l : g.legs)
                if (l.vertex == v) ls.push_back(l.label);
            std::sort(ls.begin(), ls.end());
            s.push_back(static_cast<int>(ls.size()));
            s.insert(s.end(), ls.begin(), ls.end());
        }
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                int c = 0;
                for (int e = 0; e < g.num_edges(); ++e) {
                    int a = g.hv[2 * e], b = g.hv[2 * e + 1];
                    if ((a == p[i] && b == p[j]) || (a == p[j] && b == p[i])) ++c;
                }
                s.push_back(c);
            }
        if (best.empty() || s < best) best = s;
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

// All connected stable graphs of type (g, labels) by direct construction.
std::set<std::vector<int>> brute_enumerate(int g, const std::vector<int>& labels) {
    std::set<std::vector<int>> out;
    const int n = static_cast<int>(labels.size());
    for (int nv = 1; nv <= std::max(1, 2 * g - 2 + n); ++nv) {
        std::vector<std::pair<int, int>> types;
        for (int i = 0; i < nv; ++i)
            for (int j = i; j < nv; ++j) types.push_back({i, j});
        std::vector<int> gen(nv, 0);
        std::function<void(int)> genus_rec = [&](int v) {
            if (v == nv) {
                int sum = std::accumulate(gen.begin(), gen.end(), 0);
                int ne = g - sum + nv - 1;
                if (ne < 0) return;
                std::vector<int> legv(n, 0);
                std::function<void(int)> leg_rec = [&](int i) {
                    if (i == n) {
                        std::vector<int> cnt(types.size(), 0);
                        std::function<void(size_t, int)> edge_rec = [&](size_t t, int left) {
                            if (t == types.size()) {
                                if (left) return;
                                StableGraph x;
                                for (int w = 0; w < nv; ++w) x.add_vertex(gen[w]);
                                for (int k = 0; k < n; ++k) x.add_leg(labels[k], legv[k]);
                                for (size_t u = 0; u < types.size(); ++u)
                                    for (int c = 0; c < cnt[u]; ++c) x.add_edge(types[u].first, types[u].second);
                                if (x.is_stable() && x.is_connected()) out.insert(brute_form(x));
                                return;
                            }
                            for (int c = 0; c <= left; ++c) {
                                cnt[t] = c;
                                edge_rec(t + 1, left - c);
                            }
                            cnt[t] = 0;
                        };
                        edge_rec(0, ne);
                        return;
                    }
                    for (int w = 0; w < nv; ++w) {
                        legv[i] = w;
                        leg_rec(i + 1);
                    }
                };
                leg_rec(0);
                return;
            }
            for (int x = 0; x <= g; ++x) {
                gen[v] = x;
                genus_rec(v + 1);
            }
        };
        genus_rec(0);
    }
    return out;
}

StableGraph random_graph(std::mt19937& rng, int nv, int ne, int nl, int maxg) {
    StableGraph g;
    for (int v = 0; v < nv; ++v) g.add_vertex(static_cast<int>(rng() % (maxg + 1)));
    for (int v = 1; v < nv; ++v) g.add_edge(static_cast<int>(rng() % v), v);
    for (int e = nv - 1; e < ne; ++e) g.add_edge(static_cast<int>(rng() % nv), static_cast<int>(rng() % nv));
    for (int l = 0; l < nl; ++l) g.add_leg(l + 1, static_cast<int>(rng() % nv));
    return g;
}

StableGraph shuffled(const StableGraph& g, std::mt19937& rng) {
    std::vector<int> p(g.num_vertices());
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    StableGraph x;
    std::vector<int> inv(p.size());
    for (size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<int>(i);
    for (size_t i = 0; i < p.size(); ++i) x.add_vertex(g.genus[p[i]], g.tag[p[i]]);
    std::vector<int> eo(g.num_edges());
    std::iota(eo.begin(), eo.end(), 0);
    std::shuffle(eo.begin(), eo.end(), rng);
    for (int e : eo) {
        int a = inv[g.hv[2 * e]], b = inv[g.hv[2 * e + 1]];
        if (rng() & 1) std::swap(a, b);
        x.add_edge(a, b);
    }
    auto legs = g.legs;
    std::shuffle(legs.begin(), legs.end(), rng);
    for (auto l : legs) x.add_leg(l.label, inv[l.vertex]);
    return x;
}


}  // namespace

TEST_CASE("canonical form is idempotent and invariant under relabelling") {
    std::mt19937 rng(11);
    for (int t = 0; t < 200; ++t) {
        auto g = random_graph(rng, 1 + t % 5, 1 + t % 5 + t % 3, t % 4, 1);
        auto c = canonicalize(g);
        auto c2 = canonicalize(c.graph);
        CHECK(c2.graph == c.graph);
        CHECK(c2.key == c.key);
        auto s = shuffled(g, rng);
        CHECK(canonical_key(s) == c.key);
        CHECK(canonicalize(s).aut == c.aut);
    }
}

TEST_CASE("isomorphism agrees with brute-force oracle") {
    std::mt19937 rng(5);
    int agree = 0;
    for (int t = 0; t < 300; ++t) {
        int nv = 1 + t % 4;
        auto a = random_graph(rng, nv, nv + t % 3, t % 3, 1);
        auto b = random_graph(rng, nv, nv + t % 3, t % 3, 1);
        if (t % 2) b = shuffled(a, rng);
        bool canon_eq = canonical_key(a) == canonical_key(b);
        bool brute_eq = brute_form(a) == brute_form(b);
        bool iso = isomorphic(IsoData::plain(a), IsoData::plain(b));
        CHECK(canon_eq == brute_eq);
        CHECK(iso == brute_eq);
        agree += brute_eq;
    }
    CHECK(agree >= 150);
}

TEST_CASE("automorphism counts") {
    StableGraph loop;
    loop.add_vertex(0);
    loop.add_edge(0, 0);
    loop.add_leg(1, 0);
    CHECK(canonicalize(loop).aut == 2);
    StableGraph theta;
    theta.add_vertex(0);
    theta.add_vertex(0);
    for (int i = 0; i < 3; ++i) theta.add_edge(0, 1);
    CHECK(canonicalize(theta).aut == 12);
    CHECK(count_automorphisms(IsoData::plain(theta)) == 12);
    StableGraph two_loops;
    two_loops.add_vertex(1);
    two_loops.add_edge(0, 0);
    two_loops.add_edge(0, 0);
    CHECK(canonicalize(two_loops).aut == 8);
    CHECK(count_automorphisms(IsoData::plain(two_loops)) == 8);
    // decorations break symmetry
    Decoration d = Decoration::trivial(two_loops);
    d.hpsi[0] = 1;
    CHECK(canonicalize(two_loops, &d).aut == 2);
    CHECK(count_automorphisms(IsoData::plain(two_loops, &d)) == 2);
    auto dc = dumbbell_chain();
    CHECK(canonicalize(dc).aut == 2);
    std::mt19937 rng(3);
    for (int t = 0; t < 100; ++t) {
        auto g = random_graph(rng, 1 + t % 4, 2 + t % 4, t % 2, 1);
        CHECK(canonicalize(g).aut == count_automorphisms(IsoData::plain(g)));
    }
}

TEST_CASE("colored legs") {
    StableGraph g;
    g.add_vertex(0);
    g.add_vertex(0);
    g.add_edge(0, 1);
    g.add_leg(1, 0);
    g.add_leg(2, 0);
    g.add_leg(3, 1);
    g.add_leg(4, 1);
    std::vector<int> col{0, 0, 0, 0};
    CHECK(canonicalize(g, nullptr, &col).aut == 8);
    CHECK(canonicalize(g).aut == 1);
    auto h = relabel_legs(g, {{2, 3}, {3, 2}});
    CHECK(canonical_key(h) != canonical_key(g));
    CHECK(canonical_key(h, nullptr, &col) == canonical_key(g, nullptr, &col));
}

TEST_CASE("enumeration matches brute force") {
    std::vector<std::pair<int, std::vector<int>>> cases{{0, {1, 2, 3, 4}}, {0, {1, 2, 3, 4, 5}}, {1, {1}}, {1, {1, 2}}, {2, {}}};
    for (auto& [g, labels] : cases) {
        int n = static_cast<int>(labels.size());
        auto list = enumerate_graphs(g, labels, 3 * g - 3 + n);
        std::set<std::vector<int>> ours;
        for (auto& x : list) {
            CHECK(x.is_stable());
            CHECK(x.total_genus() == g);
            ours.insert(brute_form(x));
        }
        CHECK(ours.size() == list.size());
        CHECK(ours == brute_enumerate(g, labels));
    }
    CHECK(enumerate_graphs(0, {1, 2, 3, 4}, 1).size() == 4);
    CHECK(enumerate_graphs(0, {1, 2, 3, 4, 5}, 2).size() == 26);
    CHECK(enumerate_graphs(2, {}, 3).size() == 7);
    std::vector<int> col(5, 0);
    CHECK(enumerate_graphs(0, {1, 2, 3, 4, 5}, 2, 0, &col).size() == 3);
}

TEST_CASE("decorated strata of degree one on M_{1,1} and M_{2,1}") {
    CHECK(decorated_strata(1, {1}, 1).size() == 3);  // psi, kappa, loop
    auto d = decorated_strata(2, {1}, 1);
    CHECK(d.size() == 4);  // psi, kappa, irreducible, separating
    for (auto& s : d) CHECK(s.graph.num_edges() + s.dec.degree() == 1);
}

TEST_CASE("A-structures") {
    StableGraph A;
    A.add_vertex(2);
    A.add_vertex(1);
    A.add_edge(0, 0);
    A.add_edge(0, 1);
    CHECK(a_structures(dumbbell_chain(), A).size() == 4);
    std::mt19937 rng(9);
    for (int t = 0; t < 40; ++t) {
        auto g = random_graph(rng, 1 + t % 3, 1 + t % 3 + t % 2, t % 3, 1);
        if (!g.is_stable()) continue;
        CHECK(static_cast<long long>(a_structures(g, g).size()) == canonicalize(g).aut);
    }
}

TEST_CASE("generic (A,B)-structures on the one-loop self-intersection") {
    StableGraph A;
    A.add_vertex(3);
    A.add_edge(0, 0);
    auto list = generic_ab(A, A);
    std::map<std::string, long long> by_shape;
    for (auto& s : list) {
        by_shape[canonical_key(s.gamma)] += count_generic_classes(s);
        for (auto& f : s.fB) {
            std::vector<bool> cov(s.gamma.num_halfedges(), false);
            for (int h : s.fA.beta) cov[h] = true;
            for (int h : f.beta) cov[h] = true;
            CHECK(std::all_of(cov.begin(), cov.end(), [](bool b) { return b; }));
        }
    }
    StableGraph g2;
    g2.add_vertex(2);
    g2.add_vertex(1);
    g2.add_edge(0, 1);
    g2.add_edge(0, 1);
    StableGraph g3;
    g3.add_vertex(2);
    g3.add_edge(0, 0);
    g3.add_edge(0, 0);
    REQUIRE(by_shape.size() == 3);
    CHECK(by_shape[canonical_key(A)] == 2);
    CHECK(by_shape[canonical_key(g2)] == 4);
    CHECK(by_shape[canonical_key(g3)] == 1);
}
