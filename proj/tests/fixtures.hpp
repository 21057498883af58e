#ifndef MGN_TEST_FIXTURES_HPP
#define MGN_TEST_FIXTURES_HPP

#include "mgn/taut.hpp"

namespace mgn::fixtures {

// one-dimensional strata of M_3 used as test curves
inline StableGraph graph_d1() {
    StableGraph g;
    g.add_vertex(0);
    g.add_vertex(0);
    g.add_vertex(0);
    g.add_edge(0, 0);
    g.add_edge(2, 2);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(1, 2);
    return g;
}

inline StableGraph graph_d2() {
    StableGraph g;
    g.add_vertex(0);
    g.add_vertex(0);
    g.add_vertex(0);
    g.add_edge(0, 0);
    g.add_edge(2, 2);
    g.add_edge(1, 1);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    return g;
}

inline StableGraph graph_d3() {
    StableGraph g;
    g.add_vertex(0);
    g.add_vertex(0);
    g.add_vertex(0);
    g.add_vertex(1);
    g.add_edge(2, 2);
    g.add_edge(0, 3);
    g.add_edge(2, 1);
    g.add_edge(0, 1);
    g.add_edge(0, 1);
    return g;
}

inline TautClass delta0(int g) {
    StableGraph a;
    a.add_vertex(g - 1);
    a.add_edge(0, 0);
    return normalized_stratum(a);
}

inline TautClass delta1(int g) {
    StableGraph a;
    a.add_vertex(1);
    a.add_vertex(g - 1);
    a.add_edge(0, 1);
    return normalized_stratum(a);
}

inline StableGraph dumbbell_chain() {
    // three genus-1 vertices, double edge v1=v2, single edge v2-v3
    StableGraph g;
    for (int i = 0; i < 3; ++i) g.add_vertex(1);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 1);
    return g;
}

}  // namespace mgn::fixtures

#endif
