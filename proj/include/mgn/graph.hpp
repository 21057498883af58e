#ifndef MGN_GRAPH_HPP
#define MGN_GRAPH_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace mgn {

struct Leg {
    int label;
    int vertex;
    friend bool operator==(const Leg&, const Leg&) = default;
};

// Stable graph. Half-edges 2e and 2e+1 form edge e. Vertex tags index factors of a product space.
struct StableGraph {
    std::vector<int> genus;
    std::vector<int> tag;
    std::vector<Leg> legs;
    std::vector<int> hv;

    int num_vertices() const { return static_cast<int>(genus.size()); }
    int num_edges() const { return static_cast<int>(hv.size() / 2); }
    int num_halfedges() const { return static_cast<int>(hv.size()); }
    int num_legs() const { return static_cast<int>(legs.size()); }
    static int partner(int h) { return h ^ 1; }

    int add_vertex(int g, int t = 0);
    int add_edge(int u, int v);
    void add_leg(int label, int v) { legs.push_back({label, v}); }

    int valence(int v) const;
    int leg_index(int label) const;
    std::vector<int> halfedges_at(int v) const;
    std::vector<int> legs_at(int v) const;
    int loops_at(int v) const;
    bool is_loop(int e) const { return hv[2 * e] == hv[2 * e + 1]; }
    int vertex_dim(int v) const { return 3 * genus[v] - 3 + valence(v); }
    int dimension() const;
    // arithmetic genus of the component containing vertex v
    int component_genus(int v) const;
    int total_genus() const;
    int num_components() const;
    std::vector<int> components() const;
    bool is_stable() const;
    bool is_connected() const { return num_components() <= 1; }
    std::vector<int> leg_labels() const;

    friend bool operator==(const StableGraph&, const StableGraph&) = default;
};

// psi exponents on legs and half-edges, kappa monomials on vertices
struct Decoration {
    std::vector<int> lpsi;
    std::vector<int> hpsi;
    std::vector<std::vector<int>> kappa;

    static Decoration trivial(const StableGraph& g);
    int degree() const;
    int vertex_degree(const StableGraph& g, int v) const;
    bool is_trivial() const;
    // some vertex carries more than its dimension
    bool vanishes(const StableGraph& g) const;
    friend bool operator==(const Decoration&, const Decoration&) = default;
};

struct Contraction {
    StableGraph graph;
    std::vector<int> vmap;   // vertex of source -> vertex of contracted graph
    std::vector<int> emap;   // kept edge of source -> edge of contracted graph, -1 if contracted
    bool valid = true;       // false if the contraction merged vertices with different tags
};

// Contract all edges whose flag is set.
Contraction contract(const StableGraph& g, const std::vector<bool>& contract_edge);

struct Canon {
    std::string key;
    StableGraph graph;
    Decoration dec;
    long long aut = 1;
    std::vector<int> vperm;  // source vertex -> canonical vertex
    std::vector<int> hperm;  // source half-edge -> canonical half-edge
    std::vector<int> lperm;  // source leg -> canonical leg
};

// Canonical form of a decorated graph. Legs are compared by label, or by leg_color when given
// (legs of equal color become interchangeable).
Canon canonicalize(const StableGraph& g, const Decoration* dec = nullptr,
                   const std::vector<int>* leg_color = nullptr);
std::string canonical_key(const StableGraph& g, const Decoration* dec = nullptr,
                          const std::vector<int>* leg_color = nullptr);

// Relabel legs via label -> label map; labels not in the map are kept.
StableGraph relabel_legs(const StableGraph& g, const std::vector<std::pair<int, int>>& map);

// Smooth graph of a single vertex.
StableGraph smooth_graph(int g, const std::vector<int>& labels, int tag = 0);

std::string describe(const StableGraph& g);

}  // namespace mgn

#endif
