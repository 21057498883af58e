#ifndef MGN_GGRAPH_HPP
#define MGN_GGRAPH_HPP

#include "mgn/covers.hpp"
#include "mgn/graph.hpp"
#include "mgn/iso.hpp"
#include "mgn/rational.hpp"
#include "mgn/structures.hpp"

#include <utility>
#include <vector>

namespace mgn {

// Stable graph with a G-action; act*[t] is the permutation induced by group element t.
// hstab/lstab hold the generator h_l of the stabilizer of each half-edge/leg.
struct GGraph {
    StableGraph graph;
    Group group;
    std::vector<std::vector<int>> actV, actH, actL;
    std::vector<int> hstab, lstab;
    std::vector<int> lbranch;  // branch index of each leg

    static GGraph trivial(const StableGraph& g);
};

// Throws std::invalid_argument naming the violated invariant.
void validate(const GGraph& gg);

struct Quotient {
    StableGraph graph;  // legs labelled by branch index + 1
    std::vector<int> piV, piH, piL;
};
Quotient quotient_graph(const GGraph& gg);

struct LocalPoint {
    bool leg;
    int index;  // leg or half-edge of gamma
};

struct LocalMonodromy {
    int g = 0;
    int gprime = 0;
    Group group;                 // G_v
    std::vector<int> elems;      // local index -> element of G
    std::vector<int> xi;         // local indices
    std::vector<LocalPoint> reps;  // one point per G_v-orbit at v, in the order of xi
    Rational degree;
    HurwitzSpec spec() const { return {g, group, xi}; }
};
LocalMonodromy local_monodromy(const GGraph& gg, int v);

std::vector<int> vertex_orbit_reps(const GGraph& gg);
std::vector<int> edge_orbits(const GGraph& gg);  // edge -> orbit id
int num_edge_orbits(const GGraph& gg);
// product of local degrees over vertex orbits
Rational ggraph_degree(const GGraph& gg);

IsoData iso_data(const GGraph& gg, const std::vector<long long>* lcol = nullptr);
long long aut_count_equivariant(const GGraph& gg);
bool equivariantly_isomorphic(const GGraph& a, const GGraph& b);

struct Lift {
    GGraph gg;
    Quotient q;
    long long aut = 1;  // automorphisms respecting branch colours
    Rational degree;
};

// All admissible G-graphs over the quotient Q (legs labelled by branch index + 1, genus per Q vertex
// is the quotient genus), up to equivariant isomorphism that may permute branches of equal colour.
std::vector<Lift> lift_quotient(const HurwitzSpec& s, const StableGraph& Q, const std::vector<int>& branch_color);

struct EquivAStructure {
    GGraph gg;
    AStructure f;
};

// The set h_{A;G,xi}; legs of A carry the marking labels 1..r.
std::vector<EquivAStructure> enumerate_generic_A_structures(const HurwitzSpec& s, const StableGraph& A);

using DecSum = std::vector<std::pair<Decoration, Rational>>;

// (-psi_h - psi_h')^(k-1) per edge orbit hit by k edges of `edges`
DecSum excess_class(const GGraph& gg, const std::vector<int>& edges);
DecSum excess_class(const EquivAStructure& s);

}  // namespace mgn

#endif
