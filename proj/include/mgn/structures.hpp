#ifndef MGN_STRUCTURES_HPP
#define MGN_STRUCTURES_HPP

#include "mgn/graph.hpp"

#include <vector>

namespace mgn {

// A-structure on gamma: a morphism gamma -> A given by the vertex map alpha and the
// half-edge embedding beta (A half-edge -> gamma half-edge). Edges outside im(beta) are contracted.
struct AStructure {
    std::vector<int> alpha;
    std::vector<int> beta;
    std::vector<int> edges;  // gamma edges in the image, sorted
};

// All A-structures on gamma. If required is given, the image must contain those edges of gamma.
std::vector<AStructure> a_structures(const StableGraph& gamma, const StableGraph& A,
                                     const std::vector<bool>* required = nullptr);

// Generic (A,B)-structure: gamma with A- and B-structures whose images cover all half-edges.
// aut is |Aut(gamma, fA)|; the raw B-structures on a fixed (gamma, fA) fall into free orbits.
struct GenericAB {
    StableGraph gamma;
    AStructure fA;
    std::vector<AStructure> fB;  // all raw B-structures compatible with fA
    long long aut = 1;
    std::vector<int> local_vertex;  // gamma vertex -> index inside the degeneration of its A-vertex
};

// All (gamma, fA) with gamma a degeneration of A adding at most |E(B)| edges,
// together with the raw generic B-structures.
std::vector<GenericAB> generic_ab(const StableGraph& A, const StableGraph& B);

// Number of isomorphism classes of generic (A,B)-structures grouped by gamma.
long long count_generic_classes(const GenericAB& s);

// Leg label used for the point of half-edge h of A in the factor spaces of M_A.
constexpr int kHalfEdgeLeg = 1000;

}  // namespace mgn

#endif
