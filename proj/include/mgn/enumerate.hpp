#ifndef MGN_ENUMERATE_HPP
#define MGN_ENUMERATE_HPP

#include "mgn/graph.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace mgn {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Candidate cap shared by long enumerations; 0 means unlimited.
struct Budget {
    std::size_t cap = 0;
    std::size_t used = 0;
    double deadline = 0;  // seconds since epoch, 0 = none
    void tick(std::size_t k = 1);
};
Budget& global_budget();

// Stable graphs of genus g with the given leg labels, up to isomorphism, with
// min_edges <= |E| <= max_edges, ordered by edge count then canonical key.
// With leg_color, legs of equal color are interchangeable.
std::vector<StableGraph> enumerate_graphs(int g, const std::vector<int>& labels, int max_edges, int min_edges = 0,
                                          const std::vector<int>* leg_color = nullptr);

struct Stratum {
    StableGraph graph;
    Decoration dec;
};

// Decorated strata of cohomological degree d (edges + decoration degree) on M_{g,n}, up to isomorphism.
std::vector<Stratum> decorated_strata(int g, const std::vector<int>& labels, int degree);

}  // namespace mgn

#endif
