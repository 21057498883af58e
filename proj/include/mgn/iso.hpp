#ifndef MGN_ISO_HPP
#define MGN_ISO_HPP

#include "mgn/graph.hpp"

#include <functional>
#include <vector>

namespace mgn {

// A graph with colored vertices, half-edges and legs and an optional group action
// given as permutations (one per group element, identity first).
struct IsoData {
    const StableGraph* g = nullptr;
    std::vector<long long> vcol, hcol, lcol;
    std::vector<std::vector<int>> actV, actH, actL;

    static IsoData plain(const StableGraph& g, const Decoration* d = nullptr,
                         const std::vector<int>* leg_color = nullptr);
};

struct IsoMap {
    std::vector<int> v, h, l;
};

// Enumerates isomorphisms a -> b that respect colors, incidence, the involution and the group
// action. The callback returns false to stop. Returns the number of isomorphisms visited.
long long for_each_iso(const IsoData& a, const IsoData& b, const std::function<bool(const IsoMap&)>& cb);
bool isomorphic(const IsoData& a, const IsoData& b);
long long count_automorphisms(const IsoData& a);

std::vector<IsoMap> isomorphisms(const StableGraph& a, const Decoration* da, const StableGraph& b,
                                 const Decoration* db);

}  // namespace mgn

#endif
