#ifndef MGN_COVERS_HPP
#define MGN_COVERS_HPP

#include "mgn/group.hpp"
#include "mgn/rational.hpp"

#include <optional>
#include <vector>

namespace mgn {

// Riemann-Hurwitz; empty if g' is not a nonnegative integer.
std::optional<int> target_genus(int g, const Group& G, const std::vector<int>& xi);

Rational degree_delta_cyclic(int gprime, int m, const std::vector<int>& xi);
// Exhaustive count of generator images; throws BudgetExceeded when |G|^(2g'+b) > budget.
Rational degree_delta_bruteforce(const Group& G, int gprime, const std::vector<int>& xi,
                                 double budget = 1e15);
// cyclic formula for cyclic groups, brute force otherwise
Rational degree_delta(const Group& G, int gprime, const std::vector<int>& xi);

struct Marking {
    int branch;  // index i into xi
    int coset;   // minimal element a of a<h_i>
    int h;       // a h_i a^-1, generator of the stabilizer
    int stab;    // ord(h_i)
    int label;   // 1-based
};

struct HurwitzSpec {
    int g = 0;
    Group group;
    std::vector<int> xi;

    int b() const { return static_cast<int>(xi.size()); }
    std::optional<int> gprime() const { return target_genus(g, group, xi); }
    int r() const;
    Rational degree() const;
    bool nonempty() const { return gprime() && degree().sign() > 0; }
};

std::vector<Marking> marking_layout(const HurwitzSpec& s);
// label of p_{i, t a} for the marking with label `label`
int act_on_marking(const HurwitzSpec& s, const std::vector<Marking>& layout, int t, int label);

}  // namespace mgn

#endif
