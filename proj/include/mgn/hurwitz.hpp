#ifndef MGN_HURWITZ_HPP
#define MGN_HURWITZ_HPP

#include "mgn/covers.hpp"
#include "mgn/enumerate.hpp"
#include "mgn/ggraph.hpp"
#include "mgn/linalg.hpp"
#include "mgn/taut.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mgn {

// pi_* phi_* of an admissible cover space, keeping some markings. kept[j] is the marking that
// becomes label j+1 on M_{g,n}. psi optionally inserts psi classes at markings before pushing forward.
struct HurwitzCycleRef {
    HurwitzSpec spec;
    std::vector<int> kept;
    Rational norm{1};
    std::vector<std::pair<int, int>> psi;

    int n() const { return static_cast<int>(kept.size()); }
    // codimension on M_{g,n}
    int codim() const;
    // branch indices whose markings are all forgotten and carry no psi, grouped by equal h
    std::vector<std::vector<int>> symmetric_groups() const;
    std::string str() const;
};

// product of k! over the groups of interchangeable forgotten branches
Rational default_normalization(const HurwitzCycleRef& c);

// <prefix>:<g>:<group>:<xi>[:keep=<labels>][:norm=<q>]; group is cyclic:<m>, Z<m> or table:<file>;
// xi entries are comma separated, h^k repeats h.
HurwitzCycleRef parse_cycle(const std::string& s);

// delta_* phi^* pi^* x on M_{g',b}, without the normalization factor
TautClass pullpush_delta(const HurwitzCycleRef& c, const TautClass& x);
// integral of the above; x of complementary degree
Rational pullpush_evaluate(const HurwitzCycleRef& c, const TautClass& x);
// norm * pullpush_evaluate
Rational pairing(const HurwitzCycleRef& c, const TautClass& x);
std::vector<Rational> pairing_vector(const HurwitzCycleRef& c, const std::vector<TautClass>& strata);

struct SolveOutcome {
    TautClass cls;                   // particular solution
    bool unique = true;
    std::vector<TautClass> kernel;   // directions of the affine solution set when not unique
    std::vector<TautClass> generators;
    std::vector<Rational> coeffs;
};

// Normalized decorated strata of degree k on M_{g,n}, greedily reduced to a set independent under the
// intersection pairing. Ordered by number of kappa factors, then edges.
std::vector<TautClass> default_generators(int g, int n, int k);

SolveOutcome solve_by_pairing(const HurwitzCycleRef& c, int k, const std::vector<TautClass>* generators = nullptr,
                              const std::vector<TautClass>* complementary = nullptr);

int injectivity_range(int g, int n);

struct DiagonalBasis {
    Space space;
    std::vector<std::vector<TautClass>> e, f;  // per degree d: e[d] of degree d, f[d] of degree D-d
    std::vector<RatMatrix> inv;                // inv[d] = P_d^{-1}, P_d(i,j) = <e_i, f_j>
};
DiagonalBasis diagonal_basis(int g, const std::vector<int>& labels);
// Delta_* of a class on M_{g,n} into the m-fold product; copy k relabels via label_maps[k].
// The copies must end up with disjoint labels.
TautClass diagonal_pushforward(const TautClass& zeta, int m,
                               const std::vector<std::vector<std::pair<int, int>>>& label_maps = {});
// copy k carries the labels k*n+1..k*n+n
TautClass diagonal_class(int g, int n, int m);

}  // namespace mgn

#endif
