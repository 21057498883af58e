#ifndef MGN_LINALG_HPP
#define MGN_LINALG_HPP

#include "mgn/rational.hpp"

#include <Eigen/Core>
#include <vector>

namespace mgn {

using RatMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

enum class SolveStatus { Unique, Underdetermined, Inconsistent };

struct SolveResult {
    SolveStatus status = SolveStatus::Inconsistent;
    RatVector solution;             // particular solution, free variables set to zero
    std::vector<RatVector> kernel;  // basis of the null space
};

// Fraction-free (Bareiss) elimination over the integers after clearing denominators.
SolveResult solve_linear(const RatMatrix& m, const RatVector& b);
int rank(const RatMatrix& m);
// Indices of a maximal linearly independent subset of rows, chosen greedily in order.
std::vector<int> independent_rows(const RatMatrix& m);
RatMatrix inverse(const RatMatrix& m);

}  // namespace mgn

#endif
