#ifndef MGN_WITTEN_HPP
#define MGN_WITTEN_HPP

#include "mgn/rational.hpp"

#include <string>
#include <vector>

namespace mgn {

// <tau_{a_1} ... tau_{a_n}>_g; zero when the degree does not match.
Rational psi_integral(int g, std::vector<int> a);
// integral of prod psi_i^{a_i} prod kappa_{b_j} over M_{g,n}, n = psi.size()
Rational kappa_psi_integral(int g, std::vector<int> psi, std::vector<int> kappa);
// Same, but throws unless the monomial has top degree.
Rational vertex_integral(int g, int n, const std::vector<int>& psi, const std::vector<int>& kappa);

struct WittenKey {
    int g;
    std::vector<int> psi;
    std::vector<int> kappa;
};

std::vector<WittenKey> cached_keys();
void clear_witten_cache();
// Persist to <dir>/witten_cache.json; load merges.
void save_witten_cache(const std::string& dir);
void load_witten_cache(const std::string& dir);

}  // namespace mgn

#endif
