#ifndef MGN_TAUT_HPP
#define MGN_TAUT_HPP

#include "mgn/graph.hpp"
#include "mgn/rational.hpp"
#include "mgn/structures.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mgn {

struct Factor {
    int g = 0;
    std::vector<int> labels;  // sorted
    friend bool operator==(const Factor&, const Factor&) = default;
};

// Product of moduli spaces; vertex tags of term graphs index the factors.
struct Space {
    std::vector<Factor> factors;

    static Space connected(int g, std::vector<int> labels);
    static Space standard(int g, int n);
    // the factors of M_A, one per vertex of A
    static Space of_graph(const StableGraph& A);
    // the space A itself lives on
    static Space target_of(const StableGraph& A);

    int dimension() const;
    int factor_of(int label) const;
    bool is_connected() const { return factors.size() == 1; }
    std::string str() const;
    friend bool operator==(const Space&, const Space&) = default;
};

struct TermData {
    StableGraph graph;
    Decoration dec;
    Rational coeff;
};

// Linear combination of unnormalized decorated strata  xi_{A*}(theta).
class TautClass {
public:
    TautClass() = default;
    explicit TautClass(Space s) : space_(std::move(s)) {}

    static TautClass fundamental(const Space& s);

    const Space& space() const { return space_; }
    const std::map<std::string, TermData>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    void add(const StableGraph& g, const Decoration& d, const Rational& c);
    void add(const TautClass& o, const Rational& scale = Rational(1));
    // coefficient of a given stratum (0 if absent)
    Rational coeff(const StableGraph& g, const Decoration* d = nullptr) const;

    TautClass operator-() const;
    TautClass scaled(const Rational& c) const;
    friend TautClass operator+(const TautClass& a, const TautClass& b);
    friend TautClass operator-(const TautClass& a, const TautClass& b);

    std::optional<int> degree() const;
    TautClass degree_part(int d) const;

    friend bool operator==(const TautClass& a, const TautClass& b);

private:
    Space space_;
    std::map<std::string, TermData> terms_;
};

std::string describe(const TautClass& x);
std::string describe_term(const StableGraph& g, const Decoration& d);

// Basic classes on connected spaces.
TautClass psi_class(const Space& s, int label, int exponent = 1);
TautClass kappa_class(const Space& s, int a, int factor = 0);
// xi_{A*}(theta), unnormalized
TautClass stratum_class(const StableGraph& A, const Decoration* theta = nullptr, const Rational& c = Rational(1));
// (1/|Aut A|) xi_{A*}(theta)
TautClass normalized_stratum(const StableGraph& A, const Decoration* theta = nullptr, const Rational& c = Rational(1));

Rational evaluate(const TautClass& x);

TautClass product(const TautClass& x, const TautClass& y);
TautClass pullback_boundary(const StableGraph& A, const TautClass& x);
TautClass pushforward_boundary(const StableGraph& A, const TautClass& x);
// multiply a class on M_A by the pullback of a decoration theta on A
TautClass multiply_pulled_decoration(const StableGraph& A, const Decoration& theta, const TautClass& x);

TautClass pullback_forgetful(const TautClass& x, int new_label, int factor = 0);
TautClass pushforward_forgetful(const TautClass& x, int label);

TautClass relabel(const TautClass& x, const std::vector<std::pair<int, int>>& map);
// sum over all permutations of the given labels
TautClass symmetrize(const TautClass& x, const std::vector<int>& labels);
// sum over the distinct images under permutations of the labels
TautClass orbit_sum(const TautClass& x, const std::vector<int>& labels);
TautClass tensor(const TautClass& x, const TautClass& y);

TautClass lambda1(int g);

// |Aut| of the undecorated graph, used for the normalized convention
long long graph_aut(const StableGraph& g);

}  // namespace mgn

#endif
