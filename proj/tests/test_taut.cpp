#include "doctest.h"
#include "fixtures.hpp"
#include "mgn/enumerate.hpp"
#include "mgn/taut.hpp"
#include "mgn/witten.hpp"

#include <random>

using namespace mgn;
using namespace mgn::fixtures;

namespace {

std::vector<int> iota_labels(int n) {
    std::vector<int> l;
    for (int i = 1; i <= n; ++i) l.push_back(i);
    return l;
}

std::vector<TautClass> strata(int g, int n, int deg) {
    std::vector<TautClass> out;
    for (const auto& s : decorated_strata(g, iota_labels(n), deg)) out.push_back(stratum_class(s.graph, &s.dec));
    return out;
}

TautClass random_class(int g, int n, int deg, std::mt19937& rng) {
    auto basis = strata(g, n, deg);
    TautClass x(Space::standard(g, n));
    std::uniform_int_distribution<int> c(-3, 3);
    for (const auto& b : basis) x.add(b, Rational(c(rng)));
    return x;
}

// numerical equality: same pairing against every stratum of complementary degree
void check_same_class(const TautClass& a, const TautClass& b, int g, int n, int deg) {
    int dim = 3 * g - 3 + n;
    for (const auto& w : strata(g, n, dim - deg)) CHECK(evaluate(product(a, w)) == evaluate(product(b, w)));
}

}  // namespace

TEST_CASE("spaces") {
    StableGraph a;
    a.add_vertex(1);
    a.add_vertex(0);
    a.add_edge(0, 1);
    a.add_edge(1, 1);
    a.add_leg(1, 1);
    auto s = Space::of_graph(a);
    REQUIRE(s.factors.size() == 2);
    CHECK(s.factors[0].labels == std::vector<int>{kHalfEdgeLeg});
    CHECK(s.factors[1].labels == std::vector<int>{1, kHalfEdgeLeg + 1, kHalfEdgeLeg + 2, kHalfEdgeLeg + 3});
    CHECK(Space::target_of(a) == Space::standard(2, 1));
    CHECK(Space::standard(3, 0).dimension() == 6);
}

TEST_CASE("basic integrals") {
    CHECK(evaluate(psi_class(Space::standard(1, 1), 1)) == Rational(1, 24));
    CHECK(evaluate(delta0(1).scaled(Rational(1))) == Rational(0) + evaluate(delta0(1)));
    StableGraph irr;
    irr.add_vertex(0);
    irr.add_edge(0, 0);
    irr.add_leg(1, 0);
    CHECK(evaluate(normalized_stratum(irr)) == Rational(1, 2));
    CHECK_THROWS(evaluate(TautClass::fundamental(Space::standard(1, 1))));
}

TEST_CASE("boundary self-intersection on M05") {
    StableGraph d;
    d.add_vertex(0);
    d.add_vertex(0);
    d.add_edge(0, 1);
    d.add_leg(1, 0);
    d.add_leg(2, 0);
    d.add_leg(3, 1);
    d.add_leg(4, 1);
    d.add_leg(5, 1);
    auto x = stratum_class(d);
    CHECK(evaluate(product(x, x)) == Rational(-1));
    CHECK(evaluate(product(x, psi_class(Space::standard(0, 5), 1))) == Rational(0));
    CHECK(evaluate(product(x, psi_class(Space::standard(0, 5), 3))) == Rational(1));
}

TEST_CASE("lambda1 cubed on M2") {
    auto l = lambda1(2);
    CHECK(evaluate(product(product(l, l), l)) == Rational(1, 2880));
}

TEST_CASE("kappa integrals match forgetful pushforward") {
    // kappa_b = pi_*(psi_{n+1}^{b+1})
    for (auto [g, n, a, b] : std::vector<std::array<int, 4>>{{1, 1, 0, 1}, {2, 1, 2, 2}, {0, 5, 1, 1}, {2, 0, 0, 3}}) {
        Space s = Space::standard(g, n);
        Space s1 = Space::standard(g, n + 1);
        TautClass up = psi_class(s1, n + 1, b + 1);
        if (a) up = product(up, psi_class(s1, 1, a));
        TautClass k = pushforward_forgetful(up, n + 1);
        TautClass direct = kappa_class(s, b);
        if (a) direct = product(direct, psi_class(s, 1, a));
        CHECK(evaluate(k) == evaluate(direct));
    }
}

TEST_CASE("product properties") {
    std::mt19937 rng(7);
    for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 5}, {1, 2}, {2, 0}, {1, 3}}) {
        int dim = 3 * g - 3 + n;
        for (int d1 = 1; d1 < dim; ++d1) {
            int d2 = dim - d1;
            auto x = random_class(g, n, d1, rng);
            auto y = random_class(g, n, d2, rng);
            CAPTURE(g);
            CAPTURE(n);
            CHECK(evaluate(product(x, y)) == evaluate(product(y, x)));
        }
        if (dim >= 3) {
            auto x = random_class(g, n, 1, rng);
            auto y = random_class(g, n, 1, rng);
            auto z = random_class(g, n, dim - 2, rng);
            CHECK(evaluate(product(product(x, y), z)) == evaluate(product(x, product(y, z))));
            check_same_class(product(x, y), product(y, x), g, n, 2);
        }
        auto one = TautClass::fundamental(Space::standard(g, n));
        auto x = random_class(g, n, 1, rng);
        CHECK(product(one, x) == x);
    }
}

TEST_CASE("forgetful maps") {
    std::mt19937 rng(11);
    for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 4}, {1, 1}, {1, 2}, {2, 0}, {0, 5}}) {
        int dim = 3 * g - 3 + n;
        Space s1 = Space::standard(g, n + 1);
        for (int d = 0; d <= dim; ++d) {
            auto x = random_class(g, n, d, rng);
            CAPTURE(g);
            CAPTURE(n);
            CAPTURE(d);
            auto px = pullback_forgetful(x, n + 1);
            CHECK(pushforward_forgetful(px, n + 1).is_zero());
            // dilaton
            auto dil = pushforward_forgetful(product(psi_class(s1, n + 1), px), n + 1);
            if (d == dim) CHECK(evaluate(dil) == Rational(2 * g - 2 + n) * evaluate(x));
            // projection formula
            if (d < dim + 1) {
                auto y = random_class(g, n + 1, dim + 1 - d, rng);
                CHECK(evaluate(pushforward_forgetful(product(px, y), n + 1)) ==
                      evaluate(product(x, pushforward_forgetful(y, n + 1))));
            }
        }
    }
}

TEST_CASE("pullback of psi") {
    // pi^* psi_1 = psi_1 - D_{1,5} on M05
    Space s4 = Space::standard(0, 4);
    auto p = pullback_forgetful(psi_class(s4, 1), 5);
    StableGraph d;
    d.add_vertex(0);
    d.add_vertex(0);
    d.add_edge(0, 1);
    d.add_leg(1, 1);
    d.add_leg(5, 1);
    d.add_leg(2, 0);
    d.add_leg(3, 0);
    d.add_leg(4, 0);
    CHECK(p == psi_class(Space::standard(0, 5), 1) - stratum_class(d));
}

TEST_CASE("boundary pullback and pushforward") {
    // xi_A^* of the fundamental class is the fundamental class of M_A
    StableGraph a;
    a.add_vertex(1);
    a.add_vertex(1);
    a.add_edge(0, 1);
    auto one = TautClass::fundamental(Space::standard(2, 0));
    auto p = pullback_boundary(a, one);
    CHECK(p == TautClass::fundamental(Space::of_graph(a)));
    CHECK(pushforward_boundary(a, p) == stratum_class(a));
    // excess intersection: delta1^2 on M2 against psi-free classes
    auto d1 = stratum_class(a);
    auto sq = product(d1, d1);
    StableGraph b = a;
    Decoration e = Decoration::trivial(b);
    e.hpsi[0] = 1;
    Decoration f = Decoration::trivial(b);
    f.hpsi[1] = 1;
    CHECK(sq == stratum_class(b, &e, Rational(-2)) + stratum_class(b, &f, Rational(-2)));
}

TEST_CASE("symmetrize and tensor") {
    Space s = Space::standard(0, 5);
    auto x = psi_class(s, 1, 2);
    auto sym = symmetrize(x, {1, 2, 3});
    CHECK(sym == (psi_class(s, 1, 2) + psi_class(s, 2, 2) + psi_class(s, 3, 2)).scaled(Rational(2)));
    CHECK(orbit_sum(x, {1, 2, 3}) == psi_class(s, 1, 2) + psi_class(s, 2, 2) + psi_class(s, 3, 2));
    auto t = tensor(psi_class(Space::standard(1, 1), 1), psi_class(Space::connected(0, {2, 3, 4, 5}), 2));
    CHECK_THROWS_AS(tensor(psi_class(Space::standard(1, 1), 1), psi_class(Space::standard(0, 4), 2)),
                    std::invalid_argument);
    CHECK(t.space().factors.size() == 2);
    CHECK(evaluate(t) == Rational(1, 24));
    auto r = relabel(psi_class(s, 1), {{1, 7}});
    CHECK(r.space().factors[0].labels == std::vector<int>{2, 3, 4, 5, 7});
    CHECK(evaluate(product(r, r)) == Rational(1));
}

TEST_CASE("genus three divisor table") {
    auto l = lambda1(3);
    auto d0 = delta0(3), d1 = delta1(3);
    auto D1 = normalized_stratum(graph_d1()), D2 = normalized_stratum(graph_d2()), D3 = normalized_stratum(graph_d3());
    CHECK(evaluate(product(l, D1)) == Rational(0));
    CHECK(evaluate(product(l, D2)) == Rational(0));
    CHECK(evaluate(product(l, D3)) == Rational(1, 96));
    CHECK(evaluate(product(d0, D1)) == Rational(-1, 4));
    CHECK(evaluate(product(d0, D2)) == Rational(0));
    CHECK(evaluate(product(d0, D3)) == Rational(1, 8));
    CHECK(evaluate(product(d1, D1)) == Rational(1, 8));
    CHECK(evaluate(product(d1, D2)) == Rational(-1, 16));
    CHECK(evaluate(product(d1, D3)) == Rational(-1, 96));
}
