#include <doctest.h>

#include "mgn/covers.hpp"
#include "mgn/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <random>

using namespace mgn;

namespace {

// direct enumeration of all generator tuples
Rational naive_degree(const Group& G, int gp, const std::vector<int>& xi) {
    int n = G.order();
    int slots = 2 * gp + static_cast<int>(xi.size());
    std::vector<int> t(slots, 0);
    long long hom = 0;
    std::function<void(int)> rec = [&](int k) {
        if (k == slots) {
            int p = 0;
            for (int j = 0; j < gp; ++j) {
                int a = t[2 * j], b = t[2 * j + 1];
                p = G.mul(p, G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b))));
            }
            for (int i = 2 * gp; i < slots; ++i) p = G.mul(p, t[i]);
            if (p == 0 && static_cast<int>(G.generated(t).size()) == n) ++hom;
            return;
        }
        if (k >= 2 * gp) {
            for (int s : G.conjugacy_class(xi[k - 2 * gp])) {
                t[k] = s;
                rec(k + 1);
            }
        } else {
            for (int a = 0; a < n; ++a) {
                t[k] = a;
                rec(k + 1);
            }
        }
    };
    rec(0);
    Rational d(hom, static_cast<long long>(n));
    for (int h : xi) d *= Rational(G.centralizer_order(h), G.element_order(h));
    return d;
}

}  // namespace

TEST_CASE("group tables") {
    auto S3 = Group::symmetric(3);
    CHECK(S3.order() == 6);
    CHECK(S3.center_order() == 1);
    CHECK(S3.subgroups().size() == 6);
    int t = S3.parse_element("213");
    CHECK(S3.element_order(t) == 2);
    CHECK(S3.conjugacy_class(t).size() == 3);
    CHECK(S3.centralizer_order(t) == 2);
    auto Z4 = Group::cyclic(4);
    CHECK(Z4.subgroups().size() == 3);
    CHECK(Z4.parse_element("-1") == 3);
    std::vector<int> el;
    auto H = Z4.induced({0, 2}, &el);
    CHECK(H.order() == 2);
    CHECK(el == std::vector<int>{0, 2});
    CHECK_THROWS(Group::from_table({}, {{0, 1}, {0, 1}}));
    CHECK_THROWS(Group::from_table({}, {{0, 1, 2}, {1, 0, 2}, {2, 2, 0}}));
    // identity not first
    auto G = Group::from_table({"x", "e"}, {{1, 0}, {0, 1}});
    CHECK(G.name(0) == "e");
    CHECK(G.element_order(G.parse_element("x")) == 2);
}

TEST_CASE("target genus") {
    auto Z2 = Group::cyclic(2);
    CHECK(target_genus(2, Z2, {1, 1, 1, 1, 1, 1}) == 0);
    CHECK(target_genus(4, Z2, {1, 1, 1, 1, 1, 1}) == 1);
    CHECK(target_genus(3, Z2, {}) == 2);
    CHECK(target_genus(3, Z2, {1, 1, 1, 1, 1, 1, 1, 1}) == 0);
    CHECK_FALSE(target_genus(2, Z2, {1, 1, 1, 1, 1}).has_value());
    CHECK_FALSE(target_genus(0, Z2, {1, 1, 1, 1}).has_value());
    CHECK(target_genus(0, Z2, {1, 1}) == 0);
}

TEST_CASE("cyclic degree formula") {
    CHECK(degree_delta_cyclic(0, 2, std::vector<int>(6, 1)) == Rational(1, 2));
    CHECK(degree_delta_cyclic(0, 2, std::vector<int>(8, 1)) == Rational(1, 2));
    CHECK(degree_delta_cyclic(1, 2, std::vector<int>(6, 1)) == 2);
    CHECK(degree_delta_cyclic(1, 2, {}) == Rational(3, 2));
    CHECK(degree_delta_cyclic(1, 3, {1, 2}) == 3);
    CHECK(degree_delta_cyclic(2, 2, {}) == Rational(15, 2));
    CHECK(degree_delta_cyclic(0, 2, {1, 1, 1}) == 0);
    CHECK(degree_delta_cyclic(0, 4, {2, 2}) == 0);
    CHECK(degree_delta_cyclic(0, 1, {0, 0, 0}) == 1);
}

TEST_CASE("brute force degree agrees with the cyclic formula on the grid") {
    for (int m = 1; m <= 6; ++m) {
        auto G = Group::cyclic(m);
        for (int gp = 0; gp <= 2; ++gp)
            for (int b = 0; b <= 4; ++b) {
                std::vector<int> xi(b, 0);
                std::function<void(int, int)> rec = [&](int k, int lo) {
                    if (k == b) {
                        CHECK_MESSAGE(degree_delta_bruteforce(G, gp, xi) == degree_delta_cyclic(gp, m, xi),
                                      "m=" << m << " g'=" << gp << " b=" << b);
                        return;
                    }
                    for (int h = lo; h < m; ++h) {
                        xi[k] = h;
                        rec(k + 1, h);
                    }
                };
                rec(0, 0);
            }
    }
}

TEST_CASE("brute force DP agrees with direct tuple enumeration") {
    auto S3 = Group::symmetric(3);
    int t = S3.parse_element("213");
    int c = S3.parse_element("231");
    CHECK(degree_delta_bruteforce(S3, 0, {t, t, t, t}) == 4);
    CHECK(naive_degree(S3, 0, {t, t, t, t}) == 4);
    for (auto xi : std::vector<std::vector<int>>{{t, t, c}, {c, c}, {c, c, c}, {t, t}, {t, c, t}})
        CHECK(degree_delta_bruteforce(S3, 0, xi) == naive_degree(S3, 0, xi));
    CHECK(degree_delta_bruteforce(S3, 1, {}) == naive_degree(S3, 1, {}));
    CHECK(degree_delta_bruteforce(S3, 1, {c}) == naive_degree(S3, 1, {c}));
    for (int m = 2; m <= 4; ++m)
        CHECK(degree_delta_bruteforce(Group::cyclic(m), 1, {1, m - 1}) == naive_degree(Group::cyclic(m), 1, {1, m - 1}));
    CHECK(degree_delta_bruteforce(Group::cyclic(3), 0, {}) == 0);
    CHECK(degree_delta_bruteforce(S3, 0, {}) == 0);
    CHECK(degree_delta_bruteforce(Group::cyclic(1), 0, {}) == 1);
    CHECK_THROWS_AS(degree_delta_bruteforce(S3, 2, {t, t, t, t}, 1e3), BudgetExceeded);
}

TEST_CASE("degree is invariant under permutation and conjugation of the datum") {
    auto S3 = Group::symmetric(3);
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> xi;
        int b = 2 + static_cast<int>(rng() % 3);
        for (int i = 0; i < b; ++i) xi.push_back(static_cast<int>(rng() % 6));
        Rational d = degree_delta_bruteforce(S3, 0, xi);
        auto p = xi;
        std::shuffle(p.begin(), p.end(), rng);
        CHECK(degree_delta_bruteforce(S3, 0, p) == d);
        int a = static_cast<int>(rng() % 6);
        for (int& h : p) h = S3.conj(a, h);
        CHECK(degree_delta_bruteforce(S3, 0, p) == d);
    }
    for (int m = 2; m <= 6; ++m)
        for (int x = 0; x < m; ++x)
            for (int y = 0; y < m; ++y) {
                int z = (2 * m - x - y) % m;
                CHECK(degree_delta_cyclic(1, m, {x, y, z}) == degree_delta_cyclic(1, m, {z, x, y}));
            }
}

TEST_CASE("nonemptiness criterion for cyclic groups") {
    for (int m = 2; m <= 6; ++m)
        for (int gp = 0; gp <= 1; ++gp)
            for (int x = 0; x < m; ++x)
                for (int y = 0; y < m; ++y)
                    for (int z = 0; z < m; ++z) {
                        long m0 = std::gcd(std::gcd(std::gcd(m, x), y), z);
                        bool expect = (x + y + z) % m == 0 && (gp >= 1 || m0 == 1);
                        bool got = degree_delta_bruteforce(Group::cyclic(m), gp, {x, y, z}).sign() > 0;
                        CHECK(got == expect);
                    }
}

TEST_CASE("marking layout") {
    auto Z2 = Group::cyclic(2);
    HurwitzSpec s{2, Z2, std::vector<int>(6, 1)};
    auto L = marking_layout(s);
    CHECK(L.size() == 6);
    CHECK(s.r() == 6);
    for (auto& m : L) CHECK(m.stab == 2);
    std::vector<int> xi(8, 1);
    xi.push_back(0);
    HurwitzSpec s2{3, Z2, xi};
    CHECK(marking_layout(s2).size() == 10);
    CHECK(s2.gprime() == 0);
    HurwitzSpec s3{4, Z2, {1, 1, 1, 1, 1, 1, 0, 0}};
    auto L3 = marking_layout(s3);
    CHECK(L3.size() == 10);
    CHECK(L3[6].coset == 0);
    CHECK(L3[7].coset == 1);
    CHECK(act_on_marking(s3, L3, 1, 7) == 8);
    CHECK(act_on_marking(s3, L3, 1, 3) == 3);
    auto S3 = Group::symmetric(3);
    int t = S3.parse_element("213");
    HurwitzSpec s4{1, S3, {t, t, t, t}};
    auto L4 = marking_layout(s4);
    CHECK(L4.size() == 12);
    CHECK(s4.gprime() == 0);
    for (auto& m : L4) CHECK(S3.element_order(m.h) == 2);
}
