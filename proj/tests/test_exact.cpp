#include "doctest.h"
#include "mgn/linalg.hpp"

#include <random>

using namespace mgn;

TEST_CASE("rational arithmetic stays canonical") {
    Rational a(6, -4);
    CHECK(a.str() == "-3/2");
    CHECK((a + Rational(3, 2)).is_zero());
    CHECK(Rational::parse("10/4") == Rational(5, 2));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK(Rational::parse(" 3 / 9 ").str() == "1/3");
    CHECK_THROWS(Rational::parse("1/0"));
    CHECK_THROWS(Rational::parse("x"));
    CHECK_THROWS(Rational(1) / Rational(0));
    CHECK(factorial(8) == Rational(40320));
    CHECK(binomial(8, 2) == Rational(28));
    CHECK(double_factorial(7) == Rational(105));
    CHECK(double_factorial(-1) == Rational(1));
    CHECK(pow(Rational(2, 3), -2) == Rational(9, 4));
}

TEST_CASE("eigen container products") {
    RatMatrix m(2, 2);
    m << Rational(1, 2), Rational(1), Rational(0), Rational(3);
    RatVector v(2);
    v << Rational(2), Rational(1, 3);
    RatVector w = m * v;
    CHECK(w(0) == Rational(4, 3));
    CHECK(w(1) == Rational(1));
}

TEST_CASE("solve unique system") {
    RatMatrix m(3, 3);
    m << 2, 1, -1, -3, -1, 2, -2, 1, 2;
    RatVector b(3);
    b << 8, -11, -3;
    auto r = solve_linear(m, b);
    REQUIRE(r.status == SolveStatus::Unique);
    CHECK(r.solution(0) == Rational(2));
    CHECK(r.solution(1) == Rational(3));
    CHECK(r.solution(2) == Rational(-1));
}

TEST_CASE("inconsistent and underdetermined systems") {
    RatMatrix m(2, 2);
    m << 1, 2, 2, 4;
    RatVector b(2);
    b << 1, 3;
    CHECK(solve_linear(m, b).status == SolveStatus::Inconsistent);
    b << 1, 2;
    auto r = solve_linear(m, b);
    REQUIRE(r.status == SolveStatus::Underdetermined);
    REQUIRE(r.kernel.size() == 1);
    RatVector k = m * r.kernel[0];
    CHECK(k.isZero());
    RatVector s = m * r.solution;
    CHECK(s == b);
    CHECK(rank(m) == 1);
}

TEST_CASE("random systems agree with substitution") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-5, 5);
    for (int trial = 0; trial < 40; ++trial) {
        int rows = 2 + trial % 4, cols = 2 + (trial / 4) % 4;
        RatMatrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(i, j) = Rational(d(rng), 1 + std::abs(d(rng)));
        if (trial % 3 == 0) m.row(rows - 1) = m.row(0) + m.row(1);
        RatVector x(cols);
        for (int j = 0; j < cols; ++j) x(j) = Rational(d(rng));
        RatVector b = m * x;
        auto r = solve_linear(m, b);
        REQUIRE(r.status != SolveStatus::Inconsistent);
        RatVector chk = m * r.solution;
        CHECK(chk == b);
        for (auto& k : r.kernel) {
            RatVector z = m * k;
            CHECK(z.isZero());
        }
        CHECK(rank(m) + static_cast<int>(r.kernel.size()) == cols);
        CHECK(static_cast<int>(independent_rows(m).size()) == rank(m));
    }
}

TEST_CASE("inverse") {
    RatMatrix m(2, 2);
    m << 0, Rational(1, 24), Rational(1, 24), 0;
    RatMatrix inv = inverse(m);
    CHECK(inv(0, 1) == Rational(24));
    CHECK(inv(0, 0) == Rational(0));
    RatMatrix s(2, 2);
    s << 1, 2, 2, 4;
    CHECK_THROWS(inverse(s));
}
