#include "mgn/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace mgn {

Rational::Rational(long n, long d) : q_(n, d) {
    if (d == 0) throw std::domain_error("zero denominator");
    q_.canonicalize();
}

Rational::Rational(const mpz_class& n, const mpz_class& d) : q_(n, d) {
    if (d == 0) throw std::domain_error("zero denominator");
    q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
}

Rational Rational::parse(std::string_view s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty()) throw std::invalid_argument("empty rational");
    auto valid_int = [](const std::string& u) {
        size_t i = (u[0] == '-' || u[0] == '+') ? 1 : 0;
        if (i >= u.size()) return false;
        for (; i < u.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(u[i]))) return false;
        return true;
    };
    auto slash = t.find('/');
    std::string n = t.substr(0, slash);
    std::string d = slash == std::string::npos ? "1" : t.substr(slash + 1);
    if (!valid_int(n) || !valid_int(d)) throw std::invalid_argument("malformed rational: " + t);
    if (n[0] == '+') n = n.substr(1);
    if (d[0] == '+') d = d.substr(1);
    return Rational(mpz_class(n), mpz_class(d));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational pow(const Rational& r, int e) {
    if (e < 0) return pow(Rational(1) / r, -e);
    Rational out(1), b = r;
    while (e) {
        if (e & 1) out *= b;
        b *= b;
        e >>= 1;
    }
    return out;
}

Rational factorial(int n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n < 0 ? 0 : n));
    return Rational(f);
}

Rational binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return Rational(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(b);
}

Rational double_factorial(int m) {
    mpz_class out = 1;
    for (int k = m; k > 1; k -= 2) out *= k;
    return Rational(out);
}

}  // namespace mgn
