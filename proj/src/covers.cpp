#include "mgn/covers.hpp"

#include "mgn/enumerate.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace mgn {

std::optional<int> target_genus(int g, const Group& G, const std::vector<int>& xi) {
    long n = G.order();
    long rhs = 2L * g - 2;
    for (int h : xi) rhs -= n - n / G.element_order(h);
    // rhs = n (2g' - 2)
    if (rhs % (2 * n) != 0) return std::nullopt;
    long gp = rhs / (2 * n) + 1;
    if (gp < 0) return std::nullopt;
    return static_cast<int>(gp);
}

Rational degree_delta_cyclic(int gprime, int m, const std::vector<int>& xi) {
    long sum = 0;
    long m0 = m;
    for (int h : xi) {
        sum += h;
        m0 = std::gcd(m0, static_cast<long>(((h % m) + m) % m));
    }
    if (sum % m != 0) return Rational(0);
    if (gprime == 0 && m0 > 1) return Rational(0);
    Rational d = pow(Rational(m), 2 * gprime - 1);
    long q = m0;
    for (long p = 2; p <= q; ++p) {
        if (q % p) continue;
        while (q % p == 0) q /= p;
        d *= Rational(1) - pow(Rational(1, p), 2 * gprime);
    }
    for (int h : xi) {
        long r = ((h % m) + m) % m;
        d *= Rational(std::gcd(static_cast<long>(m), r == 0 ? static_cast<long>(m) : r));
    }
    return d;
}

Rational degree_delta_bruteforce(const Group& G, int gprime, const std::vector<int>& xi, double budget) {
    int n = G.order();
    int b = static_cast<int>(xi.size());
    if (std::pow(static_cast<double>(n), 2.0 * gprime + b) > budget)
        throw BudgetExceeded("degree_delta_bruteforce: |G|^(2g'+b) exceeds budget");
    const auto& subs = G.subgroups();
    std::map<std::vector<int>, int> sid;
    for (std::size_t i = 0; i < subs.size(); ++i) sid[subs[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> join(subs.size(), std::vector<int>(n, -1));
    auto joined = [&](int s, int a) {
        int& j = join[s][a];
        if (j < 0) {
            auto gens = subs[s];
            gens.push_back(a);
            j = sid.at(G.generated(gens));
        }
        return j;
    };
    // state: (partial product, generated subgroup) -> number of tuples
    std::map<std::pair<int, int>, mpz_class> cur{{{0, 0}, 1}};
    for (int j = 0; j < gprime; ++j) {
        std::map<std::pair<int, int>, mpz_class> nxt;
        for (auto& [st, c] : cur)
            for (int a = 0; a < n; ++a)
                for (int bb = 0; bb < n; ++bb) {
                    int comm = G.mul(G.mul(a, bb), G.mul(G.inv(a), G.inv(bb)));
                    nxt[{G.mul(st.first, comm), joined(joined(st.second, a), bb)}] += c;
                }
        cur.swap(nxt);
    }
    for (int h : xi) {
        std::map<std::pair<int, int>, mpz_class> nxt;
        auto cls = G.conjugacy_class(h);
        for (auto& [st, c] : cur)
            for (int s : cls) nxt[{G.mul(st.first, s), joined(st.second, s)}] += c;
        cur.swap(nxt);
    }
    int full = static_cast<int>(subs.size()) - 1;
    mpz_class hom = 0;
    if (auto it = cur.find({0, full}); it != cur.end()) hom = it->second;
    Rational d(hom, mpz_class(n));
    for (int h : xi) d *= Rational(G.centralizer_order(h), G.element_order(h));
    return d;
}

Rational degree_delta(const Group& G, int gprime, const std::vector<int>& xi) {
    if (G.is_cyclic_kind()) return degree_delta_cyclic(gprime, G.cyclic_order(), xi);
    return degree_delta_bruteforce(G, gprime, xi);
}

int HurwitzSpec::r() const {
    int s = 0;
    for (int h : xi) s += group.order() / group.element_order(h);
    return s;
}

Rational HurwitzSpec::degree() const {
    auto gp = gprime();
    if (!gp) return Rational(0);
    return degree_delta(group, *gp, xi);
}

std::vector<Marking> marking_layout(const HurwitzSpec& s) {
    std::vector<Marking> out;
    const Group& G = s.group;
    int label = 1;
    for (int i = 0; i < s.b(); ++i) {
        int h = s.xi[i];
        int o = G.element_order(h);
        std::vector<char> seen(G.order(), 0);
        for (int a = 0; a < G.order(); ++a) {
            if (seen[a]) continue;
            for (int k = 0, x = a; k < o; ++k, x = G.mul(x, h)) seen[x] = 1;
            out.push_back({i, a, G.conj(a, h), o, label++});
        }
    }
    return out;
}

int act_on_marking(const HurwitzSpec& s, const std::vector<Marking>& layout, int t, int label) {
    const Marking& m = layout.at(label - 1);
    int ta = s.group.mul(t, m.coset);
    int h = s.xi[m.branch];
    for (const auto& p : layout) {
        if (p.branch != m.branch) continue;
        // ta in p.coset <h>
        int x = p.coset;
        for (int k = 0; k < p.stab; ++k, x = s.group.mul(x, h))
            if (x == ta) return p.label;
    }
    throw std::logic_error("act_on_marking: coset not found");
}

}  // namespace mgn
