#include "mgn/linalg.hpp"

#include <stdexcept>

namespace mgn {

namespace {

using ZRow = std::vector<mpz_class>;

std::vector<ZRow> integer_rows(const RatMatrix& m, const RatVector* b) {
    std::vector<ZRow> out(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        mpz_class l = 1;
        for (Eigen::Index j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).den().get_mpz_t());
        if (b) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), (*b)(i).den().get_mpz_t());
        ZRow& r = out[i];
        r.reserve(m.cols() + (b ? 1 : 0));
        for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j).num() * (l / m(i, j).den()));
        if (b) r.push_back((*b)(i).num() * (l / (*b)(i).den()));
    }
    return out;
}

// Row echelon form by fraction-free elimination; pivots searched in the first pivot_cols columns.
std::vector<int> bareiss(std::vector<ZRow>& a, int pivot_cols) {
    std::vector<int> piv;
    const int m = static_cast<int>(a.size());
    if (m == 0) return piv;
    const int n = static_cast<int>(a[0].size());
    mpz_class prev = 1, rem;
    int r = 0;
    for (int c = 0; c < pivot_cols && r < m; ++c) {
        int p = r;
        while (p < m && a[p][c] == 0) ++p;
        if (p == m) continue;
        std::swap(a[p], a[r]);
        for (int i = r + 1; i < m; ++i) {
            for (int j = c + 1; j < n; ++j) {
                a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                mpz_tdiv_qr(a[i][j].get_mpz_t(), rem.get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
                if (rem != 0) throw std::logic_error("bareiss: inexact division");
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        piv.push_back(c);
        ++r;
    }
    return piv;
}

RatVector back_substitute(const std::vector<ZRow>& a, const std::vector<int>& piv, int n,
                          const std::vector<Rational>& rhs, const RatVector& preset) {
    RatVector x = preset;
    for (int k = static_cast<int>(piv.size()) - 1; k >= 0; --k) {
        int pc = piv[k];
        Rational s = rhs[k];
        for (int j = pc + 1; j < n; ++j)
            if (!x(j).is_zero() && a[k][j] != 0) s -= Rational(a[k][j]) * x(j);
        x(pc) = s / Rational(a[k][pc]);
    }
    return x;
}

}  // namespace

SolveResult solve_linear(const RatMatrix& m, const RatVector& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve_linear: dimension mismatch");
    const int n = static_cast<int>(m.cols());
    auto a = integer_rows(m, &b);
    auto piv = bareiss(a, n);
    SolveResult res;
    for (size_t i = piv.size(); i < a.size(); ++i)
        if (a[i][n] != 0) {
            res.status = SolveStatus::Inconsistent;
            return res;
        }
    std::vector<Rational> rhs;
    for (size_t k = 0; k < piv.size(); ++k) rhs.emplace_back(a[k][n]);
    RatVector z = RatVector::Constant(n, Rational(0));
    res.solution = back_substitute(a, piv, n, rhs, z);
    std::vector<bool> is_piv(n, false);
    for (int c : piv) is_piv[c] = true;
    for (int f = 0; f < n; ++f) {
        if (is_piv[f]) continue;
        RatVector v = z;
        v(f) = Rational(1);
        for (int k = static_cast<int>(piv.size()) - 1; k >= 0; --k) {
            int pc = piv[k];
            Rational s(0);
            for (int j = pc + 1; j < n; ++j)
                if (!v(j).is_zero() && a[k][j] != 0) s -= Rational(a[k][j]) * v(j);
            v(pc) = s / Rational(a[k][pc]);
        }
        res.kernel.push_back(v);
    }
    res.status = piv.size() == static_cast<size_t>(n) ? SolveStatus::Unique : SolveStatus::Underdetermined;
    return res;
}

int rank(const RatMatrix& m) {
    auto a = integer_rows(m, nullptr);
    return static_cast<int>(bareiss(a, static_cast<int>(m.cols())).size());
}

std::vector<int> independent_rows(const RatMatrix& m) {
    RatMatrix t = m.transpose();
    auto a = integer_rows(t, nullptr);
    return bareiss(a, static_cast<int>(t.cols()));
}

RatMatrix inverse(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
    const Eigen::Index n = m.rows();
    RatMatrix out(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        RatVector e = RatVector::Constant(n, Rational(0));
        e(j) = Rational(1);
        auto r = solve_linear(m, e);
        if (r.status != SolveStatus::Unique) throw std::domain_error("inverse: singular matrix");
        out.col(j) = r.solution;
    }
    return out;
}

}  // namespace mgn
