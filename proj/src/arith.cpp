#include "lvvmf/arith.hpp"

#include "lvvmf/kernels.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace lvvmf {

namespace {

bool valid_integer_text(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

std::string strip_plus(std::string_view s) {
    std::string r(s);
    if (!r.empty() && r[0] == '+') r.erase(0, 1);
    return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_integer_text(num) || !valid_integer_text(den))
        throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
    Integer n(strip_plus(num)), d(strip_plus(den));
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& x) { return x.get_str(); }

int sign(const Integer& x) { return sgn(x); }

Integer abs(const Integer& x) {
    Integer r;
    mpz_abs(r.get_mpz_t(), x.get_mpz_t());
    return r;
}

Integer floor_div(const Integer& a, const Integer& b) {
    if (b == 0) throw std::domain_error("floor_div by zero");
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Rational frac(const Rational& x) {
    Integer q = floor_div(x.get_num(), x.get_den());
    Rational r = x - Rational(q);
    r.canonicalize();
    return r;
}

Integer binomial(const Integer& x, long k) {
    if (k < 0) return 0;
    Integer num = 1;
    Integer den = 1;
    for (long i = 0; i < k; ++i) {
        num *= x - i;
        den *= i + 1;
    }
    Integer q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

Complex unit_root(const Rational& turns) {
    const Rational t = frac(turns);
    // Exact values at the quarter points keep real inputs real.
    if (t == 0) return {1.0, 0.0};
    if (t == Rational(1, 2)) return {-1.0, 0.0};
    if (t == Rational(1, 4)) return {0.0, 1.0};
    if (t == Rational(3, 4)) return {0.0, -1.0};
    const double angle = 2.0 * kPi * t.get_d();
    return {std::cos(angle), std::sin(angle)};
}

double to_double(const Integer& x) { return x.get_d(); }

double to_double(const Rational& x) { return x.get_d(); }

RationalMatrix to_rational(const IntegerMatrix& m) {
    RationalMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
    return r;
}

ComplexMatrix to_complex(const IntegerMatrix& m) {
    ComplexMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Complex(m(i, j).get_d(), 0.0);
    return r;
}

ComplexMatrix to_complex(const RationalMatrix& m) {
    ComplexMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Complex(m(i, j).get_d(), 0.0);
    return r;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m(p, col) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        const Rational inv = 1 / m(row, col);
        for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            const Rational f = m(i, col);
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

std::size_t rank(RationalMatrix m) { return rref(m).size(); }

RationalMatrix nullspace(const RationalMatrix& m) {
    RationalMatrix r = m;
    const auto pivots = rref(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (!is_pivot[j]) free.push_back(j);
    RationalMatrix basis(m.cols(), free.size(), Rational(0));
    for (std::size_t k = 0; k < free.size(); ++k) {
        basis(free[k], k) = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) basis(pivots[i], k) = -r(i, free[k]);
    }
    return basis;
}

RationalMatrix inverse(const RationalMatrix& m) {
    if (!m.square()) throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = m.rows();
    RationalMatrix aug(n, 2 * n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    const auto pivots = rref(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) throw std::domain_error("singular rational matrix");
    RationalMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

ComplexMatrix inverse(const ComplexMatrix& m) {
    if (!m.square()) throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = m.rows();
    ComplexMatrix a = m;
    ComplexMatrix inv = ComplexMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        for (std::size_t i = col + 1; i < n; ++i)
            if (std::abs(a(i, col)) > std::abs(a(p, col))) p = i;
        if (std::abs(a(p, col)) < 1e-300) throw std::domain_error("singular complex matrix");
        if (p != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(p, j), a(col, j));
                std::swap(inv(p, j), inv(col, j));
            }
        const Complex piv = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) /= piv;
            inv(col, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col) continue;
            const Complex f = a(i, col);
            if (f == Complex(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

double max_norm(const ComplexMatrix& m) { return kernels::max_abs(m.data()); }

}  // namespace lvvmf
