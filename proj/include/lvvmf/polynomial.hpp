#pragma once

// Dense univariate polynomials with rational coefficients.

#include "lvvmf/arith.hpp"

#include <string>
#include <vector>

namespace lvvmf {

class RationalPolynomial {
public:
    RationalPolynomial() = default;
    RationalPolynomial(const Rational& c);
    RationalPolynomial(int c) : RationalPolynomial(Rational(c)) {}
    /// Coefficients, constant term first.
    explicit RationalPolynomial(std::vector<Rational> coeffs);

    static RationalPolynomial x();
    /// C(x + shift, k) as a polynomial in x.
    static RationalPolynomial binomial(const Integer& shift, long k);

    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    Rational coeff(long k) const;
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    Rational operator()(const Rational& x) const;
    Complex operator()(const Complex& x) const;
    /// p(x + shift).
    RationalPolynomial shifted(const Rational& shift) const;

    RationalPolynomial& operator+=(const RationalPolynomial& y);
    RationalPolynomial& operator-=(const RationalPolynomial& y);
    RationalPolynomial& operator*=(const RationalPolynomial& y);
    RationalPolynomial operator-() const;

    friend RationalPolynomial operator+(RationalPolynomial a, const RationalPolynomial& b) { return a += b; }
    friend RationalPolynomial operator-(RationalPolynomial a, const RationalPolynomial& b) { return a -= b; }
    friend RationalPolynomial operator*(RationalPolynomial a, const RationalPolynomial& b) { return a *= b; }
    friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) { return a.coeffs_ == b.coeffs_; }

    /// e.g. "1/2*x^2 - 1/2*x"; "0" for zero.
    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

using PolyMatrix = Matrix<RationalPolynomial>;

}  // namespace lvvmf
