#pragma once

// Truncated q-series  e(phase) * sum_{n_min <= n <= order} a(n) q^{n + mu},
// q = e^{2 pi i tau}, with exact rational a(n), a rational offset mu in
// [0, 1) and an exact root-of-unity prefactor. Coefficients beyond `order`
// are unknown, never implicitly zero.

#include "lvvmf/arith.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace lvvmf {

enum class AtInfinity { cuspidal, holomorphic, meromorphic };

std::string to_string(AtInfinity kind);

struct Evaluation {
    Complex value;
    double tail_estimate = 0;  // heuristic size of the omitted terms
};

class QSeries {
public:
    QSeries() = default;
    /// Zero series known through `order`.
    QSeries(const Rational& mu, long order, long n_min = 0);

    static QSeries constant(const Rational& c, long order);
    static QSeries monomial(long n, const Rational& c, const Rational& mu, long order);

    const Rational& mu() const { return mu_; }
    const Rational& phase() const { return phase_; }
    long order() const { return order_; }
    long n_min() const { return n_min_; }

    /// a(n) without the phase; zero below n_min; throws past order.
    Rational coeff(long n) const;
    void set_coeff(long n, const Rational& value);
    /// e(phase) * a(n).
    Complex complex_coeff(long n) const;

    bool is_zero() const;
    /// Smallest n with a(n) != 0, or order + 1 for the zero series.
    long valuation() const;

    QSeries truncated(long order) const;
    QSeries scaled(const Rational& s) const;
    /// Multiplies by e^{2 pi i t}.
    QSeries rotated(const Rational& turns) const;

    /// Series of f(tau + 1): a(n) -> a(n) e(n + mu), i.e. the phase advances by mu.
    QSeries shift_T() const;

    QSeries& operator+=(const QSeries& y);
    QSeries& operator-=(const QSeries& y);
    QSeries operator-() const;
    friend QSeries operator+(QSeries x, const QSeries& y) { return x += y; }
    friend QSeries operator-(QSeries x, const QSeries& y) { return x -= y; }
    /// Cauchy product; offsets add (a carry past 1 moves into n).
    friend QSeries operator*(const QSeries& x, const QSeries& y);

    /// Same mu, phase (mod 1), order and coefficients.
    friend bool operator==(const QSeries& x, const QSeries& y);

    AtInfinity classify() const;

    Evaluation evaluate(const Complex& tau) const;
    /// Batched evaluation through the SIMD Horner kernel.
    std::vector<Evaluation> evaluate(std::span<const Complex> taus) const;

private:
    void extend_down(long n);
    Rational mu_ = 0;
    Rational phase_ = 0;
    long n_min_ = 0;
    long order_ = -1;
    std::vector<Rational> coeffs_;  // index n - n_min
};

/// Floating-point coefficients for data that is not exact.
class ComplexQSeries {
public:
    ComplexQSeries() = default;
    ComplexQSeries(const Rational& mu, long order, long n_min = 0);
    explicit ComplexQSeries(const QSeries& exact);

    const Rational& mu() const { return mu_; }
    long order() const { return order_; }
    long n_min() const { return n_min_; }
    Complex coeff(long n) const;
    void set_coeff(long n, const Complex& value);

    /// Coefficients below 1e-12 times the largest stored magnitude count as zero.
    AtInfinity classify() const;
    Evaluation evaluate(const Complex& tau) const;
    std::vector<Evaluation> evaluate(std::span<const Complex> taus) const;

private:
    Rational mu_ = 0;
    long n_min_ = 0;
    long order_ = -1;
    std::vector<Complex> coeffs_;
};

inline constexpr double kClassifyEpsilon = 1e-12;

/// q prod_{n>=1} (1 - q^n)^24 through q^order, via the cube of eta.
QSeries delta_series(long order);

/// 1 - (2k / B_k) sum sigma_{k-1}(n) q^n; k even and >= 4.
QSeries eisenstein_series(long k, long order);

/// Bernoulli number B_k (B_1 = -1/2).
Rational bernoulli(long k);

// Series files: header "mu P/Q, order N[, phase R/S]" followed by lines
// "n re im". Exact series are written with rational strings.
void write_series(std::ostream& out, const QSeries& s);
QSeries read_series(std::istream& in);
/// Accepts decimal coefficients as well.
ComplexQSeries read_complex_series(std::istream& in);

}  // namespace lvvmf
