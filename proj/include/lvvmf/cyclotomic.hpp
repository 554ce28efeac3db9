#pragma once

// Exact arithmetic in the cyclotomic fields Q(zeta_N), enough to check
// identities between matrices whose entries are rational combinations of
// roots of unity.

#include "lvvmf/arith.hpp"

#include <vector>

namespace lvvmf {

/// Integer coefficients of the N-th cyclotomic polynomial, constant term first.
const std::vector<Integer>& cyclotomic_polynomial(long n);

class Cyclotomic {
public:
    Cyclotomic() : Cyclotomic(Rational(0)) {}
    Cyclotomic(int v) : Cyclotomic(Rational(v)) {}
    Cyclotomic(const Rational& r) : order_(1), coeffs_{r} {}

    /// zeta_N^k with zeta_N = e^{2 pi i / N}.
    static Cyclotomic zeta_power(long n, long k);
    /// e^{2 pi i t} for rational t, living in Q(zeta_den(t)).
    static Cyclotomic root_of_unity(const Rational& turns);

    long order() const { return order_; }
    /// Coefficients in the power basis 1, zeta, ..., zeta^{phi(N)-1}.
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    /// Same element viewed in Q(zeta_m); m must be a multiple of order().
    Cyclotomic lifted(long m) const;

    Complex value() const;
    bool is_zero() const;

    Cyclotomic& operator+=(const Cyclotomic& y);
    Cyclotomic& operator-=(const Cyclotomic& y);
    Cyclotomic& operator*=(const Cyclotomic& y);
    Cyclotomic operator-() const;

    friend Cyclotomic operator+(Cyclotomic x, const Cyclotomic& y) { return x += y; }
    friend Cyclotomic operator-(Cyclotomic x, const Cyclotomic& y) { return x -= y; }
    friend Cyclotomic operator*(Cyclotomic x, const Cyclotomic& y) { return x *= y; }
    friend bool operator==(const Cyclotomic& x, const Cyclotomic& y);

private:
    Cyclotomic(long n, std::vector<Rational> c);
    static std::vector<Rational> reduce(long n, std::vector<Rational> c);
    long order_;
    std::vector<Rational> coeffs_;
};

using CyclotomicMatrix = Matrix<Cyclotomic>;

}  // namespace lvvmf
