#pragma once

// Modified Jordan blocks J_{m,lambda} (lambda on the diagonal and the
// subdiagonal), their exact integer powers and block-diagonal assemblies.

#include "lvvmf/arith.hpp"
#include "lvvmf/cyclotomic.hpp"

#include <stdexcept>
#include <vector>

namespace lvvmf {

struct JordanBlock {
    long m = 1;
    Rational mu = 0;  // lambda = e^{2 pi i mu}, mu in [0, 1)

    JordanBlock() = default;
    JordanBlock(long size, Rational angle);
    Complex lambda() const { return unit_root(mu); }
};

struct JordanSpec {
    std::vector<JordanBlock> blocks;

    long s() const;    // largest block
    long dim() const;  // sum of block sizes
};

/// A matrix of the form e^{2 pi i turn} * unit. Block powers are always of
/// this shape, so they stay exact.
struct PhasedMatrix {
    Rational turn = 0;
    IntegerMatrix unit;

    ComplexMatrix to_complex() const;
    CyclotomicMatrix to_cyclotomic() const;
};

ComplexMatrix block_matrix(const JordanBlock& b);

/// J^l = lambda^l sum_i C(l, i) N^i with N the unit subdiagonal; any integer l.
PhasedMatrix block_power_exact(const JordanBlock& b, const Integer& l);
ComplexMatrix block_power(const JordanBlock& b, long l);

ComplexMatrix rhoT_matrix(const JordanSpec& spec);
ComplexMatrix rhoT_power(const JordanSpec& spec, long l);

/// max over 1 <= |l| <= l_range of ||rho(T^l)|| / |l|^{s-1}, exact until
/// the final division.
double norm_bound_constant(const JordanSpec& spec, long l_range);

/// D = diag(1, lambda, ..., lambda^{m-1}) together with the exact check
/// D (lambda I + N) D^{-1} = J_{m,lambda} carried out in Q(zeta).
struct ModifiedBasis {
    std::vector<Rational> diagonal_turns;
    bool verified = false;

    CyclotomicMatrix matrix() const;
};

/// Throws std::invalid_argument for m < 1.
ModifiedBasis modified_from_standard(long m, const Rational& mu);

struct UnsupportedInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UnipotentForm {
    JordanSpec spec;
    RationalMatrix basis_change;  // Q with Q M Q^{-1} = assembled blocks
};

/// Canonical form of an integer matrix with (M - I)^p = 0; throws
/// UnsupportedInput otherwise.
UnipotentForm canonicalize_unipotent(const IntegerMatrix& m);

}  // namespace lvvmf
