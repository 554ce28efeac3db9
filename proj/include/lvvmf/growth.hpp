#pragma once

// Desk-scale logarithmic vector-valued modular forms F = f (tau^m, ..., tau, 1)
// for Sym^m and a level-one form f, together with the numerical checks run
// on them: slash covariance, boundedness over the fundamental domain,
// coefficient growth and the |l_nu| = 1 transport property.

#include "lvvmf/log_expansion.hpp"
#include "lvvmf/rep_norms.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lvvmf {

struct ClassicalForm {
    std::string name;
    long weight = 0;
    QSeries series;
};

/// Products of named level-one forms: "delta", "delta2" (= delta^2), "e4",
/// "e6", ..., joined with '_' as in "e4_delta". Throws std::invalid_argument.
ClassicalForm classical_form(const std::string& name, long order);

struct LVVMF {
    long k = 0;
    long m = 0;
    ClassicalForm multiplier;
    Representation rep;
    UnipotentForm jordan;               // Q rho(T) Q^{-1} = J
    std::vector<PolyQExpansion> blocks;  // one per Jordan block of rho(T)
    AtInfinity kind = AtInfinity::holomorphic;

    /// Components of F at each tau, rebuilt from the h-series of the blocks.
    std::vector<std::vector<Complex>> evaluate(std::span<const Complex> taus) const;
    std::vector<Complex> evaluate(const Complex& tau) const;
};

/// F = f (tau^m, ..., 1) of weight w - m for Sym^m. Rejects multipliers that
/// are not level one: nonzero offset or phase, negative exponents, odd or
/// weight-2 data, or a failed numeric S-transformation check.
LVVMF build_sym_example(long m, const ClassicalForm& multiplier);

/// "sym<m>-<form>", e.g. "sym1-delta", "sym0-e4", "sym2-delta2".
LVVMF named_example(const std::string& name, long order);

/// Standard loop of translations into |Re z| <= 1/2 and inversions while
/// |z| < 1. Returns z in the closed fundamental region and gamma with
/// gamma tau = z.
struct Reduction {
    Complex z;
    GammaMatrix gamma;
};
Reduction reduce_to_fundamental_domain(const Complex& tau);

Complex mobius(const GammaMatrix& g, const Complex& tau);

struct SlashSample {
    GammaMatrix gamma;
    Complex tau;
    double error = 0;
    double tail = 0;
};

struct SlashReport {
    double max_error = 0;
    double max_tail = 0;
    bool inconclusive = false;  // truncation tail above the tolerance
    bool pass = false;
    double tolerance = 1e-8;
    double min_image_height = 0;
    std::int64_t checked = 0;
    SlashSample worst;
};

/// Relative error |rho(gamma) F(tau) - (c tau + d)^{-k} F(gamma tau)| / (1 + |F(gamma tau)|).
SlashSample slash_error(const LVVMF& f, const RepEvaluator& ev, const GammaMatrix& g, const Complex& tau);

/// tau with Im tau >= 0.3 and Im gamma tau >= min_image_height, drawn from
/// a seeded generator. Im tau * Im gamma tau <= 1/c^2, so for |c| = 5 the
/// image height cannot also be 0.3.
std::vector<Complex> slash_samples(const GammaMatrix& g, long count, std::uint64_t seed,
                                   double min_image_height = 0.12);

/// Every gamma = +-(a b; c d) with 1 <= c <= c_max, |d| <= c_max, coprime,
/// canonical a, b, plus +-T^{+-1}; `samples` points per gamma.
SlashReport slash_check(const LVVMF& f, std::int64_t c_max, long samples, std::uint64_t seed,
                        double tolerance = 1e-8);

struct DomainGrid {
    long x_points = 101;
    double height_cap = 25;
    double log_step = 0.02;  // spacing of log y; the y-list is shared between caps
};

struct DomainSup {
    std::vector<double> per_component;
    double sup = 0;
    Complex argmax;
    std::int64_t points = 0;
};

/// max over the grid of y^{-delta sigma} y^sigma |F_l(z)| for each component.
DomainSup fundamental_domain_sup(const LVVMF& f, double sigma, double delta, const DomainGrid& grid);

struct ComponentGrowth {
    long block = 0, index = 0;
    bool skipped = false;
    std::string note;
    double beta = 0;
    std::int64_t used = 0;
};

struct GrowthReport {
    double beta = 0;  // largest fitted slope among the components
    long n_min = 100, n_max = 2000;
    double alpha = 0;
    double sigma = 0;   // (k + K5) / 2
    double bound = 0;   // (k + alpha)/2 for cusp forms, k + alpha otherwise
    double delta = 0;   // bound - beta
    AtInfinity kind = AtInfinity::holomorphic;
    bool empty = true;
    std::vector<ComponentGrowth> components;
};

/// Least-squares slope of log|a(n)| against log n over nonzero a(n) in the
/// window for every nonzero h-series; alpha from the fitted constants.
GrowthReport coefficient_growth(const LVVMF& f, const FittedConstants& k, long n_min = 100, long n_max = 2000);

struct LNuCase {
    Complex tau;
    GammaMatrix transport;  // maps the reduced point back to tau
    bool trailing_zero = false;
    double a_over_c = 0;
    Integer l_nu = 0;
    bool ok = true;
};

struct LNuReport {
    std::int64_t points = 0;
    std::int64_t trailing_zero_cases = 0;
    std::int64_t violations = 0;
    std::vector<LNuCase> cases;
};

/// For tau = x + i/n: reduce, decompose the transporting matrix and, when
/// l_{nu+1} = 0, require |a/c| < 2 and |l_nu| = 1.
LNuCase l_nu_case(const Complex& tau);
LNuReport l_nu_unit_check(std::span<const Complex> taus);
/// `count` points with x uniform in [-1/2, 1/2] and n uniform in [2, 50].
std::vector<Complex> l_nu_samples(long count, std::uint64_t seed);

}  // namespace lvvmf
