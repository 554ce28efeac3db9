#pragma once

// Matrix representations of SL(2,Z) given by rho(S), rho(T); the max norm,
// evaluation on words, the explicit-product norm bound and fitted
// polynomial bounds ||rho(gamma)|| <= K3 (c^2+d^2)^K4.

#include "lvvmf/arith.hpp"
#include "lvvmf/jordan.hpp"
#include "lvvmf/sl2z.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace lvvmf {

struct Representation {
    std::string name;
    long p = 0;
    ComplexMatrix rhoS, rhoT;
    // Integer data when the representation is integral; enables exact paths.
    std::optional<IntegerMatrix> exactS, exactT;
    // Q with Q rho(T) Q^{-1} = assembled modified Jordan blocks.
    std::optional<JordanSpec> jordan;
    ComplexMatrix basis_change;
};

Representation trivial_rep();
/// (m+1)-dimensional symmetric power of the defining representation on
/// x^{m-i} y^i: row i of rho(gamma) lists the coefficients of
/// (a x + b y)^{m-i} (c x + d y)^i. m = 1 is the defining representation.
Representation sym_power_rep(long m);
IntegerMatrix sym_power_matrix(const GammaMatrix& g, long m);

/// Builds a Representation from numeric matrices, detecting integer data.
/// When rho(T) is integral and unipotent the Jordan data is filled in.
Representation make_representation(std::string name, const ComplexMatrix& rhoS, const ComplexMatrix& rhoT,
                                   std::optional<JordanSpec> jordan = std::nullopt,
                                   const ComplexMatrix& basis_change = {});

struct ValidationReport {
    bool pass = true;
    bool exact = false;
    double relation_error = 0;  // max entry error in rho(S)^4 = I, (rho(S) rho(T))^3 = rho(S)^2
    double jordan_error = 0;    // max entry error in Q rho(T) Q^{-1} = J
    std::string message;
};

/// Relations exactly for integer data, otherwise within `tolerance`; the
/// unit-circle condition on rho(T) comes from the Jordan data, which must be
/// present for non-unipotent rho(T).
ValidationReport validate(const Representation& rep, double tolerance = 1e-10);

double max_norm_exact(const IntegerMatrix& m);

/// Caches rho(T)^l for |l| <= table_range and evaluates rho on words.
/// Read-only after construction, so one instance can serve several threads.
class RepEvaluator {
public:
    explicit RepEvaluator(Representation rep, long table_range = 64);

    const Representation& rep() const { return rep_; }
    bool exact() const { return rep_.exactS.has_value(); }

    ComplexMatrix rhoT_power(const Integer& l) const;
    std::optional<IntegerMatrix> rhoT_power_exact(const Integer& l) const;
    double rhoT_power_norm(const Integer& l) const;
    double rhoS_norm() const { return s_norm_; }
    /// rho(-I) = rho(S)^2.
    double minus_identity_norm() const { return minus_norm_; }
    bool minus_identity_scalar() const { return minus_scalar_; }

    /// sign * rho(S) rho(T)^{l_{nu+1}} ... rho(S) rho(T)^{l_0}.
    ComplexMatrix rho_of(const EichlerWord& w) const;
    std::optional<IntegerMatrix> rho_of_exact(const EichlerWord& w) const;
    /// rho(gamma^{-1}) = sign^{-1} (rho(T)^{-l_0} rho(S)^{-1}) ... (rho(T)^{-l_{nu+1}} rho(S)^{-1}).
    ComplexMatrix rho_of_inverse(const EichlerWord& w) const;
    std::optional<IntegerMatrix> rho_of_inverse_exact(const EichlerWord& w) const;

private:
    Representation rep_;
    long range_;
    std::map<long, ComplexMatrix> table_;
    std::map<long, IntegerMatrix> exact_table_;
    ComplexMatrix s_inv_, minus_;
    std::optional<IntegerMatrix> exact_s_inv_, exact_minus_;
    ComplexMatrix q_, q_inv_;
    double s_norm_ = 0, minus_norm_ = 0;
    bool minus_scalar_ = false;
};

struct BoundChain {
    double lhs = 0;
    double rhs = 0;
    long nu = 0;
    bool trailing_zero = false;  // l_{nu+1} = 0 form of the bound
    bool inverse = false;
    bool pass = false;
};

/// ||rho(gamma)|| against p^{2nu+2} ||rho(S)||^{nu+2} prod_{j=0}^{nu+1} ||rho(T^{l_j})||
/// (l_{nu+1} != 0) or p^{2nu+1} ||rho(S)||^{nu} prod_{j=0}^{nu} ||rho(T^{l_j})||
/// (l_{nu+1} = 0). With inverse = true the same for gamma^{-1} with -l_j.
/// A sign flag of -1 multiplies the right side by p ||rho(-I)|| unless
/// rho(-I) is +-I.
BoundChain bound_chain(const RepEvaluator& ev, const EichlerWord& w, bool inverse = false);

struct FittedConstants {
    double K3 = 0, K4 = 0;
    double Kemp = 0;        // max Lame ratio over the enumerated range
    double Cs = 0;          // Jordan power ratio bound, l up to 1000
    double alpha = 0;       // 2 K4: exponent offset in the growth bound
    double max_residual = 0;
    bool degenerate = false;  // all norms equal; K4 = 0
    std::int64_t c_max = 0, d_max = 0;
    std::int64_t training = 0, validation = 0;
    std::int64_t validation_violations = 0;
    double worst_validation_ratio = 0;  // max ||rho|| / bound on the validation half
};

/// Regresses log ||rho(gamma)|| (divided by |l_nu|^{s-1} when l_{nu+1} = 0)
/// on log(c^2+d^2) over odd c, sets K3 from the largest positive residual
/// and counts violations over even c. d ranges over |d| <= d_max.
FittedConstants fit_polynomial_exponent(const RepEvaluator& ev, std::int64_t c_max, std::int64_t d_max = 0);

/// The fitted bound evaluated for gamma.
double polynomial_bound(const FittedConstants& k, const EichlerWord& w, const GammaMatrix& g, long s);

struct InverseCheck {
    std::int64_t checked = 0;
    std::int64_t violations = 0;
    double worst_ratio = 0;
    GammaMatrix worst;
};

/// ||rho(gamma^{-1})|| against the forward-fitted bound over even c.
InverseCheck inverse_bound_check(const RepEvaluator& ev, const FittedConstants& k, std::int64_t c_max,
                                 std::int64_t d_max = 0);

// Representation files (JSON).
Representation read_representation(std::istream& in);
void write_representation(std::ostream& out, const Representation& rep);

}  // namespace lvvmf
