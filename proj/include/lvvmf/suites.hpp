#pragma once

// Range sweeps shared by the command line tool and the acceptance binary.

#include "lvvmf/growth.hpp"
#include "lvvmf/jordan.hpp"
#include "lvvmf/rep_norms.hpp"
#include "lvvmf/sl2z.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace lvvmf {

struct WordRow {
    std::int64_t c = 0, d = 0;
    long nu = 0;
    long length = 0;
    double max_ratio = 0;
};

struct WordSweepOptions {
    std::int64_t c_max = 200;
    std::int64_t d_max = 200;
    /// Also sweep T^k gamma for 0 < |k| <= translate_radius.
    long translate_radius = 0;
    bool keep_rows = false;
    std::size_t keep_failures = 20;
};

struct WordSweep {
    std::int64_t checked = 0;
    std::int64_t roundtrip_violations = 0;
    std::int64_t sign_violations = 0;
    std::int64_t dichotomy_violations = 0;
    std::int64_t dichotomy_exempt = 0;
    std::int64_t bound_violations = 0;
    std::int64_t trailing_zero = 0;
    double max_ratio = 0;
    double seconds = 0;
    /// Dichotomy failures among the translates, kept apart from the canonical range.
    std::int64_t translate_checked = 0;
    std::int64_t translate_dichotomy_violations = 0;
    std::vector<std::string> failures;
    std::vector<std::string> translate_failures;
    std::vector<WordRow> rows;

    bool pass() const {
        return roundtrip_violations == 0 && sign_violations == 0 && dichotomy_violations == 0 && bound_violations == 0;
    }
};

/// Round trip, sign pattern, tail dichotomy and the product bounds for
/// every canonical gamma in the range.
WordSweep word_sweep(const WordSweepOptions& options);

struct LameSweep {
    double fibonacci_sup = 0;
    GammaMatrix fibonacci_argmax;
    double enumerated_max = 0;
    GammaMatrix enumerated_argmax;
    std::int64_t enumerated = 0;
    std::int64_t exceedances = 0;
    double seconds = 0;
    bool pass() const { return std::isfinite(fibonacci_sup) && exceedances == 0; }
};

/// sup of L / (ln c + 1) over the Fibonacci family c = F_n, d = +-F_{n-1}
/// or +-F_{n-2} with c <= fib_c_max, against every canonical gamma
/// with c <= enum_c_max and |d| <= enum_c_max.
LameSweep lame_sweep(std::int64_t fib_c_max, std::int64_t enum_c_max);

struct JordanStability {
    long m = 0;                     // Sym^m
    long s = 0;
    double ratio_small = 0;         // max ||rho(T^l)|| / |l|^{s-1}, 1 <= |l| <= l_small
    double ratio_large = 0;         // same up to l_large
    double jordan_small = 0;        // the same for the assembled Jordan form
    double jordan_large = 0;
    double change() const;
};

JordanStability jordan_stability(long m, long l_small, long l_large);

struct GroupLawCheck {
    std::int64_t pairs = 0;
    std::int64_t failures = 0;
    std::string first_failure;
};

/// J^{l1} J^{l2} = J^{l1+l2} exactly for random blocks (m <= 6, denominators
/// of mu up to 12) and random |l| <= l_max.
GroupLawCheck block_power_group_law(std::int64_t pairs, std::int64_t l_max, std::uint64_t seed);

struct BMatrixCheck {
    long m_max = 0, vanish_max = 0;
    std::vector<long> identity_failures;
    std::vector<std::string> vanishing_failures;
    bool pass() const { return identity_failures.empty() && vanishing_failures.empty(); }
};

BMatrixCheck bmatrix_check(long m_max, long vanish_max);

struct NormSweep {
    std::int64_t chain_checked = 0;
    std::int64_t chain_violations = 0;
    std::int64_t inverse_chain_violations = 0;
    double worst_chain_ratio = 0;  // lhs / rhs
    FittedConstants fit;
    InverseCheck inverse;
    std::vector<std::string> failures;
    bool pass() const { return chain_violations == 0 && inverse_chain_violations == 0 && fit.validation_violations == 0; }
};

/// The explicit-product bound for gamma and gamma^{-1} up to chain_c_max,
/// then the fitted polynomial bound up to fit_c_max and the inverse check.
NormSweep norm_sweep(const RepEvaluator& ev, std::int64_t chain_c_max, std::int64_t fit_c_max);

}  // namespace lvvmf
