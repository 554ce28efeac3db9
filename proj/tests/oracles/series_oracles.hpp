#pragma once

// Coefficient oracles computed without the library's series code:
// Delta straight from q prod (1 - q^n)^24 in machine integers of unbounded
// size, and Eisenstein series from a divisor loop with tabulated Bernoulli
// quotients.

#include "lvvmf/arith.hpp"

#include <stdexcept>
#include <vector>

namespace oracle {

/// tau(0..order) by multiplying out 24 copies of each factor (1 - q^n).
inline std::vector<lvvmf::Integer> delta_by_product(long order) {
    std::vector<lvvmf::Integer> p(static_cast<std::size_t>(order + 1), 0);
    if (order >= 1) p[1] = 1;
    for (long n = 1; n <= order; ++n)
        for (int copy = 0; copy < 24; ++copy)
            for (long k = order; k >= n; --k) p[k] -= p[k - n];
    return p;
}

inline lvvmf::Integer sigma(long k, long n) {
    lvvmf::Integer s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) {
            lvvmf::Integer t;
            mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
            s += t;
        }
    return s;
}

/// -2k / B_k for the weights used in tests.
inline lvvmf::Rational eisenstein_factor(long k) {
    switch (k) {
        case 4: return 240;
        case 6: return -504;
        case 8: return 480;
        case 10: return -264;
        case 12: return lvvmf::Rational(65520, 691);
        case 14: return -24;
        default: throw std::invalid_argument("no tabulated factor for this weight");
    }
}

inline std::vector<lvvmf::Rational> eisenstein_by_divisors(long k, long order) {
    std::vector<lvvmf::Rational> e(static_cast<std::size_t>(order + 1), 0);
    e[0] = 1;
    const lvvmf::Rational f = eisenstein_factor(k);
    for (long n = 1; n <= order; ++n) e[n] = f * lvvmf::Rational(sigma(k - 1, n));
    return e;
}

}  // namespace oracle
