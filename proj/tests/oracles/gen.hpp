#pragma once

// Hand-rolled generators for property tests: a splitmix64 stream and a few
// shapes drawn from it. Every test names its seed, so failures replay.

#include "lvvmf/sl2z.hpp"

#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [lo, hi].
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next() % span);
    }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool coin() { return (next() & 1) != 0; }

    // Coprime (c, d) with 1 <= c <= c_max, |d| <= d_max, then a left
    // translation by T^k, |k| <= k_max, and a random overall sign.
    lvvmf::GammaMatrix gamma(std::int64_t c_max, std::int64_t d_max, std::int64_t k_max = 0) {
        for (;;) {
            const std::int64_t c = range(1, c_max), d = range(-d_max, d_max);
            if (std::gcd(c, d) != 1) continue;
            lvvmf::GammaMatrix g = lvvmf::canonical_gamma(c, d);
            if (k_max > 0) g = lvvmf::GammaMatrix::T(lvvmf::Integer(static_cast<long>(range(-k_max, k_max)))) * g;
            return coin() ? g : g.negated();
        }
    }

    // A word with the alternating sign pattern: l_0 free, interior exponents
    // nonzero with sign (-1)^{j-1}, last exponent of that sign or zero.
    lvvmf::EichlerWord word(long max_factors, std::int64_t max_exponent) {
        lvvmf::EichlerWord w;
        w.sign = coin() ? 1 : -1;
        const long n = static_cast<long>(range(2, max_factors));
        w.exponents.push_back(lvvmf::Integer(static_cast<long>(range(-max_exponent, max_exponent))));
        for (long j = 1; j < n; ++j) {
            const bool last = j == n - 1;
            std::int64_t v = range(last && j > 1 ? 0 : 1, max_exponent);
            if (j % 2 == 0) v = -v;
            w.exponents.push_back(lvvmf::Integer(static_cast<long>(v)));
        }
        return w;
    }

private:
    std::uint64_t state_;
};

}  // namespace oracle
