#pragma once

// Exhaustive search for sign-valid words equal to +-gamma.
//
// Words are grown from the right, P_0 = S T^{l_0}, P_j = S T^{l_j} P_{j-1}.
// After conjugation by diag(1, -1) the interior factors have nonnegative
// entries, so the entries of the partial products are continuants and never
// shrink; a branch whose largest entry exceeds that of gamma is cut. The
// final factor may be S (l = 0), which only permutes rows.

#include "lvvmf/sl2z.hpp"

#include <algorithm>
#include <vector>

namespace oracle {

struct BruteResult {
    long matches = 0;
    long nodes = 0;
    std::vector<lvvmf::EichlerWord> words;
};

namespace detail {

inline lvvmf::Integer max_entry(const lvvmf::GammaMatrix& g) {
    return std::max({abs(g.a), abs(g.b), abs(g.c), abs(g.d)});
}

inline void grow(const lvvmf::GammaMatrix& target, const lvvmf::Integer& bound, long max_factors,
                 long target_length, lvvmf::EichlerWord& w, const lvvmf::GammaMatrix& p, BruteResult& out) {
    ++out.nodes;
    const long j = static_cast<long>(w.exponents.size());
    if (j >= 2) {
        for (int sign : {1, -1}) {
            const lvvmf::GammaMatrix signed_p = sign > 0 ? p : p.negated();
            if (signed_p == target) {
                lvvmf::EichlerWord found = w;
                found.sign = sign;
                if (lvvmf::eichler_length(found) <= target_length + 4) {
                    ++out.matches;
                    out.words.push_back(found);
                }
            }
        }
    }
    if (j >= max_factors) return;
    // Exponent l_j with (-1)^{j-1} l_j > 0; zero only as the closing factor.
    const long lim = bound.get_si() + 1;
    const long dir = j % 2 == 1 ? 1 : -1;
    for (long m = 0; m <= lim; ++m) {
        const lvvmf::Integer l(dir * m);
        const lvvmf::GammaMatrix next = lvvmf::GammaMatrix::ST(l) * p;
        if (max_entry(next) > bound) continue;
        w.exponents.push_back(l);
        if (m == 0) {
            if (j >= 2) {
                for (int sign : {1, -1}) {
                    const lvvmf::GammaMatrix signed_p = sign > 0 ? next : next.negated();
                    lvvmf::EichlerWord found = w;
                    found.sign = sign;
                    if (signed_p == target && lvvmf::eichler_length(found) <= target_length + 4) {
                        ++out.matches;
                        out.words.push_back(found);
                    }
                }
            }
        } else {
            grow(target, bound, max_factors, target_length, w, next, out);
        }
        w.exponents.pop_back();
    }
}

}  // namespace detail

/// All sign-valid words of length at most L(gamma) + 4 whose product is +-gamma.
inline BruteResult brute_force_words(const lvvmf::GammaMatrix& target, long target_length) {
    BruteResult out;
    const lvvmf::Integer bound = detail::max_entry(target);
    // L >= 2 nu = 2 (factors - 2).
    const long max_factors = (target_length + 4) / 2 + 2;
    const long lim = bound.get_si() + 1;
    lvvmf::EichlerWord w;
    for (long l0 = -lim; l0 <= lim; ++l0) {
        const lvvmf::GammaMatrix p = lvvmf::GammaMatrix::ST(lvvmf::Integer(l0));
        if (detail::max_entry(p) > bound) continue;
        w.exponents.assign(1, lvvmf::Integer(l0));
        // A single factor is the whole word when gamma = +-S T^{l_0}.
        for (int sign : {1, -1}) {
            if ((sign > 0 ? p : p.negated()) == target) {
                lvvmf::EichlerWord found = w;
                found.sign = sign;
                ++out.matches;
                out.words.push_back(found);
            }
        }
        detail::grow(target, bound, max_factors, target_length, w, p, out);
    }
    return out;
}

}  // namespace oracle
