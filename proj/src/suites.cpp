#include "lvvmf/suites.hpp"

#include "lvvmf/log_expansion.hpp"
#include "lvvmf/parallel.hpp"

#include <chrono>
#include <random>

namespace lvvmf {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void note(std::vector<std::string>& list, std::size_t cap, const std::string& s) {
    if (list.size() < cap) list.push_back(s);
}

}  // namespace

WordSweep word_sweep(const WordSweepOptions& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto parts = parallel_chunks<WordSweep>(1, o.c_max + 1, [&](std::int64_t lo, std::int64_t hi) {
        WordSweep r;
        auto check = [&](const GammaMatrix& g, bool translate) {
            const EichlerWord w = decompose_word(g);
            if (!(reconstruct(w) == g)) {
                ++r.roundtrip_violations;
                note(r.failures, o.keep_failures, "round trip " + to_string(g));
            }
            if (const std::string e = sign_pattern_error(w); !e.empty()) {
                ++r.sign_violations;
                note(r.failures, o.keep_failures, "sign pattern " + to_string(g) + ": " + e);
            }
            const WordBoundReport p = verify_word_bounds(w, g);
            if (!p.pass) {
                ++r.bound_violations;
                note(r.failures, o.keep_failures, "product bounds " + to_string(g) + ": " + p.violations.front());
            }
            const TailDichotomy t = check_tail_dichotomy(w, g);
            if (translate) {
                ++r.translate_checked;
                if (!t.holds) {
                    ++r.translate_dichotomy_violations;
                    note(r.translate_failures, o.keep_failures, to_string(g) + ": " + t.detail);
                }
                return;
            }
            ++r.checked;
            if (t.exempt) ++r.dichotomy_exempt;
            if (!t.holds) {
                ++r.dichotomy_violations;
                note(r.failures, o.keep_failures, "tail dichotomy " + to_string(g) + ": " + t.detail);
            }
            if (p.trailing_zero) ++r.trailing_zero;
            r.max_ratio = std::max(r.max_ratio, p.max_ratio);
            if (o.keep_rows)
                r.rows.push_back({g.c.get_si(), g.d.get_si(), w.nu(), eichler_length(w), p.max_ratio});
        };
        for (const auto& g : GammaRange(hi - 1, o.d_max, lo)) {
            check(g, false);
            for (long k = -o.translate_radius; k <= o.translate_radius; ++k)
                if (k != 0) check(GammaMatrix::T(Integer(k)) * g, true);
        }
        return r;
    });
    WordSweep total;
    for (const auto& p : parts) {
        total.checked += p.checked;
        total.roundtrip_violations += p.roundtrip_violations;
        total.sign_violations += p.sign_violations;
        total.dichotomy_violations += p.dichotomy_violations;
        total.dichotomy_exempt += p.dichotomy_exempt;
        total.bound_violations += p.bound_violations;
        total.trailing_zero += p.trailing_zero;
        total.translate_checked += p.translate_checked;
        total.translate_dichotomy_violations += p.translate_dichotomy_violations;
        total.max_ratio = std::max(total.max_ratio, p.max_ratio);
        for (const auto& f : p.failures) note(total.failures, o.keep_failures, f);
        for (const auto& f : p.translate_failures) note(total.translate_failures, o.keep_failures, f);
        total.rows.insert(total.rows.end(), p.rows.begin(), p.rows.end());
    }
    total.seconds = seconds_since(t0);
    return total;
}

LameSweep lame_sweep(std::int64_t fib_c_max, std::int64_t enum_c_max) {
    const auto t0 = std::chrono::steady_clock::now();
    LameSweep r;
    for (std::int64_t older = 0, prev = 1, cur = 1; cur <= fib_c_max;) {
        for (const std::int64_t d : {prev, -prev, older, -older}) {
            if (d == 0 && cur > 1) continue;
            const GammaMatrix g = canonical_gamma(cur, d);
            const double ratio = lame_ratio(decompose_word(g), g);
            if (ratio > r.fibonacci_sup) {
                r.fibonacci_sup = ratio;
                r.fibonacci_argmax = g;
            }
        }
        const std::int64_t next = prev + cur;
        older = prev;
        prev = cur;
        cur = next;
    }
    struct Part {
        double best = 0;
        GammaMatrix arg;
        std::int64_t count = 0, over = 0;
    };
    const double limit = r.fibonacci_sup * (1 + 1e-12);
    const auto parts = parallel_chunks<Part>(1, enum_c_max + 1, [&](std::int64_t lo, std::int64_t hi) {
        Part p;
        for (const auto& g : GammaRange(hi - 1, enum_c_max, lo)) {
            const double ratio = lame_ratio(decompose_word(g), g);
            ++p.count;
            if (ratio > limit) ++p.over;
            if (ratio > p.best) {
                p.best = ratio;
                p.arg = g;
            }
        }
        return p;
    });
    for (const auto& p : parts) {
        r.enumerated += p.count;
        r.exceedances += p.over;
        if (p.best > r.enumerated_max) {
            r.enumerated_max = p.best;
            r.enumerated_argmax = p.arg;
        }
    }
    r.seconds = seconds_since(t0);
    return r;
}

double JordanStability::change() const {
    return std::max(std::abs(ratio_large - ratio_small), std::abs(jordan_large - jordan_small));
}

JordanStability jordan_stability(long m, long l_small, long l_large) {
    const Representation rep = sym_power_rep(m);
    const UnipotentForm form = canonicalize_unipotent(*rep.exactT);
    JordanStability r;
    r.m = m;
    r.s = form.spec.s();
    const IntegerMatrix& t = *rep.exactT;
    const RationalMatrix t_inv_q = inverse(to_rational(t));
    IntegerMatrix t_inv(t.rows(), t.cols());
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < t.cols(); ++j) t_inv(i, j) = t_inv_q(i, j).get_num();
    IntegerMatrix up = IntegerMatrix::identity(t.rows()), down = up;
    for (long l = 1; l <= l_large; ++l) {
        up = up * t;
        down = down * t_inv;
        const double scale = std::pow(static_cast<double>(l), static_cast<double>(r.s - 1));
        const double ratio = std::max(max_norm_exact(up), max_norm_exact(down)) / scale;
        r.ratio_large = std::max(r.ratio_large, ratio);
        if (l <= l_small) r.ratio_small = r.ratio_large;
    }
    r.jordan_small = norm_bound_constant(form.spec, l_small);
    r.jordan_large = norm_bound_constant(form.spec, l_large);
    return r;
}

GroupLawCheck block_power_group_law(std::int64_t pairs, std::int64_t l_max, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> um(1, 6), uq(1, 12);
    std::uniform_int_distribution<std::int64_t> ul(-l_max, l_max);
    GroupLawCheck r;
    for (std::int64_t i = 0; i < pairs; ++i) {
        const long m = um(rng);
        const long q = uq(rng);
        const long p = std::uniform_int_distribution<long>(0, q - 1)(rng);
        const JordanBlock b(m, Rational(p, q));
        const Integer l1 = static_cast<long>(ul(rng)), l2 = static_cast<long>(ul(rng));
        const PhasedMatrix x = block_power_exact(b, l1), y = block_power_exact(b, l2), z = block_power_exact(b, l1 + l2);
        ++r.pairs;
        if (frac(x.turn + y.turn) != frac(z.turn) || !(x.unit * y.unit == z.unit)) {
            if (r.failures++ == 0)
                r.first_failure = "m=" + std::to_string(m) + " mu=" + to_string(b.mu) + " l1=" + to_string(l1) +
                                  " l2=" + to_string(l2);
        }
    }
    return r;
}

BMatrixCheck bmatrix_check(long m_max, long vanish_max) {
    BMatrixCheck r;
    r.m_max = m_max;
    r.vanish_max = vanish_max;
    for (long m = 1; m <= m_max; ++m) {
        const PolyMatrix b = b_matrix(m), bi = b_matrix_inverse(m);
        const PolyMatrix id = PolyMatrix::identity(static_cast<std::size_t>(m));
        if (!(b * bi == id) || !(bi * b == id)) r.identity_failures.push_back(m);
    }
    for (long m = 1; m <= vanish_max; ++m) {
        std::string why;
        if (!vanishing_identity_holds(m, &why)) r.vanishing_failures.push_back("m=" + std::to_string(m) + ": " + why);
    }
    return r;
}

NormSweep norm_sweep(const RepEvaluator& ev, std::int64_t chain_c_max, std::int64_t fit_c_max) {
    NormSweep r;
    const auto parts = parallel_chunks<NormSweep>(1, chain_c_max + 1, [&](std::int64_t lo, std::int64_t hi) {
        NormSweep p;
        for (const auto& g : GammaRange(hi - 1, chain_c_max, lo)) {
            const EichlerWord w = decompose_word(g);
            const BoundChain f = bound_chain(ev, w, false);
            const BoundChain b = bound_chain(ev, w, true);
            ++p.chain_checked;
            if (!f.pass) {
                ++p.chain_violations;
                note(p.failures, 20, "forward " + to_string(g));
            }
            if (!b.pass) {
                ++p.inverse_chain_violations;
                note(p.failures, 20, "inverse " + to_string(g));
            }
            p.worst_chain_ratio = std::max({p.worst_chain_ratio, f.lhs / f.rhs, b.lhs / b.rhs});
        }
        return p;
    });
    for (const auto& p : parts) {
        r.chain_checked += p.chain_checked;
        r.chain_violations += p.chain_violations;
        r.inverse_chain_violations += p.inverse_chain_violations;
        r.worst_chain_ratio = std::max(r.worst_chain_ratio, p.worst_chain_ratio);
        for (const auto& f : p.failures) note(r.failures, 20, f);
    }
    r.fit = fit_polynomial_exponent(ev, fit_c_max);
    r.inverse = inverse_bound_check(ev, r.fit, fit_c_max);
    return r;
}

}  // namespace lvvmf
