// One line per acceptance criterion: [PASS] or [FAIL], its number, what was
// checked and the measured values. Exit status is nonzero if any line fails.

#include "lvvmf/growth.hpp"
#include "lvvmf/log_expansion.hpp"
#include "lvvmf/suites.hpp"
#include "oracles/brute_words.hpp"
#include "oracles/series_oracles.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>

using namespace lvvmf;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void line(int n, bool ok, const std::string& what, const std::string& details) {
    if (!ok) ++failures;
    std::printf("[%s] %2d %s (%s)\n", ok ? "PASS" : "FAIL", n, what.c_str(), details.c_str());
    std::fflush(stdout);
}

template <class... A>
std::string fmt(const char* f, A... a) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, a...);
    return buf;
}

void guarded(int n, const std::string& what, const std::function<void()>& body) {
    try {
        body();
    } catch (const std::exception& e) {
        line(n, false, what, std::string("exception: ") + e.what());
    }
}

}  // namespace

int main() {
    // Criteria 1-3 share one single-threaded sweep; the time limit is for one core.
    setenv("LVVMF_THREADS", "1", 1);
    WordSweep sweep;
    guarded(1, "round trip and sign pattern, c,|d| <= 200, under 60 s", [&] {
        WordSweepOptions o;
        o.c_max = 200;
        o.d_max = 200;
        sweep = word_sweep(o);
        line(1, sweep.roundtrip_violations == 0 && sweep.sign_violations == 0 && sweep.seconds < 60,
             "round trip and sign pattern, c,|d| <= 200, under 60 s",
             fmt("checked %lld, roundtrip %lld, sign %lld, %.2f s", (long long)sweep.checked,
                 (long long)sweep.roundtrip_violations, (long long)sweep.sign_violations, sweep.seconds));
    });
    unsetenv("LVVMF_THREADS");

    line(2, sweep.checked > 0 && sweep.dichotomy_violations == 0, "tail dichotomy on the same range",
         fmt("checked %lld, violations %lld, single-factor exempt %lld", (long long)sweep.checked,
             (long long)sweep.dichotomy_violations, (long long)sweep.dichotomy_exempt));
    line(3, sweep.checked > 0 && sweep.bound_violations == 0, "word length and product bounds on the same range",
         fmt("violations %lld, max ratio %.6g", (long long)sweep.bound_violations, sweep.max_ratio));

    guarded(4, "brute-force uniqueness, c <= 30, |d| <= 30, under 300 s", [] {
        const auto t0 = Clock::now();
        std::int64_t checked = 0, bad = 0, nodes = 0;
        for (const auto& g : GammaRange(30, 30)) {
            const EichlerWord w = decompose_word(g);
            const oracle::BruteResult r = oracle::brute_force_words(g, eichler_length(w));
            ++checked;
            nodes += r.nodes;
            if (r.matches != 1 || !(r.words.front() == w)) ++bad;
        }
        const double s = since(t0);
        line(4, checked > 0 && bad == 0 && s < 300, "brute-force uniqueness, c <= 30, |d| <= 30, under 300 s",
             fmt("checked %lld, mismatches %lld, nodes %lld, %.2f s", (long long)checked, (long long)bad,
                 (long long)nodes, s));
    });

    guarded(5, "Lame ratio: Fibonacci sup finite and never exceeded", [] {
        const LameSweep l = lame_sweep(10000, 2000);
        line(5, l.pass(), "Lame ratio: Fibonacci sup finite and never exceeded",
             fmt("sup %.6f at c = %s, enumerated max %.6f over %lld, exceedances %lld", l.fibonacci_sup,
                 to_string(l.fibonacci_argmax.c).c_str(), l.enumerated_max, (long long)l.enumerated,
                 (long long)l.exceedances));
    });

    guarded(6, "B_m B_m^{-1} = I for m <= 12, vanishing identities for m <= 6", [] {
        const BMatrixCheck b = bmatrix_check(12, 6);
        line(6, b.pass(), "B_m B_m^{-1} = I for m <= 12, vanishing identities for m <= 6",
             fmt("identity failures %zu, vanishing failures %zu", b.identity_failures.size(),
                 b.vanishing_failures.size()));
    });

    guarded(7, "(Delta, tau Delta): h_1 = 0 exactly, block law within 1e-9 at 20 points", [] {
        const QSeries d = delta_series(200);
        const std::vector<TauPolySeries> g{TauPolySeries(d), TauPolySeries::term(RationalPolynomial::x(), d)};
        const PolyQExpansion h = h_from_components(g);
        std::vector<Complex> taus;
        for (int i = 0; i < 20; ++i) taus.emplace_back(-0.5 + i / 19.0, 0.35 + 0.05 * i);
        const BlockTransformReport r = verify_block_transform(g, 0, taus);
        const bool ok = h.h[1].is_zero() && h.h[0] == d && r.pass && r.recursion_error < 1e-9 &&
                        r.periodicity_error < 1e-9;
        line(7, ok, "(Delta, tau Delta): h_1 = 0 exactly, block law within 1e-9 at 20 points",
             fmt("recursion %.3g, periodicity %.3g", r.recursion_error, r.periodicity_error));
    });

    guarded(8, "Jordan power ratio stable (l 1e3 vs 1e4, m <= 6) and group law on 1000 pairs", [] {
        double worst = 0;
        for (long m = 0; m <= 6; ++m) worst = std::max(worst, jordan_stability(m, 1000, 10000).change());
        const GroupLawCheck g = block_power_group_law(1000, 1000000, 1);
        line(8, worst < 1e-6 && g.failures == 0 && g.pairs == 1000,
             "Jordan power ratio stable (l 1e3 vs 1e4, m <= 6) and group law on 1000 pairs",
             fmt("max relative change %.3g, group law failures %lld", worst, (long long)g.failures));
    });

    guarded(9, "Sym^m, m <= 4: bound chain c <= 100, fitted bound c <= 200 on held-out data", [] {
        bool ok = true;
        std::ostringstream d;
        for (long m = 0; m <= 4; ++m) {
            const NormSweep s = norm_sweep(RepEvaluator(sym_power_rep(m)), 100, 200);
            ok = ok && s.pass();
            d << (m ? "; " : "") << "m=" << m << " K4=" << fmt("%.4f", s.fit.K4) << " K3=" << fmt("%.4f", s.fit.K3)
              << " chain " << s.chain_violations + s.inverse_chain_violations << " held-out "
              << s.fit.validation_violations;
        }
        line(9, ok, "Sym^m, m <= 4: bound chain c <= 100, fitted bound c <= 200 on held-out data", d.str());
    });

    guarded(10, "slash covariance of sym1-delta, |c| <= 5, 10 samples, error < 1e-8", [] {
        const LVVMF f = named_example("sym1-delta", 60);
        const SlashReport s = slash_check(f, 5, 10, 1, 1e-8);
        line(10, s.pass && s.max_error < 1e-8, "slash covariance of sym1-delta, |c| <= 5, 10 samples, error < 1e-8",
             fmt("checked %lld, max error %.3g, tail %.3g", (long long)s.checked, s.max_error, s.max_tail));
    });

    guarded(11, "coefficient growth of sym1-delta within the bound, under 30 s", [] {
        const auto t0 = Clock::now();
        const LVVMF f = named_example("sym1-delta", 2000);
        const FittedConstants k = fit_polynomial_exponent(RepEvaluator(f.rep), 200);
        const GrowthReport g = coefficient_growth(f, k, 100, 2000);
        const auto ref = oracle::delta_by_product(5);
        bool tau_ok = true;
        for (long n = 1; n <= 5; ++n) tau_ok = tau_ok && f.blocks[0].h[0].coeff(n) == Rational(ref[n]);
        const double s = since(t0);
        const bool ok = g.kind == AtInfinity::cuspidal && g.beta >= 5.4 && g.beta <= 6.1 && g.beta <= g.bound &&
                        tau_ok && s < 30;
        line(11, ok, "coefficient growth of sym1-delta within the bound, under 30 s",
             fmt("kind %s, beta %.4f, bound (k+alpha)/2 = %.4f, alpha %.4f, tau(1..5) %s, %.2f s",
                 to_string(g.kind).c_str(), g.beta, g.bound, g.alpha, tau_ok ? "ok" : "mismatch", s));
    });

    guarded(12, "sup of y^{11/2}|F| over the fundamental domain changes < 1% from cap 25 to 50", [] {
        const LVVMF f = named_example("sym1-delta", 60);
        DomainGrid small, large;
        large.height_cap = 50;
        const DomainSup a = fundamental_domain_sup(f, 5.5, 0, small);
        const DomainSup b = fundamental_domain_sup(f, 5.5, 0, large);
        const double change = a.sup > 0 ? std::abs(b.sup - a.sup) / a.sup : 1;
        line(12, std::isfinite(a.sup) && a.sup > 0 && change < 0.01,
             "sup of y^{11/2}|F| over the fundamental domain changes < 1% from cap 25 to 50",
             fmt("sup %.6g at cap 25, %.6g at cap 50, change %.3g", a.sup, b.sup, change));
    });

    std::printf("%s: %d failing\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
