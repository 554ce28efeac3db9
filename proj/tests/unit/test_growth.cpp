#include <doctest.h>

#include "lvvmf/growth.hpp"
#include "oracles/gen.hpp"

using namespace lvvmf;

namespace {

LVVMF zeroed(LVVMF f) {
    for (auto& b : f.blocks)
        for (auto& h : b.h) h = h.scaled(0);
    return f;
}

}  // namespace

TEST_CASE("named examples") {
    const LVVMF d = named_example("sym1-delta", 40);
    CHECK(d.k == 11);
    CHECK(d.m == 1);
    CHECK(d.kind == AtInfinity::cuspidal);
    REQUIRE(d.blocks.size() == 1);
    REQUIRE(d.blocks[0].m() == 2);
    CHECK(d.blocks[0].h[0] == delta_series(40));
    CHECK(d.blocks[0].h[1].is_zero());

    const LVVMF e = named_example("sym0-e4", 40);
    CHECK(e.k == 4);
    CHECK(e.kind == AtInfinity::holomorphic);

    const LVVMF d2 = named_example("sym2-delta2", 40);
    CHECK(d2.k == 22);
    CHECK(d2.blocks[0].m() == 3);

    CHECK_THROWS(named_example("sym1-theta", 40));
    CHECK_THROWS(named_example("delta", 40));
}

TEST_CASE("components evaluate to f times powers of tau") {
    const LVVMF f = named_example("sym2-e4_delta", 80);
    const QSeries s = eisenstein_series(4, 80) * delta_series(80);
    for (const Complex tau : {Complex(0.2, 0.9), Complex(-0.45, 1.3)}) {
        const auto v = f.evaluate(tau);
        const Complex fv = s.evaluate(tau).value;
        REQUIRE(v.size() == 3);
        CHECK(std::abs(v[0] - tau * tau * fv) < 1e-12 * (1 + std::abs(fv)));
        CHECK(std::abs(v[1] - tau * fv) < 1e-12 * (1 + std::abs(fv)));
        CHECK(std::abs(v[2] - fv) < 1e-12 * (1 + std::abs(fv)));
    }
}

TEST_CASE("multipliers that are not level one are rejected") {
    QSeries half(Rational(1, 2), 30, 0);
    half.set_coeff(0, 1);
    CHECK_THROWS(build_sym_example(1, ClassicalForm{"half", 12, half}));
    CHECK_THROWS(build_sym_example(1, ClassicalForm{"e2", 2, QSeries::constant(1, 30)}));
    CHECK_THROWS(build_sym_example(1, ClassicalForm{"odd", 13, delta_series(30)}));
    // E4 claimed to have weight 12 fails the S-check.
    CHECK_THROWS(build_sym_example(1, ClassicalForm{"fake", 12, eisenstein_series(4, 30)}));
}

TEST_CASE("slash covariance") {
    const LVVMF f = named_example("sym1-delta", 60);
    const RepEvaluator ev(f.rep);
    CHECK(slash_error(f, ev, GammaMatrix::S(), Complex(0, 2)).error < 1e-10);
    CHECK(slash_error(f, ev, GammaMatrix::T(), Complex(0.3, 0.7)).error < 1e-10);
    CHECK(slash_error(f, ev, GammaMatrix::T(-3).negated(), Complex(0.1, 0.5)).error < 1e-10);
    oracle::Gen gen(61);
    for (int i = 0; i < 30; ++i) {
        const GammaMatrix g = gen.gamma(4, 4);
        for (const Complex& tau : slash_samples(g, 3, gen.next())) {
            INFO(to_string(g));
            CHECK(tau.imag() >= 0.3);
            CHECK(mobius(g, tau).imag() >= 0.12 - 1e-12);
            CHECK(slash_error(f, ev, g, tau).error < 1e-8);
        }
    }
    // A wrong weight breaks covariance.
    LVVMF wrong = f;
    wrong.k = 10;
    const double right_err = slash_error(f, ev, GammaMatrix::S(), Complex(0.1, 1.3)).error;
    CHECK(slash_error(wrong, ev, GammaMatrix::S(), Complex(0.1, 1.3)).error > 1e6 * (right_err + 1e-16));
}

TEST_CASE("reduction lands in the fundamental domain") {
    oracle::Gen gen(71);
    for (int i = 0; i < 500; ++i) {
        const Complex tau(gen.unit() * 20 - 10, 1e-3 + gen.unit());
        const Reduction r = reduce_to_fundamental_domain(tau);
        CHECK(std::abs(r.z.real()) <= 0.5 + 1e-12);
        CHECK(std::abs(r.z) >= 1 - 1e-12);
        CHECK(r.gamma.unimodular());
        CHECK(std::abs(mobius(r.gamma, tau) - r.z) < 1e-9 * (1 + std::abs(r.z)));
    }
    CHECK(reduce_to_fundamental_domain(Complex(0, 2)).gamma == GammaMatrix::identity());
}

TEST_CASE("trailing zero transports have |l_nu| = 1") {
    CHECK(l_nu_case(Complex(0.1, 3)).transport.c == 0);
    const auto taus = l_nu_samples(2000, 5);
    const LNuReport r = l_nu_unit_check(taus);
    CHECK(r.points == 2000);
    CHECK(r.violations == 0);
    for (const auto& t : taus) {
        CHECK(t.real() >= -0.5);
        CHECK(t.real() <= 0.5);
        CHECK(1 / t.imag() >= 2 - 1e-9);
        CHECK(1 / t.imag() <= 50 + 1e-9);
    }
}

TEST_CASE("supremum over the fundamental domain") {
    const LVVMF d = named_example("sym1-delta", 60);
    CHECK(fundamental_domain_sup(zeroed(d), 5.5, 0, DomainGrid{}).sup == 0);

    DomainGrid small{41, 10, 0.02}, large{41, 50, 0.02};
    const DomainSup a = fundamental_domain_sup(d, 5.5, 0, small);
    const DomainSup b = fundamental_domain_sup(d, 5.5, 0, large);
    CHECK(a.sup > 0);
    CHECK(std::abs(b.sup - a.sup) <= 0.01 * a.sup);
    CHECK(a.per_component.size() == 2);

    const LVVMF e = named_example("sym0-e4", 60);
    const DomainSup ea = fundamental_domain_sup(e, 2, 1, small);
    const DomainSup eb = fundamental_domain_sup(e, 2, 1, large);
    CHECK(std::isfinite(ea.sup));
    CHECK(std::abs(eb.sup - ea.sup) <= 0.01 * ea.sup);
}

TEST_CASE("coefficient growth") {
    const LVVMF d = named_example("sym1-delta", 2000);
    const FittedConstants k = fit_polynomial_exponent(RepEvaluator(d.rep), 60);
    const GrowthReport g = coefficient_growth(d, k, 100, 2000);
    CHECK_FALSE(g.empty);
    CHECK(g.kind == AtInfinity::cuspidal);
    CHECK(g.beta >= 5.4);
    CHECK(g.beta <= 6.1);
    CHECK(g.beta <= g.bound);
    CHECK(g.bound == doctest::Approx((d.k + g.alpha) / 2));

    const LVVMF e = named_example("sym0-e4", 600);
    const GrowthReport ge = coefficient_growth(e, fit_polynomial_exponent(RepEvaluator(e.rep), 20), 100, 600);
    CHECK(ge.beta == doctest::Approx(3).epsilon(0.02));

    const LVVMF d2 = named_example("sym2-delta2", 600);
    const GrowthReport g2 = coefficient_growth(d2, fit_polynomial_exponent(RepEvaluator(d2.rep), 30), 100, 600);
    CHECK(g2.beta > g.beta);

    const GrowthReport gz = coefficient_growth(zeroed(d), k, 100, 2000);
    CHECK(gz.empty);
    CHECK(coefficient_growth(named_example("sym1-delta", 50), k, 100, 2000).empty);
}
