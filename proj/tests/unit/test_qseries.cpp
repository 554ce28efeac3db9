#include <doctest.h>

#include "lvvmf/qseries.hpp"
#include "oracles/gen.hpp"
#include "oracles/series_oracles.hpp"

#include <sstream>

using namespace lvvmf;

TEST_CASE("Delta agrees with the direct product") {
    const long order = 300;
    const QSeries d = delta_series(order);
    const auto ref = oracle::delta_by_product(order);
    for (long n = 0; n <= order; ++n) CHECK(d.coeff(n) == Rational(ref[n]));
    CHECK(d.coeff(1) == 1);
    CHECK(d.coeff(2) == -24);
    CHECK(d.coeff(3) == 252);
    CHECK(d.coeff(4) == -1472);
    CHECK(d.coeff(5) == 4830);
    CHECK_THROWS(d.coeff(order + 1));
}

TEST_CASE("Eisenstein series agree with divisor sums") {
    for (long k : {4, 6, 8, 10, 12, 14}) {
        const QSeries e = eisenstein_series(k, 120);
        const auto ref = oracle::eisenstein_by_divisors(k, 120);
        for (long n = 0; n <= 120; ++n) CHECK(e.coeff(n) == ref[n]);
    }
    CHECK_THROWS(eisenstein_series(2, 10));
    CHECK_THROWS(eisenstein_series(5, 10));
    CHECK(bernoulli(12) == Rational(-691, 2730));
}

TEST_CASE("E4^3 - E6^2 = 1728 Delta") {
    const long order = 150;
    const QSeries e4 = eisenstein_series(4, order), e6 = eisenstein_series(6, order);
    const QSeries lhs = (e4 * e4 * e4 - e6 * e6).truncated(order);
    CHECK(lhs == delta_series(order).scaled(1728));
}

TEST_CASE("products against a naive convolution with offsets") {
    oracle::Gen gen(3);
    QSeries x(Rational(1, 3), 20, -2), y(Rational(1, 2), 25, 1);
    for (long n = -2; n <= 20; ++n) x.set_coeff(n, Rational(static_cast<long>(gen.range(-9, 9)), 7));
    for (long n = 1; n <= 25; ++n) y.set_coeff(n, static_cast<long>(gen.range(-9, 9)));
    const QSeries p = x * y;
    // mu = 1/3 + 1/2 = 5/6 with no carry; known through min(20 + 1, 25 - 2).
    CHECK(p.mu() == Rational(5, 6));
    CHECK(p.order() == 21);
    for (long n = -1; n <= 21; ++n) {
        Rational s = 0;
        for (long i = -2; i <= 20; ++i) {
            const long j = n - i;
            if (j >= 1 && j <= 25) s += x.coeff(i) * y.coeff(j);
        }
        CHECK(p.coeff(n) == s);
    }
    // 2/3 + 1/2 carries one unit into n.
    QSeries z(Rational(2, 3), 5, 0);
    z.set_coeff(0, 1);
    const QSeries w = z * y;
    CHECK(w.mu() == Rational(1, 6));
    CHECK(w.coeff(2) == y.coeff(1));
}

TEST_CASE("classification at infinity") {
    CHECK(delta_series(20).classify() == AtInfinity::cuspidal);
    CHECK(eisenstein_series(4, 20).classify() == AtInfinity::holomorphic);
    QSeries m(0, 10, -1);
    m.set_coeff(-1, 1);
    CHECK(m.classify() == AtInfinity::meromorphic);
    QSeries half(Rational(1, 2), 10, -1);
    half.set_coeff(-1, 1);
    // q^{-1/2} still has a negative exponent.
    CHECK(half.classify() == AtInfinity::meromorphic);
    QSeries c(Rational(1, 2), 10, 0);
    c.set_coeff(0, 1);
    CHECK(c.classify() == AtInfinity::cuspidal);
    CHECK(QSeries(0, 10).classify() == AtInfinity::cuspidal);
}

TEST_CASE("evaluation: transformation laws and a known value") {
    const QSeries d = delta_series(60), e4 = eisenstein_series(4, 60);
    for (const Complex tau : {Complex(0.1, 1.2), Complex(-0.4, 0.95), Complex(0.3, 2.0)}) {
        const Complex lhs = d.evaluate(-1.0 / tau).value;
        const Complex rhs = std::pow(tau, 12.0) * d.evaluate(tau).value;
        CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-10);
    }
    // E4(i) = 3 Gamma(1/4)^8 / (2 pi)^6.
    const double expected = 3 * std::pow(std::tgamma(0.25), 8) / std::pow(2 * M_PI, 6);
    CHECK(std::abs(e4.evaluate(Complex(0, 1)).value - expected) < 1e-12);
}

TEST_CASE("batched evaluation matches single points") {
    const QSeries d = delta_series(80);
    std::vector<Complex> taus;
    for (int i = 0; i < 37; ++i) taus.emplace_back(-0.5 + i / 36.0, 0.4 + 0.05 * i);
    const auto batch = d.evaluate(taus);
    for (std::size_t i = 0; i < taus.size(); ++i)
        CHECK(std::abs(batch[i].value - d.evaluate(taus[i]).value) <= 1e-14 * (1 + std::abs(batch[i].value)));
}

TEST_CASE("shift by T advances the phase") {
    QSeries s(Rational(1, 3), 30, 0);
    for (long n = 0; n <= 30; ++n) s.set_coeff(n, Rational(1, n + 1));
    const QSeries t = s.shift_T();
    CHECK(t.phase() == Rational(1, 3));
    const Complex tau(0.17, 0.8);
    CHECK(std::abs(t.evaluate(tau).value - s.evaluate(tau + 1.0).value) < 1e-13);
}

TEST_CASE("series files round trip") {
    QSeries s = delta_series(40).scaled(Rational(3, 7)).rotated(Rational(1, 2));
    std::stringstream io;
    write_series(io, s);
    const QSeries back = read_series(io);
    CHECK(back == s);

    std::stringstream imaginary("mu 1/4, order 3\n1 0 2\n3 0 -1/2\n");
    const QSeries i = read_series(imaginary);
    CHECK(i.phase() == Rational(1, 4));
    CHECK(i.coeff(3) == Rational(-1, 2));

    std::stringstream bad("mu 1/4 order 3\n");
    CHECK_THROWS(read_series(bad));
    std::stringstream mixed("mu 0, order 2\n1 1 1\n");
    CHECK_THROWS(read_series(mixed));
    std::stringstream decimal("mu 0, order 2\n1 0.5 0\n");
    CHECK(read_complex_series(decimal).coeff(1) == Complex(0.5, 0));
}
