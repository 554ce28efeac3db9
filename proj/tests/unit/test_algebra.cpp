#include <doctest.h>

#include "lvvmf/arith.hpp"
#include "lvvmf/cyclotomic.hpp"
#include "lvvmf/parallel.hpp"
#include "lvvmf/polynomial.hpp"

#include <cstdlib>

using namespace lvvmf;

TEST_CASE("rational parsing and integer helpers") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-6/8") == Rational(-3, 4));
    CHECK(parse_rational("5") == 5);
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("x"));
    CHECK(floor_div(-7, 2) == -4);
    CHECK(floor_div(7, -2) == -4);
    CHECK(frac(Rational(-1, 3)) == Rational(2, 3));
    CHECK(gcd(12, -18) == 6);
}

TEST_CASE("binomials at negative arguments follow the polynomial definition") {
    CHECK(binomial(-1, 2) == 1);
    CHECK(binomial(-1, 3) == -1);
    CHECK(binomial(-3, 2) == 6);
    CHECK(binomial(5, 0) == 1);
    CHECK(binomial(3, 5) == 0);
    const RationalPolynomial c3 = RationalPolynomial::binomial(0, 3);
    CHECK(c3 == RationalPolynomial({0, Rational(1, 3), Rational(-1, 2), Rational(1, 6)}));
    for (long x = -6; x <= 6; ++x) CHECK(c3(Rational(x)) == Rational(binomial(x, 3)));
}

TEST_CASE("polynomial arithmetic and printing") {
    const RationalPolynomial x = RationalPolynomial::x();
    const RationalPolynomial p = x * x - x;
    CHECK(p.to_string() == "x^2 - x");
    CHECK(p.shifted(1) == x * x + x);
    CHECK((p - p).is_zero());
    CHECK(RationalPolynomial::binomial(0, 2).to_string() == "1/2*x^2 - 1/2*x");
}

TEST_CASE("exact roots of unity at quarter turns") {
    CHECK(unit_root(Rational(1, 4)) == Complex(0, 1));
    CHECK(unit_root(Rational(1, 2)) == Complex(-1, 0));
    CHECK(std::abs(unit_root(Rational(1, 3)) - Complex(-0.5, std::sqrt(3.0) / 2)) < 1e-15);
}

TEST_CASE("cyclotomic arithmetic") {
    const Cyclotomic a = Cyclotomic::root_of_unity(Rational(1, 3));
    const Cyclotomic b = Cyclotomic::root_of_unity(Rational(1, 6));
    CHECK(a * b == Cyclotomic(-1));
    // 1 + z + z^2 = 0 for a primitive cube root.
    CHECK((Cyclotomic(1) + a + a * a).is_zero());
    const Cyclotomic c = Cyclotomic::root_of_unity(Rational(2, 5)) * Cyclotomic::root_of_unity(Rational(1, 4));
    CHECK(std::abs(c.value() - unit_root(Rational(13, 20))) < 1e-14);
    CHECK(cyclotomic_polynomial(6) == std::vector<Integer>{1, -1, 1});
}

TEST_CASE("rational linear algebra") {
    const RationalMatrix m{{2, 1}, {7, 4}};
    CHECK(m * inverse(m) == RationalMatrix::identity(2));
    const RationalMatrix singular{{1, 2}, {2, 4}};
    CHECK(rank(singular) == 1);
    const RationalMatrix ns = nullspace(singular);
    REQUIRE(ns.cols() == 1);
    CHECK(singular * ns == RationalMatrix(2, 1, Rational(0)));
    CHECK_THROWS(inverse(singular));
}

TEST_CASE("parallel chunks return results in order for any worker count") {
    auto run = [] {
        return parallel_chunks<std::int64_t>(0, 1000, [](std::int64_t lo, std::int64_t hi) {
            std::int64_t s = 0;
            for (std::int64_t i = lo; i < hi; ++i) s = s * 31 + i;
            return s;
        }, 37);
    };
    setenv("LVVMF_THREADS", "1", 1);
    const auto one = run();
    setenv("LVVMF_THREADS", "4", 1);
    const auto four = run();
    unsetenv("LVVMF_THREADS");
    CHECK(one == four);
    CHECK(one.size() == 28);
}
