#include <doctest.h>

#include "lvvmf/sl2z.hpp"
#include "lvvmf/suites.hpp"
#include "oracles/brute_words.hpp"
#include "oracles/gen.hpp"

#include <numeric>

using namespace lvvmf;

namespace {

EichlerWord word(int sign, std::initializer_list<long> ls) {
    EichlerWord w;
    w.sign = sign;
    for (long l : ls) w.exponents.emplace_back(l);
    return w;
}

}  // namespace

TEST_CASE("decomposition of small matrices") {
    SUBCASE("lower unipotent") {
        const EichlerWord w = decompose_word(make_gamma(1, 0, 1, 1));
        CHECK(w == word(-1, {1, 1, 0}));
        CHECK(eichler_length(w) == 3);
    }
    SUBCASE("S is a single factor") {
        const EichlerWord w = decompose_word(GammaMatrix::S());
        CHECK(w == word(1, {0}));
        CHECK(eichler_length(w) == 1);
    }
    SUBCASE("S T^3 is a single factor") {
        const EichlerWord w = decompose_word(GammaMatrix::ST(3));
        CHECK(w == word(1, {3}));
        CHECK(eichler_length(w) == 2);
    }
    SUBCASE("c = 0 gives a translation") {
        const Decomposition d = eichler_decompose(GammaMatrix::T(5).negated());
        REQUIRE(std::holds_alternative<Translation>(d));
        CHECK(std::get<Translation>(d).sign == -1);
        CHECK(std::get<Translation>(d).b == 5);
    }
    SUBCASE("hand product") {
        // S T^2 * S T^{-3} * S T^1 computed by hand.
        const GammaMatrix g = GammaMatrix::ST(2) * GammaMatrix::ST(-3) * GammaMatrix::ST(1);
        CHECK(g == make_gamma(3, 4, -7, -9));
    }
}

TEST_CASE("make_gamma rejects determinant != 1") {
    CHECK_THROWS_AS(make_gamma(2, 0, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(decompose_word(GammaMatrix::T(2)), std::invalid_argument);
}

TEST_CASE("reconstruct rejects broken sign patterns") {
    CHECK_THROWS_AS(reconstruct(word(1, {1, -2, 3})), std::invalid_argument);
    CHECK_THROWS_AS(reconstruct(word(1, {1, 0})), std::invalid_argument);
    CHECK_THROWS_AS(reconstruct(EichlerWord{}), std::invalid_argument);
    CHECK(sign_pattern_error(word(1, {-4, 2, -1, 0})).empty());
}

TEST_CASE("property: round trip on random matrices including translates") {
    oracle::Gen gen(11);
    for (int i = 0; i < 3000; ++i) {
        const GammaMatrix g = gen.gamma(500, 2000, 40);
        const EichlerWord w = decompose_word(g);
        INFO(to_string(g));
        CHECK(reconstruct(w) == g);
        CHECK(sign_pattern_error(w).empty());
        CHECK(verify_word_bounds(w, g).pass);
    }
}

TEST_CASE("property: sign-valid words decompose to themselves") {
    oracle::Gen gen(23);
    for (int i = 0; i < 3000; ++i) {
        const EichlerWord w = gen.word(8, 30);
        const GammaMatrix g = reconstruct(w);
        if (g.c == 0) continue;
        INFO(to_string(w));
        CHECK(decompose_word(g) == w);
    }
}

TEST_CASE("large entries take the arbitrary precision path") {
    const GammaMatrix g = make_gamma(Integer("1000000000000000000000"), Integer("999999999999999999999"),
                                     Integer("1000000000000000000001"), Integer("1000000000000000000000"));
    const EichlerWord w = decompose_word(g);
    CHECK(reconstruct(w) == g);
    CHECK(verify_word_bounds(w, g).pass);
}

TEST_CASE("enumeration counts coprime pairs") {
    std::int64_t expected = 0;
    for (std::int64_t c = 1; c <= 25; ++c)
        for (std::int64_t d = -25; d <= 25; ++d) expected += std::gcd(c, d) == 1;
    std::int64_t seen = 0;
    for (const auto& g : GammaRange(25, 25)) {
        ++seen;
        CHECK(g.unimodular());
        CHECK(g.a >= 0);
        CHECK(g.a < g.c);
    }
    CHECK(seen == expected);
}

TEST_CASE("range sweep with translates") {
    WordSweepOptions o;
    o.c_max = 40;
    o.d_max = 40;
    o.translate_radius = 3;
    const WordSweep s = word_sweep(o);
    CHECK(s.pass());
    CHECK(s.checked > 0);
    // The dichotomy can only fail on translates with c = 1 and a <= -1.
    CHECK(s.translate_dichotomy_violations > 0);
    for (const auto& g : GammaRange(40, 40)) {
        for (long k = -3; k <= 3; ++k) {
            const GammaMatrix h = GammaMatrix::T(k) * g;
            const TailDichotomy t = check_tail_dichotomy(decompose_word(h), h);
            if (!t.holds) {
                CHECK(h.c == 1);
                CHECK(h.a <= -1);
            }
        }
    }
}

TEST_CASE("brute force finds exactly one word") {
    for (const auto& g : GammaRange(9, 9)) {
        const EichlerWord w = decompose_word(g);
        const oracle::BruteResult r = oracle::brute_force_words(g, eichler_length(w));
        INFO(to_string(g));
        REQUIRE(r.matches == 1);
        CHECK(r.words.front() == w);
    }
}

TEST_CASE("Lame ratio along Fibonacci numbers") {
    // c = 13, d = 8: continued fraction of 8/13 is [0; 1, 1, 1, 1, 2].
    const GammaMatrix g = canonical_gamma(13, 8);
    const EichlerWord w = decompose_word(g);
    CHECK(lame_ratio(w, g) == doctest::Approx(eichler_length(w) / (std::log(13.0) + 1)));
    const LameSweep s = lame_sweep(1000, 200);
    CHECK(s.exceedances == 0);
    CHECK(s.fibonacci_sup > 3.5);
    CHECK(s.fibonacci_sup < 4.2);
}
