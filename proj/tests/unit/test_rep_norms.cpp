#include <doctest.h>

#include "lvvmf/rep_norms.hpp"
#include "lvvmf/suites.hpp"
#include "oracles/gen.hpp"
#include "oracles/sym_oracle.hpp"

#include <sstream>

using namespace lvvmf;

TEST_CASE("symmetric powers match the closed form") {
    oracle::Gen gen(17);
    for (int trial = 0; trial < 200; ++trial) {
        const GammaMatrix g = gen.gamma(60, 60, 5);
        const long m = static_cast<long>(gen.range(0, 6));
        INFO(to_string(g), " m=", m);
        CHECK(sym_power_matrix(g, m) == oracle::sym_closed_form(g, m));
    }
    CHECK(sym_power_matrix(make_gamma(2, 1, 1, 1), 1) == IntegerMatrix{{2, 1}, {1, 1}});
}

TEST_CASE("evaluation on words reproduces rho(gamma) and its inverse") {
    oracle::Gen gen(29);
    for (long m = 1; m <= 4; ++m) {
        const RepEvaluator ev(sym_power_rep(m));
        REQUIRE(ev.exact());
        for (int trial = 0; trial < 100; ++trial) {
            const GammaMatrix g = gen.gamma(300, 300, 100);
            const EichlerWord w = decompose_word(g);
            INFO(to_string(g));
            CHECK(*ev.rho_of_exact(w) == sym_power_matrix(g, m));
            CHECK(*ev.rho_of_inverse_exact(w) == sym_power_matrix(g.inverse(), m));
            const ComplexMatrix num = ev.rho_of(w);
            const ComplexMatrix ref = to_complex(sym_power_matrix(g, m));
            double err = 0;
            for (std::size_t i = 0; i < num.data().size(); ++i)
                err = std::max(err, std::abs(num.data()[i] - ref.data()[i]));
            CHECK(err <= 1e-9 * (1 + max_norm(ref)));
        }
    }
    const RepEvaluator ev(sym_power_rep(2));
    CHECK(*ev.rhoT_power_exact(Integer(100000)) == sym_power_matrix(GammaMatrix::T(100000), 2));
}

TEST_CASE("validation of the defining relations") {
    for (long m = 0; m <= 5; ++m) {
        const ValidationReport r = validate(sym_power_rep(m));
        CHECK(r.pass);
        CHECK(r.exact);
    }
    Representation broken = sym_power_rep(2);
    broken.exactS->operator()(0, 0) = 1;
    broken.rhoS(0, 0) = 1;
    CHECK_FALSE(validate(broken).pass);

    // Character with rho(T) = e(1/12), rho(S) = -i.
    JordanSpec chi;
    chi.blocks = {JordanBlock(1, Rational(1, 12))};
    const Complex t = unit_root(Rational(1, 12));
    const Representation c = make_representation("eta2", ComplexMatrix{{Complex(0, -1)}}, ComplexMatrix{{t}}, chi,
                                                  ComplexMatrix::identity(1));
    const ValidationReport rc = validate(c);
    CHECK(rc.pass);
    CHECK_FALSE(rc.exact);

    const Representation missing = make_representation("bare", ComplexMatrix{{Complex(0, -1)}}, ComplexMatrix{{t}});
    CHECK_FALSE(validate(missing).pass);
}

TEST_CASE("bound chain by hand for (1 0; 1 1)") {
    // -(S T)(S T)(S T^0): nu = 1, trailing zero, p = 2 so the bound is 2^3.
    const RepEvaluator ev(sym_power_rep(1));
    const EichlerWord w = decompose_word(make_gamma(1, 0, 1, 1));
    const BoundChain b = bound_chain(ev, w);
    CHECK(b.trailing_zero);
    CHECK(b.lhs == 1);
    CHECK(b.rhs == 8);
    CHECK(b.pass);
}

TEST_CASE("bound chain holds on a sweep") {
    for (long m = 0; m <= 4; ++m) {
        const RepEvaluator ev(sym_power_rep(m));
        for (const auto& g : GammaRange(30, 30)) {
            const EichlerWord w = decompose_word(g);
            CHECK(bound_chain(ev, w).pass);
            CHECK(bound_chain(ev, w, true).pass);
            const EichlerWord wn = decompose_word(g.negated());
            CHECK(bound_chain(ev, wn).pass);
        }
    }
}

TEST_CASE("fitted exponent for the defining representation") {
    const RepEvaluator ev(sym_power_rep(1));
    const FittedConstants k = fit_polynomial_exponent(ev, 60);
    CHECK(k.K4 > 0.3);
    CHECK(k.K4 < 0.7);
    CHECK(k.K3 >= 1);
    CHECK(k.alpha == doctest::Approx(2 * k.K4));
    CHECK(k.validation_violations == 0);
    CHECK(k.training > 0);
    CHECK(k.validation > 0);

    const FittedConstants t = fit_polynomial_exponent(RepEvaluator(trivial_rep()), 20);
    CHECK(t.degenerate);
    CHECK(t.K4 == 0);
}

TEST_CASE("representation files round trip") {
    for (long m : {0L, 1L, 3L}) {
        std::stringstream io;
        write_representation(io, sym_power_rep(m));
        const Representation r = read_representation(io);
        CHECK(r.p == m + 1);
        REQUIRE(r.exactS.has_value());
        CHECK(*r.exactS == sym_power_matrix(GammaMatrix::S(), m));
        CHECK(*r.exactT == sym_power_matrix(GammaMatrix::T(), m));
        CHECK(validate(r).pass);
    }
    std::stringstream character(R"({"name":"eta2","p":1,"rhoS":[["0","-1"]],"rhoT":[[0.8660254037844387,0.5]],
        "jordan":{"blocks":[{"m":1,"mu":"1/12"}],"basis_change":[1]}})");
    CHECK(validate(read_representation(character)).pass);

    std::stringstream bad_json("{\"p\": 2, \"rhoS\": [1, 2");
    CHECK_THROWS(read_representation(bad_json));
    std::stringstream bad_shape(R"({"p":2,"rhoS":[1,2,3],"rhoT":[1,1,0,1]})");
    CHECK_THROWS(read_representation(bad_shape));
}
