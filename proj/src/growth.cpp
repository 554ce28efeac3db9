#include "lvvmf/growth.hpp"

#include "lvvmf/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace lvvmf {

namespace {

QSeries power_of(const QSeries& f, long r, long order) {
    QSeries out = QSeries::constant(1, order);
    for (long i = 0; i < r; ++i) out = (out * f).truncated(order);
    return out;
}

long parse_long(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw std::invalid_argument("bad " + what + " '" + s + "'");
    return v;
}

AtInfinity worse(AtInfinity x, AtInfinity y) { return static_cast<int>(x) > static_cast<int>(y) ? x : y; }

}  // namespace

ClassicalForm classical_form(const std::string& name, long order) {
    if (order < 1) throw std::invalid_argument("series order must be >= 1");
    ClassicalForm f{name, 0, QSeries::constant(1, order)};
    std::stringstream in(name);
    std::string factor;
    bool any = false;
    while (std::getline(in, factor, '_')) {
        any = true;
        if (factor == "one") continue;
        if (factor.rfind("delta", 0) == 0) {
            const long r = factor.size() == 5 ? 1 : parse_long(factor.substr(5), "delta power");
            if (r < 1) throw std::invalid_argument("delta power must be >= 1");
            f.series = (f.series * power_of(delta_series(order), r, order)).truncated(order);
            f.weight += 12 * r;
        } else if (factor.size() > 1 && (factor[0] == 'e' || factor[0] == 'E')) {
            const long k = parse_long(factor.substr(1), "Eisenstein weight");
            if (k < 4 || k % 2 != 0) throw std::invalid_argument("level-one Eisenstein series need even k >= 4");
            f.series = (f.series * eisenstein_series(k, order)).truncated(order);
            f.weight += k;
        } else {
            throw std::invalid_argument("unknown form factor '" + factor + "'");
        }
    }
    if (!any) throw std::invalid_argument("empty form name");
    return f;
}

namespace {

struct ComponentValues {
    std::vector<std::vector<Complex>> value;  // [point][component]
    std::vector<double> tail;                 // [point], max over components
};

ComponentValues evaluate_with_tail(const LVVMF& f, std::span<const Complex> taus) {
    const std::size_t p = static_cast<std::size_t>(f.rep.p);
    const ComplexMatrix q_inv = to_complex(inverse(f.jordan.basis_change));
    ComponentValues out;
    out.value.assign(taus.size(), std::vector<Complex>(p));
    out.tail.assign(taus.size(), 0.0);

    std::vector<std::vector<Complex>> g(taus.size(), std::vector<Complex>(p));
    std::vector<double> g_tail(taus.size(), 0.0);
    std::size_t offset = 0;
    for (const auto& block : f.blocks) {
        const long m = block.m();
        std::vector<std::vector<Evaluation>> h(m);
        for (long t = 0; t < m; ++t) h[t] = block.h[t].evaluate(taus);
        std::vector<RationalPolynomial> binom(m);
        for (long t = 0; t < m; ++t) binom[t] = RationalPolynomial::binomial(0, t);
        for (std::size_t i = 0; i < taus.size(); ++i) {
            for (long j = 0; j < m; ++j) {
                Complex acc = 0;
                double tail = 0;
                for (long t = 0; t <= j; ++t) {
                    const Complex c = binom[t](taus[i]);
                    acc += c * h[j - t][i].value;
                    tail += std::abs(c) * h[j - t][i].tail_estimate;
                }
                g[i][offset + j] = acc;
                g_tail[i] = std::max(g_tail[i], tail);
            }
        }
        offset += static_cast<std::size_t>(m);
    }
    double q_norm = 0;
    for (std::size_t r = 0; r < p; ++r) {
        double row = 0;
        for (std::size_t c = 0; c < p; ++c) row += std::abs(q_inv(r, c));
        q_norm = std::max(q_norm, row);
    }
    for (std::size_t i = 0; i < taus.size(); ++i) {
        for (std::size_t r = 0; r < p; ++r) {
            Complex acc = 0;
            for (std::size_t c = 0; c < p; ++c) acc += q_inv(r, c) * g[i][c];
            out.value[i][r] = acc;
        }
        out.tail[i] = q_norm * g_tail[i];
    }
    return out;
}

void check_level_one(const ClassicalForm& f) {
    const QSeries& s = f.series;
    if (s.mu() != 0 || frac(s.phase()) != 0)
        throw std::invalid_argument("multiplier has a nontrivial character at infinity; not level one");
    if (s.n_min() < 0 && !s.is_zero() && s.valuation() < 0)
        throw std::invalid_argument("multiplier has negative q-exponents; only holomorphic level-one forms are supported");
    if (f.weight < 0 || f.weight % 2 != 0 || f.weight == 2)
        throw std::invalid_argument("weight " + std::to_string(f.weight) + " carries no level-one form");
    if (s.is_zero()) return;
    if (s.order() < 12) throw std::invalid_argument("multiplier needs order >= 12 for the level-one check");
    for (const Complex tau : {Complex(0, 1.1), Complex(0.2, 1.2), Complex(-0.35, 1.05)}) {
        const Complex lhs = s.evaluate(-1.0 / tau).value;
        const Complex rhs = std::pow(tau, static_cast<double>(f.weight)) * s.evaluate(tau).value;
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
        if (std::abs(lhs - rhs) / scale > 1e-8)
            throw std::invalid_argument("multiplier fails f(-1/tau) = tau^w f(tau); not a level-one form of weight " +
                                        std::to_string(f.weight));
    }
}

}  // namespace

std::vector<std::vector<Complex>> LVVMF::evaluate(std::span<const Complex> taus) const {
    return evaluate_with_tail(*this, taus).value;
}

std::vector<Complex> LVVMF::evaluate(const Complex& tau) const {
    return evaluate(std::span<const Complex>(&tau, 1)).front();
}

LVVMF build_sym_example(long m, const ClassicalForm& multiplier) {
    if (m < 0) throw std::invalid_argument("m must be >= 0");
    check_level_one(multiplier);
    LVVMF f;
    f.m = m;
    f.k = multiplier.weight - m;
    f.multiplier = multiplier;
    f.rep = sym_power_rep(m);
    f.jordan = canonicalize_unipotent(*f.rep.exactT);

    const QSeries& s = multiplier.series;
    const std::size_t p = static_cast<std::size_t>(m + 1);
    std::vector<RationalPolynomial> tau_power(p);
    for (std::size_t i = 0; i < p; ++i) {
        RationalPolynomial x = 1;
        for (std::size_t e = 0; e < p - 1 - i; ++e) x *= RationalPolynomial::x();
        tau_power[i] = x;
    }
    // G = Q F block by block, then h = B(tau) G.
    std::size_t offset = 0;
    for (const auto& b : f.jordan.spec.blocks) {
        std::vector<TauPolySeries> g;
        for (long j = 0; j < b.m; ++j) {
            RationalPolynomial poly;
            for (std::size_t i = 0; i < p; ++i) poly += tau_power[i] * RationalPolynomial(f.jordan.basis_change(offset + j, i));
            g.push_back(TauPolySeries::term(poly, s));
        }
        f.blocks.push_back(h_from_components(g));
        offset += static_cast<std::size_t>(b.m);
    }
    f.kind = AtInfinity::cuspidal;
    for (const auto& b : f.blocks)
        for (const auto& h : b.h) f.kind = worse(f.kind, h.classify());
    return f;
}

LVVMF named_example(const std::string& name, long order) {
    const auto dash = name.find('-');
    if (name.rfind("sym", 0) != 0 || dash == std::string::npos)
        throw std::invalid_argument("example names look like sym1-delta, got '" + name + "'");
    const long m = parse_long(name.substr(3, dash - 3), "symmetric power");
    return build_sym_example(m, classical_form(name.substr(dash + 1), order));
}

Complex mobius(const GammaMatrix& g, const Complex& tau) {
    return (g.a.get_d() * tau + g.b.get_d()) / (g.c.get_d() * tau + g.d.get_d());
}

Reduction reduce_to_fundamental_domain(const Complex& tau) {
    if (!(tau.imag() > 0)) throw std::domain_error("reduction needs Im(tau) > 0");
    Reduction r{tau, GammaMatrix::identity()};
    for (int step = 0; step < 100000; ++step) {
        const double n = std::nearbyint(r.z.real());
        if (n != 0) {
            r.z -= n;
            r.gamma = GammaMatrix::T(Integer(static_cast<long>(-n))) * r.gamma;
        }
        if (std::norm(r.z) < 1 - 1e-13) {
            r.z = -1.0 / r.z;
            r.gamma = GammaMatrix::S() * r.gamma;
        } else {
            return r;
        }
    }
    throw std::runtime_error("fundamental domain reduction did not terminate");
}

SlashSample slash_error(const LVVMF& f, const RepEvaluator& ev, const GammaMatrix& g, const Complex& tau) {
    ComplexMatrix rho;
    const Decomposition dec = eichler_decompose(g);
    if (const auto* t = std::get_if<Translation>(&dec)) {
        rho = ev.rhoT_power(t->b);
        if (t->sign < 0) rho = ev.rep().rhoS * ev.rep().rhoS * rho;
    } else {
        rho = ev.rho_of(std::get<EichlerWord>(dec));
    }
    const Complex image = mobius(g, tau);
    const std::vector<Complex> pts{tau, image};
    const ComponentValues v = evaluate_with_tail(f, pts);
    const Complex j = g.c.get_d() * tau + g.d.get_d();
    const Complex factor = std::pow(j, -static_cast<double>(f.k));

    SlashSample s{g, tau, 0, 0};
    double image_norm = 0;
    for (const auto& z : v.value[1]) image_norm = std::max(image_norm, std::abs(z));
    const std::size_t p = v.value[0].size();
    double diff = 0;
    for (std::size_t r = 0; r < p; ++r) {
        Complex lhs = 0;
        for (std::size_t c = 0; c < p; ++c) lhs += rho(r, c) * v.value[0][c];
        diff = std::max(diff, std::abs(lhs - factor * v.value[1][r]));
    }
    s.error = diff / (1 + image_norm);
    s.tail = (static_cast<double>(p) * max_norm(rho) * v.tail[0] + std::abs(factor) * v.tail[1]) / (1 + image_norm);
    return s;
}

std::vector<Complex> slash_samples(const GammaMatrix& g, long count, std::uint64_t seed, double min_image_height) {
    std::seed_seq seq{static_cast<std::uint64_t>(seed), static_cast<std::uint64_t>(g.a.get_si()),
                      static_cast<std::uint64_t>(g.b.get_si()), static_cast<std::uint64_t>(g.c.get_si()),
                      static_cast<std::uint64_t>(g.d.get_si())};
    std::mt19937_64 rng(seq);
    const double c = std::abs(g.c.get_d());
    double x_lo = -0.5, x_hi = 0.5, y_hi = 1.5;
    if (c > 0) {
        const double center = -g.d.get_d() / g.c.get_d();
        x_lo = center - 0.5 / c;
        x_hi = center + 0.5 / c;
        y_hi = std::max(0.3, std::min(1.5, 1.0 / (c * c * min_image_height)));
    }
    std::uniform_real_distribution<double> ux(x_lo, x_hi), uy(0.3, y_hi);
    std::vector<Complex> out;
    for (long attempt = 0; static_cast<long>(out.size()) < count; ++attempt) {
        if (attempt > 1000000) throw std::runtime_error("no sample points satisfy the height constraints for " + to_string(g));
        const Complex tau(ux(rng), uy(rng));
        if (mobius(g, tau).imag() >= min_image_height) out.push_back(tau);
    }
    return out;
}

SlashReport slash_check(const LVVMF& f, std::int64_t c_max, long samples, std::uint64_t seed, double tolerance) {
    std::vector<GammaMatrix> gammas{GammaMatrix::T(1), GammaMatrix::T(-1), GammaMatrix::T(1).negated()};
    for (const auto& g : GammaRange(c_max, c_max)) {
        gammas.push_back(g);
        gammas.push_back(g.negated());
    }
    const RepEvaluator ev(f.rep);
    SlashReport r;
    r.tolerance = tolerance;
    r.min_image_height = 0.12;
    for (const auto& g : gammas) {
        for (const auto& tau : slash_samples(g, samples, seed, r.min_image_height)) {
            const SlashSample s = slash_error(f, ev, g, tau);
            ++r.checked;
            r.max_tail = std::max(r.max_tail, s.tail);
            if (s.error >= r.max_error) {
                r.max_error = s.error;
                r.worst = s;
            }
        }
    }
    r.inconclusive = r.max_tail > tolerance;
    r.pass = !r.inconclusive && r.max_error < tolerance;
    return r;
}

DomainSup fundamental_domain_sup(const LVVMF& f, double sigma, double delta, const DomainGrid& grid) {
    if (grid.x_points < 2 || grid.height_cap <= 1 || grid.log_step <= 0)
        throw std::invalid_argument("grid needs >= 2 x points, a height cap above 1 and a positive log step");
    std::vector<Complex> taus;
    const long j_lo = static_cast<long>(std::floor(std::log(std::sqrt(3.0) / 2) / grid.log_step));
    const long j_hi = static_cast<long>(std::floor(std::log(grid.height_cap) / grid.log_step));
    for (long ix = 0; ix < grid.x_points; ++ix) {
        const double x = -0.5 + static_cast<double>(ix) / static_cast<double>(grid.x_points - 1);
        const double arc = std::sqrt(1 - x * x);
        taus.emplace_back(x, arc);
        for (long j = j_lo; j <= j_hi; ++j) {
            const double y = std::exp(static_cast<double>(j) * grid.log_step);
            if (y > arc) taus.emplace_back(x, y);
        }
    }
    DomainSup out;
    out.per_component.assign(static_cast<std::size_t>(f.rep.p), 0.0);
    out.points = static_cast<std::int64_t>(taus.size());
    const auto values = f.evaluate(taus);
    const double exponent = sigma * (1 - delta);
    for (std::size_t i = 0; i < taus.size(); ++i) {
        const double w = std::pow(taus[i].imag(), exponent);
        for (std::size_t l = 0; l < values[i].size(); ++l) {
            const double g = w * std::abs(values[i][l]);
            out.per_component[l] = std::max(out.per_component[l], g);
            if (g > out.sup) {
                out.sup = g;
                out.argmax = taus[i];
            }
        }
    }
    return out;
}

GrowthReport coefficient_growth(const LVVMF& f, const FittedConstants& k, long n_min, long n_max) {
    if (n_min < 1 || n_max <= n_min) throw std::invalid_argument("growth window needs 1 <= n_min < n_max");
    GrowthReport r;
    r.n_min = n_min;
    r.n_max = n_max;
    r.kind = f.kind;
    r.alpha = k.alpha;
    r.sigma = (static_cast<double>(f.k) + k.alpha) / 2;
    r.bound = f.kind == AtInfinity::cuspidal ? r.sigma : static_cast<double>(f.k) + k.alpha;
    for (std::size_t b = 0; b < f.blocks.size(); ++b) {
        for (std::size_t t = 0; t < f.blocks[b].h.size(); ++t) {
            const QSeries& h = f.blocks[b].h[t];
            ComponentGrowth c;
            c.block = static_cast<long>(b);
            c.index = static_cast<long>(t);
            if (h.is_zero()) {
                c.skipped = true;
                c.note = "zero series";
            } else if (h.order() < n_max) {
                c.skipped = true;
                c.note = "series order " + std::to_string(h.order()) + " is below the window";
            } else {
                std::vector<double> xs, ys;
                for (long n = n_min; n <= n_max; ++n) {
                    const Rational a = h.coeff(n);
                    if (a == 0) continue;
                    xs.push_back(std::log(static_cast<double>(n)));
                    ys.push_back(std::log(std::abs(a.get_d())));
                }
                c.used = static_cast<std::int64_t>(xs.size());
                if (xs.size() < 2) {
                    c.skipped = true;
                    c.note = "fewer than two nonzero coefficients in the window";
                } else {
                    const kernels::Moments mo = kernels::moments(xs, ys);
                    c.beta = (mo.n * mo.sxy - mo.sx * mo.sy) / (mo.n * mo.sxx - mo.sx * mo.sx);
                    r.beta = r.empty ? c.beta : std::max(r.beta, c.beta);
                    r.empty = false;
                }
            }
            r.components.push_back(c);
        }
    }
    r.delta = r.bound - r.beta;
    return r;
}

LNuCase l_nu_case(const Complex& tau) {
    LNuCase c;
    c.tau = tau;
    c.transport = reduce_to_fundamental_domain(tau).gamma.inverse();
    if (c.transport.c == 0) return c;
    const EichlerWord w = decompose_word(c.transport);
    c.a_over_c = std::abs(c.transport.a.get_d() / c.transport.c.get_d());
    c.trailing_zero = !w.single_factor() && w.last() == 0;
    if (c.trailing_zero) {
        c.l_nu = w.exponents[w.nu()];
        c.ok = c.a_over_c < 2 && abs(c.l_nu) == 1;
    }
    return c;
}

LNuReport l_nu_unit_check(std::span<const Complex> taus) {
    LNuReport r;
    for (const auto& tau : taus) {
        LNuCase c = l_nu_case(tau);
        ++r.points;
        if (c.trailing_zero) ++r.trailing_zero_cases;
        if (!c.ok) ++r.violations;
        r.cases.push_back(std::move(c));
    }
    return r;
}

std::vector<Complex> l_nu_samples(long count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(-0.5, 0.5);
    std::uniform_int_distribution<int> un(2, 50);
    std::vector<Complex> out;
    for (long i = 0; i < count; ++i) {
        const double x = ux(rng);
        out.emplace_back(x, 1.0 / un(rng));
    }
    return out;
}

}  // namespace lvvmf
