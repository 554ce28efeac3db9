#include "lvvmf/log_expansion.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace lvvmf {

PolyMatrix b_matrix(long m) {
    if (m < 1) throw std::invalid_argument("b_matrix needs m >= 1");
    PolyMatrix b(m, m, RationalPolynomial());
    for (long i = 0; i < m; ++i)
        for (long j = 0; j <= i; ++j) {
            const long k = i - j;
            const RationalPolynomial c = RationalPolynomial::binomial(Integer(k - 1), k);
            b(i, j) = k % 2 == 0 ? c : -c;
        }
    return b;
}

PolyMatrix b_matrix_inverse(long m) {
    if (m < 1) throw std::invalid_argument("b_matrix_inverse needs m >= 1");
    PolyMatrix b(m, m, RationalPolynomial());
    for (long i = 0; i < m; ++i)
        for (long j = 0; j <= i; ++j) b(i, j) = RationalPolynomial::binomial(Integer(0), i - j);
    return b;
}

TauPolySeries::TauPolySeries(QSeries constant_term) { by_power_.push_back(std::move(constant_term)); }

TauPolySeries TauPolySeries::term(const RationalPolynomial& p, const QSeries& s) {
    TauPolySeries r;
    if (p.is_zero()) {
        r.by_power_.push_back(s.scaled(0));
        return r;
    }
    for (long k = 0; k <= p.degree(); ++k) r.by_power_.push_back(s.scaled(p.coeff(k)));
    r.trim();
    return r;
}

void TauPolySeries::trim() {
    while (by_power_.size() > 1 && by_power_.back().is_zero()) by_power_.pop_back();
}

QSeries TauPolySeries::power(long k) const {
    if (by_power_.empty()) throw std::logic_error("empty TauPolySeries");
    if (k >= 0 && k < static_cast<long>(by_power_.size())) return by_power_[k];
    return by_power_.front().scaled(0);
}

bool TauPolySeries::is_zero() const {
    return std::all_of(by_power_.begin(), by_power_.end(), [](const QSeries& s) { return s.is_zero(); });
}

TauPolySeries& TauPolySeries::operator+=(const TauPolySeries& y) {
    const std::size_t common = std::min(by_power_.size(), y.by_power_.size());
    for (std::size_t k = 0; k < common; ++k) by_power_[k] += y.by_power_[k];
    for (std::size_t k = common; k < y.by_power_.size(); ++k) by_power_.push_back(y.by_power_[k]);
    trim();
    return *this;
}

TauPolySeries& TauPolySeries::operator-=(const TauPolySeries& y) { return *this += y.times(RationalPolynomial(-1)); }

TauPolySeries TauPolySeries::times(const RationalPolynomial& p) const {
    TauPolySeries r;
    for (long i = 0; i <= p.degree(); ++i)
        for (std::size_t k = 0; k < by_power_.size(); ++k) {
            TauPolySeries piece;
            piece.by_power_.assign(i + k, by_power_[k].scaled(0));
            piece.by_power_.push_back(by_power_[k].scaled(p.coeff(i)));
            if (r.by_power_.empty()) r = std::move(piece);
            else r += piece;
        }
    if (r.by_power_.empty()) r.by_power_.push_back(power(0).scaled(0));
    r.trim();
    return r;
}

bool operator==(const TauPolySeries& x, const TauPolySeries& y) {
    const long top = std::max(x.tau_degree(), y.tau_degree());
    for (long k = 0; k <= top; ++k) {
        const QSeries a = x.power(k), b = y.power(k);
        if (a.is_zero() && b.is_zero()) continue;
        if (!(a == b)) return false;
    }
    return true;
}

Complex TauPolySeries::evaluate(const Complex& tau) const {
    Complex r(0.0, 0.0);
    for (std::size_t k = by_power_.size(); k-- > 0;) r = r * tau + by_power_[k].evaluate(tau).value;
    return r;
}

PolyQExpansion h_from_components(const std::vector<TauPolySeries>& g) {
    const long m = static_cast<long>(g.size());
    if (m == 0) throw std::invalid_argument("h_from_components needs at least one component");
    const PolyMatrix b = b_matrix(m);
    PolyQExpansion out;
    for (long j = 0; j < m; ++j) {
        TauPolySeries hj = g[j];
        for (long t = 1; t <= j; ++t) hj += g[j - t].times(b(j, j - t));
        if (hj.tau_degree() > 0)
            throw ResidualTauDependence("h_" + std::to_string(j) + " keeps a tau^" + std::to_string(hj.tau_degree()) +
                                        " term; the components do not form a T-block");
        out.h.push_back(hj.power(0));
    }
    return out;
}

std::vector<TauPolySeries> components_from_h(const PolyQExpansion& p) {
    std::vector<TauPolySeries> g;
    for (long j = 0; j < p.m(); ++j) {
        TauPolySeries gj(p.h[j]);
        for (long t = 1; t <= j; ++t) gj += TauPolySeries::term(RationalPolynomial::binomial(0, t), p.h[j - t]);
        g.push_back(std::move(gj));
    }
    return g;
}

std::string to_string(ExpansionBasis b) { return b == ExpansionBasis::binomial ? "binomial" : "logpower"; }

Expansion to_expansion(const PolyQExpansion& p) {
    Expansion e;
    e.basis = ExpansionBasis::binomial;
    for (long j = 0; j < p.m(); ++j) {
        std::vector<ExpansionTerm> comp;
        for (long t = 0; t <= j; ++t)
            if (t == 0 || !p.h[j - t].is_zero()) comp.push_back({t, p.h[j - t]});
        e.components.push_back(std::move(comp));
    }
    return e;
}

TauPolySeries to_tau_poly(const std::vector<ExpansionTerm>& component, ExpansionBasis basis) {
    if (component.empty()) throw std::invalid_argument("empty component");
    TauPolySeries r;
    bool first = true;
    for (const auto& term : component) {
        if (term.t < 0) throw std::invalid_argument("negative basis index");
        RationalPolynomial p;
        if (basis == ExpansionBasis::binomial) {
            p = RationalPolynomial::binomial(0, term.t);
        } else {
            std::vector<Rational> c(static_cast<std::size_t>(term.t) + 1, Rational(0));
            c.back() = 1;
            p = RationalPolynomial(std::move(c));
        }
        TauPolySeries piece = TauPolySeries::term(p, term.series);
        if (first) r = std::move(piece);
        else r += piece;
        first = false;
    }
    return r;
}

namespace {

std::vector<ExpansionTerm> nonzero_terms(const std::vector<QSeries>& by_index) {
    std::vector<ExpansionTerm> out;
    for (std::size_t t = 0; t < by_index.size(); ++t)
        if (t == 0 || !by_index[t].is_zero()) out.push_back({static_cast<long>(t), by_index[t]});
    return out;
}

// Stirling numbers of the second kind S(u, t), 0 <= t <= u <= top.
std::vector<std::vector<Integer>> stirling2(long top) {
    std::vector<std::vector<Integer>> s(top + 1, std::vector<Integer>(top + 1, Integer(0)));
    s[0][0] = 1;
    for (long u = 1; u <= top; ++u)
        for (long t = 1; t <= u; ++t) s[u][t] = s[u - 1][t - 1] + t * s[u - 1][t];
    return s;
}

std::vector<ExpansionTerm> binomial_terms(const TauPolySeries& p) {
    const long top = p.tau_degree();
    const auto s2 = stirling2(top);
    std::vector<QSeries> by_t;
    Integer fact = 1;
    for (long t = 0; t <= top; ++t) {
        if (t > 0) fact *= t;
        QSeries acc = p.power(0).scaled(0);
        for (long u = t; u <= top; ++u)
            if (s2[u][t] != 0) acc += p.power(u).scaled(Rational(s2[u][t] * fact));
        by_t.push_back(std::move(acc));
    }
    return nonzero_terms(by_t);
}

}  // namespace

Expansion binomial_to_logpower(const Expansion& e) {
    if (e.basis != ExpansionBasis::binomial) throw std::invalid_argument("expansion is not in the binomial basis");
    Expansion out;
    out.basis = ExpansionBasis::logpower;
    for (const auto& comp : e.components) out.components.push_back(nonzero_terms(to_tau_poly(comp, e.basis).by_power()));
    return out;
}

Expansion logpower_to_binomial(const Expansion& e) {
    if (e.basis != ExpansionBasis::logpower) throw std::invalid_argument("expansion is not in the log-power basis");
    Expansion out;
    out.basis = ExpansionBasis::binomial;
    for (const auto& comp : e.components) out.components.push_back(binomial_terms(to_tau_poly(comp, e.basis)));
    return out;
}

Expansion binomial_to_logpower(const PolyQExpansion& p) { return binomial_to_logpower(to_expansion(p)); }

PolyQExpansion block_from_expansion(const Expansion& e) {
    if (e.basis != ExpansionBasis::binomial) throw std::invalid_argument("expansion is not in the binomial basis");
    PolyQExpansion p;
    std::vector<TauPolySeries> given;
    for (const auto& comp : e.components) {
        given.push_back(to_tau_poly(comp, e.basis));
        p.h.push_back(binomial_terms(given.back()).front().series);
    }
    const auto rebuilt = components_from_h(p);
    for (std::size_t j = 0; j < given.size(); ++j)
        if (!(rebuilt[j] == given[j]))
            throw std::invalid_argument("component " + std::to_string(j) + " is not sum_t C(tau,t) h_{j-t}");
    return p;
}

Complex evaluate(const std::vector<ExpansionTerm>& component, ExpansionBasis basis, const Complex& tau) {
    Complex r(0.0, 0.0);
    for (const auto& term : component) {
        Complex factor;
        if (basis == ExpansionBasis::binomial) {
            factor = RationalPolynomial::binomial(0, term.t)(tau);
        } else {
            // (log q)^t (2 pi i)^{-t} with log q = 2 pi i tau.
            const Complex two_pi_i(0.0, 2.0 * kPi);
            factor = std::pow(two_pi_i * tau, static_cast<double>(term.t)) / std::pow(two_pi_i, static_cast<double>(term.t));
        }
        r += factor * term.series.evaluate(tau).value;
    }
    return r;
}

namespace {

double rel_error(const Complex& lhs, const Complex& rhs) {
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    return std::abs(lhs - rhs) / scale;
}

}  // namespace

BlockTransformReport verify_block_transform(const std::vector<TauPolySeries>& g, const Rational& mu,
                                            std::span<const Complex> taus, double tolerance) {
    BlockTransformReport r;
    const Complex lam = unit_root(mu);
    PolyQExpansion h;
    try {
        h = h_from_components(g);
    } catch (const ResidualTauDependence& e) {
        r.h_exact = false;
        r.note = e.what();
    }
    for (const Complex& tau : taus) {
        const Complex tau1 = tau + 1.0;
        Complex prev(0.0, 0.0);
        for (std::size_t j = 0; j < g.size(); ++j) {
            const Complex now = g[j].evaluate(tau);
            r.recursion_error = std::max(r.recursion_error, rel_error(g[j].evaluate(tau1), lam * (now + prev)));
            prev = now;
        }
        if (r.h_exact)
            for (const auto& hj : h.h)
                r.periodicity_error =
                    std::max(r.periodicity_error, rel_error(hj.evaluate(tau1).value, lam * hj.evaluate(tau).value));
    }
    r.pass = r.h_exact && r.recursion_error < tolerance && r.periodicity_error < tolerance;
    return r;
}

bool vanishing_identity_holds(long m, std::string* failure) {
    auto fail = [&](const std::string& what) {
        if (failure) *failure = what;
        return false;
    };
    const RationalPolynomial x = RationalPolynomial::x();
    for (long t = 1; t < m; ++t) {
        const RationalPolynomial lhs = x * RationalPolynomial::binomial(Integer(t - 1), t - 1);
        const RationalPolynomial rhs = RationalPolynomial::binomial(Integer(t - 1), t) * RationalPolynomial(Rational(t));
        if (!(lhs == rhs)) return fail("x C(x+t-1,t-1) != t C(x+t-1,t) at t = " + std::to_string(t));
    }
    const PolyMatrix inv = b_matrix_inverse(m);
    PolyMatrix inv_shifted(m, m, RationalPolynomial());
    for (long i = 0; i < m; ++i)
        for (long j = 0; j < m; ++j) inv_shifted(i, j) = inv(i, j).shifted(1);
    PolyMatrix step = PolyMatrix::identity(m);
    for (long i = 0; i + 1 < m; ++i) step(i + 1, i) = RationalPolynomial(1);
    if (!(inv_shifted == step * inv)) return fail("B_m(x+1)^{-1} != (I+N) B_m(x)^{-1}");
    if (!(b_matrix(m) * inv == PolyMatrix::identity(m))) return fail("B_m(x) B_m(x)^{-1} != I");
    return true;
}

}  // namespace lvvmf
