#pragma once

// Polynomial q-expansions of the components of a T-block:
//   g_j(tau) = sum_t C(tau, t) h_{j-t}(tau)           (binomial basis)
//            = sum_u (log q)^u (2 pi i)^{-u} H_{j,u}   (log-power basis)
// with ordinary q-series h and H. The (2 pi i)^{-u} factors are kept as the
// exponent u and only turned into numbers on evaluation.

#include "lvvmf/polynomial.hpp"
#include "lvvmf/qseries.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lvvmf {

/// B_m(x)_{ij} = (-1)^{i-j} C(x+i-j-1, i-j), lower triangular, 0-based.
PolyMatrix b_matrix(long m);
/// Entries C(x, i-j).
PolyMatrix b_matrix_inverse(long m);

/// sum_k tau^k s_k with exact series s_k sharing one offset. This is the
/// log-power form read with (log q)^k (2 pi i)^{-k} = tau^k.
class TauPolySeries {
public:
    TauPolySeries() = default;
    explicit TauPolySeries(QSeries constant_term);

    /// p(tau) * s.
    static TauPolySeries term(const RationalPolynomial& p, const QSeries& s);

    long tau_degree() const { return static_cast<long>(by_power_.size()) - 1; }
    const std::vector<QSeries>& by_power() const { return by_power_; }
    /// Coefficient series of tau^k; a zero series when k is past the degree.
    QSeries power(long k) const;
    bool is_zero() const;

    TauPolySeries& operator+=(const TauPolySeries& y);
    TauPolySeries& operator-=(const TauPolySeries& y);
    friend TauPolySeries operator+(TauPolySeries x, const TauPolySeries& y) { return x += y; }
    friend TauPolySeries operator-(TauPolySeries x, const TauPolySeries& y) { return x -= y; }
    TauPolySeries times(const RationalPolynomial& p) const;
    friend bool operator==(const TauPolySeries& x, const TauPolySeries& y);

    Complex evaluate(const Complex& tau) const;

private:
    void trim();
    std::vector<QSeries> by_power_;
};

/// A block in the binomial basis: h_0, ..., h_{m-1}.
struct PolyQExpansion {
    std::vector<QSeries> h;
    long m() const { return static_cast<long>(h.size()); }
};

struct ResidualTauDependence : std::domain_error {
    using std::domain_error::domain_error;
};

/// h = B_m(tau) g. Throws ResidualTauDependence if some h_j keeps a power
/// of tau, which means g was not a T-block.
PolyQExpansion h_from_components(const std::vector<TauPolySeries>& g);
/// g_j = sum_t C(tau, t) h_{j-t}.
std::vector<TauPolySeries> components_from_h(const PolyQExpansion& p);

/// A component as a list of (t, series) pairs in either basis:
/// binomial: sum C(tau, t) S_t; log-power: sum (log q)^t (2 pi i)^{-t} S_t.
enum class ExpansionBasis { binomial, logpower };

std::string to_string(ExpansionBasis b);

struct ExpansionTerm {
    long t = 0;
    QSeries series;
};

struct Expansion {
    ExpansionBasis basis = ExpansionBasis::binomial;
    std::vector<std::vector<ExpansionTerm>> components;
};

Expansion to_expansion(const PolyQExpansion& p);
/// Re-expands C(tau, t) in powers of tau (Stirling numbers of the first kind).
Expansion binomial_to_logpower(const Expansion& e);
/// tau^u = sum_t S(u, t) t! C(tau, t) (Stirling numbers of the second kind).
Expansion logpower_to_binomial(const Expansion& e);
Expansion binomial_to_logpower(const PolyQExpansion& p);

/// Reads h back from a binomial-basis expansion; throws std::invalid_argument
/// unless component j is exactly sum_t C(tau, t) h_{j-t}.
PolyQExpansion block_from_expansion(const Expansion& e);

TauPolySeries to_tau_poly(const std::vector<ExpansionTerm>& component, ExpansionBasis basis);
Complex evaluate(const std::vector<ExpansionTerm>& component, ExpansionBasis basis, const Complex& tau);

struct BlockTransformReport {
    double recursion_error = 0;  // max relative error in g_j(tau+1) = lambda (g_j + g_{j-1})
    double periodicity_error = 0;  // max relative error in h_j(tau+1) = lambda h_j(tau)
    bool h_exact = true;  // h_from_components succeeded without residual tau terms
    bool pass = false;
    std::string note;
};

/// Numeric check of the block transformation law at the sample points.
BlockTransformReport verify_block_transform(const std::vector<TauPolySeries>& g, const Rational& mu,
                                            std::span<const Complex> taus, double tolerance = 1e-9);

/// Exact polynomial identities behind the cancellation of tau in h:
/// x C(x+t-1, t-1) = t C(x+t-1, t) for 1 <= t < m, and
/// B_m(x+1)^{-1} = (I + N) B_m(x)^{-1} with N the unit subdiagonal.
bool vanishing_identity_holds(long m, std::string* failure = nullptr);

}  // namespace lvvmf
