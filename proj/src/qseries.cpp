#include "lvvmf/qseries.hpp"

#include "lvvmf/kernels.hpp"
#include "lvvmf/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lvvmf {

std::string to_string(AtInfinity kind) {
    switch (kind) {
        case AtInfinity::cuspidal: return "cuspidal";
        case AtInfinity::holomorphic: return "holomorphic";
        case AtInfinity::meromorphic: return "meromorphic";
    }
    return "unknown";
}

namespace {

// Offsets n + mu with mu in [0, 1): n + mu <= 0 iff n <= -mu, which for
// integer n means n <= 0 when mu = 0 and n <= -1 otherwise.
long last_nonpositive_exponent(const Rational& mu) { return mu == 0 ? 0 : -1; }
long last_negative_exponent(const Rational&) { return -1; }

AtInfinity classify_support(const Rational& mu, long lowest_nonzero) {
    if (lowest_nonzero > last_nonpositive_exponent(mu)) return AtInfinity::cuspidal;
    if (lowest_nonzero > last_negative_exponent(mu)) return AtInfinity::holomorphic;
    return AtInfinity::meromorphic;
}

void check_tau(const Complex& tau) {
    if (!(tau.imag() > 0)) throw std::domain_error("evaluation needs Im(tau) > 0");
}

// Shared evaluation: coefficient k multiplies q^{n_min + mu + k}.
std::vector<Evaluation> evaluate_batch(const std::vector<double>& re, const std::vector<double>& im, long n_min,
                                       const Rational& mu, std::span<const Complex> taus) {
    const std::size_t points = taus.size();
    std::vector<double> qr(points), qi(points), outr(points), outi(points);
    for (std::size_t p = 0; p < points; ++p) {
        check_tau(taus[p]);
        const Complex q = std::exp(Complex(0.0, 2.0 * kPi) * taus[p]);
        qr[p] = q.real();
        qi[p] = q.imag();
    }
    kernels::horner_batch({re, im, qr, qi, outr, outi});

    double tail_coeff = 0;
    const std::size_t len = re.size();
    for (std::size_t k = len > 10 ? len - 10 : 0; k < len; ++k) tail_coeff = std::max(tail_coeff, std::hypot(re[k], im[k]));

    const double offset = static_cast<double>(n_min) + mu.get_d();
    std::vector<Evaluation> out(points);
    for (std::size_t p = 0; p < points; ++p) {
        const Complex lead = std::exp(Complex(0.0, 2.0 * kPi * offset) * taus[p]);
        out[p].value = lead * Complex(outr[p], outi[p]);
        const double aq = std::exp(-2.0 * kPi * taus[p].imag());
        out[p].tail_estimate =
            tail_coeff * std::exp(-2.0 * kPi * taus[p].imag() * (offset + static_cast<double>(len))) / (1.0 - aq);
    }
    return out;
}

}  // namespace

QSeries::QSeries(const Rational& mu, long order, long n_min) : mu_(mu), n_min_(n_min), order_(order) {
    mu_.canonicalize();
    if (mu < 0 || mu >= 1) throw std::invalid_argument("offset mu must lie in [0, 1)");
    if (n_min > order + 1) throw std::invalid_argument("n_min beyond order");
    coeffs_.assign(static_cast<std::size_t>(order - n_min + 1), Rational(0));
}

QSeries QSeries::constant(const Rational& c, long order) {
    QSeries s(0, order, 0);
    if (order >= 0) s.set_coeff(0, c);
    return s;
}

QSeries QSeries::monomial(long n, const Rational& c, const Rational& mu, long order) {
    QSeries s(mu, order, std::min(0L, n));
    if (n <= order) s.set_coeff(n, c);
    return s;
}

Rational QSeries::coeff(long n) const {
    if (n > order_) throw std::out_of_range("coefficient " + std::to_string(n) + " beyond order " + std::to_string(order_));
    if (n < n_min_) return 0;
    return coeffs_[n - n_min_];
}

void QSeries::extend_down(long n) {
    if (n >= n_min_) return;
    coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(n_min_ - n), Rational(0));
    n_min_ = n;
}

void QSeries::set_coeff(long n, const Rational& value) {
    if (n > order_) throw std::out_of_range("coefficient " + std::to_string(n) + " beyond order " + std::to_string(order_));
    extend_down(n);
    coeffs_[n - n_min_] = value;
    coeffs_[n - n_min_].canonicalize();
}

Complex QSeries::complex_coeff(long n) const { return coeff(n).get_d() * unit_root(phase_); }

bool QSeries::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

long QSeries::valuation() const {
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        if (coeffs_[k] != 0) return n_min_ + static_cast<long>(k);
    return order_ + 1;
}

QSeries QSeries::truncated(long order) const {
    if (order > order_) throw std::invalid_argument("cannot extend a truncated series");
    QSeries r(mu_, order, std::min(n_min_, order + 1));
    r.phase_ = phase_;
    for (long n = r.n_min_; n <= order; ++n) r.coeffs_[n - r.n_min_] = coeff(n);
    return r;
}

QSeries QSeries::scaled(const Rational& s) const {
    QSeries r = *this;
    for (auto& c : r.coeffs_) c *= s;
    return r;
}

QSeries QSeries::rotated(const Rational& turns) const {
    QSeries r = *this;
    r.phase_ = frac(phase_ + turns);
    return r;
}

QSeries QSeries::shift_T() const { return rotated(mu_); }

QSeries QSeries::operator-() const { return scaled(-1); }

QSeries& QSeries::operator+=(const QSeries& y) {
    if (mu_ != y.mu_) throw std::invalid_argument("cannot add series with offsets " + to_string(mu_) + " and " + to_string(y.mu_));
    Rational factor = 1;
    if (y.is_zero()) {
    } else if (is_zero()) {
        phase_ = y.phase_;
    } else {
        const Rational diff = frac(y.phase_ - phase_);
        if (diff == Rational(1, 2)) factor = -1;
        else if (diff != 0) throw std::invalid_argument("cannot add series whose phases differ by " + to_string(diff));
    }
    const long order = std::min(order_, y.order_);
    const long n_min = std::min(n_min_, y.n_min_);
    QSeries r(mu_, order, std::min(n_min, order + 1));
    r.phase_ = phase_;
    for (long n = r.n_min_; n <= order; ++n) r.coeffs_[n - r.n_min_] = coeff(n) + factor * y.coeff(n);
    *this = std::move(r);
    return *this;
}

QSeries& QSeries::operator-=(const QSeries& y) { return *this += -y; }

QSeries operator*(const QSeries& x, const QSeries& y) {
    Rational mu = x.mu_ + y.mu_;
    long carry = 0;
    if (mu >= 1) {
        mu -= 1;
        carry = 1;
    }
    // Terms past either order reach index order_x + n_min_y at the earliest.
    const long order = std::min(x.order_ + y.n_min_, y.order_ + x.n_min_);
    const long n_min = x.n_min_ + y.n_min_;
    QSeries r(mu, order + carry, std::min(n_min, order + 1) + carry);
    r.phase_ = frac(x.phase_ + y.phase_);
    const auto chunks = parallel_chunks<std::vector<Rational>>(
        n_min, order + 1, [&](std::int64_t lo, std::int64_t hi) {
            std::vector<Rational> part(static_cast<std::size_t>(hi - lo), Rational(0));
            for (std::int64_t n = lo; n < hi; ++n) {
                Rational acc = 0;
                const long i_lo = std::max(x.n_min_, static_cast<long>(n) - y.order_);
                const long i_hi = std::min(x.order_, static_cast<long>(n) - y.n_min_);
                for (long i = i_lo; i <= i_hi; ++i) {
                    const Rational& a = x.coeffs_[i - x.n_min_];
                    if (a == 0) continue;
                    const Rational& b = y.coeffs_[n - i - y.n_min_];
                    if (b != 0) acc += a * b;
                }
                part[n - lo] = acc;
            }
            return part;
        });
    long n = n_min;
    for (const auto& part : chunks)
        for (const auto& v : part) r.coeffs_[n++ + carry - r.n_min_] = v;
    return r;
}

bool operator==(const QSeries& x, const QSeries& y) {
    if (x.mu_ != y.mu_ || x.order_ != y.order_) return false;
    const bool xz = x.is_zero(), yz = y.is_zero();
    if (xz || yz) return xz && yz;
    const Rational diff = frac(y.phase_ - x.phase_);
    Rational factor;
    if (diff == 0) factor = 1;
    else if (diff == Rational(1, 2)) factor = -1;
    else return false;
    for (long n = std::min(x.n_min_, y.n_min_); n <= x.order_; ++n)
        if (x.coeff(n) != factor * y.coeff(n)) return false;
    return true;
}

AtInfinity QSeries::classify() const { return classify_support(mu_, valuation()); }

Evaluation QSeries::evaluate(const Complex& tau) const { return evaluate(std::span<const Complex>(&tau, 1)).front(); }

std::vector<Evaluation> QSeries::evaluate(std::span<const Complex> taus) const {
    const Complex ph = unit_root(phase_);
    std::vector<double> re(coeffs_.size()), im(coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        const Complex c = coeffs_[k].get_d() * ph;
        re[k] = c.real();
        im[k] = c.imag();
    }
    return evaluate_batch(re, im, n_min_, mu_, taus);
}

ComplexQSeries::ComplexQSeries(const Rational& mu, long order, long n_min) : mu_(mu), n_min_(n_min), order_(order) {
    if (mu < 0 || mu >= 1) throw std::invalid_argument("offset mu must lie in [0, 1)");
    if (n_min > order + 1) throw std::invalid_argument("n_min beyond order");
    coeffs_.assign(static_cast<std::size_t>(order - n_min + 1), Complex(0.0, 0.0));
}

ComplexQSeries::ComplexQSeries(const QSeries& exact) : ComplexQSeries(exact.mu(), exact.order(), exact.n_min()) {
    for (long n = n_min_; n <= order_; ++n) coeffs_[n - n_min_] = exact.complex_coeff(n);
}

Complex ComplexQSeries::coeff(long n) const {
    if (n > order_) throw std::out_of_range("coefficient beyond order");
    if (n < n_min_) return {0.0, 0.0};
    return coeffs_[n - n_min_];
}

void ComplexQSeries::set_coeff(long n, const Complex& value) {
    if (n > order_) throw std::out_of_range("coefficient beyond order");
    if (n < n_min_) {
        coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(n_min_ - n), Complex(0.0, 0.0));
        n_min_ = n;
    }
    coeffs_[n - n_min_] = value;
}

AtInfinity ComplexQSeries::classify() const {
    double scale = 0;
    for (const auto& c : coeffs_) scale = std::max(scale, std::abs(c));
    long lowest = order_ + 1;
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        if (scale > 0 && std::abs(coeffs_[k]) > kClassifyEpsilon * scale) {
            lowest = n_min_ + static_cast<long>(k);
            break;
        }
    return classify_support(mu_, lowest);
}

Evaluation ComplexQSeries::evaluate(const Complex& tau) const {
    return evaluate(std::span<const Complex>(&tau, 1)).front();
}

std::vector<Evaluation> ComplexQSeries::evaluate(std::span<const Complex> taus) const {
    std::vector<double> re(coeffs_.size()), im(coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        re[k] = coeffs_[k].real();
        im[k] = coeffs_[k].imag();
    }
    return evaluate_batch(re, im, n_min_, mu_, taus);
}

namespace {

// Product of integer power series truncated after degree `top`.
std::vector<Integer> mul_truncated(const std::vector<Integer>& x, const std::vector<Integer>& y, std::size_t top) {
    std::vector<std::size_t> nz;
    for (std::size_t i = 0; i < x.size() && i <= top; ++i)
        if (x[i] != 0) nz.push_back(i);
    const auto chunks = parallel_chunks<std::vector<Integer>>(
        0, static_cast<std::int64_t>(top) + 1, [&](std::int64_t lo, std::int64_t hi) {
            std::vector<Integer> part(static_cast<std::size_t>(hi - lo), Integer(0));
            for (std::int64_t n = lo; n < hi; ++n) {
                Integer acc = 0;
                for (std::size_t i : nz) {
                    if (static_cast<std::int64_t>(i) > n) break;
                    const std::size_t j = static_cast<std::size_t>(n) - i;
                    if (j < y.size()) acc += x[i] * y[j];
                }
                part[n - lo] = acc;
            }
            return part;
        });
    std::vector<Integer> r;
    r.reserve(top + 1);
    for (auto& part : chunks) r.insert(r.end(), part.begin(), part.end());
    return r;
}

}  // namespace

QSeries delta_series(long order) {
    if (order < 1) throw std::invalid_argument("delta_series needs order >= 1");
    // eta^3 = q^{1/8} sum_k (-1)^k (2k+1) q^{k(k+1)/2}, and Delta = eta^24.
    const std::size_t top = static_cast<std::size_t>(order - 1);
    std::vector<Integer> p(top + 1, Integer(0));
    for (long k = 0;; ++k) {
        const std::size_t e = static_cast<std::size_t>(k * (k + 1) / 2);
        if (e > top) break;
        p[e] = (k % 2 == 0 ? 1 : -1) * (2 * k + 1);
    }
    for (int i = 0; i < 3; ++i) p = mul_truncated(p, p, top);
    QSeries s(0, order, 0);
    for (long n = 1; n <= order; ++n) s.set_coeff(n, Rational(p[n - 1]));
    return s;
}

Rational bernoulli(long k) {
    if (k < 0) throw std::invalid_argument("bernoulli index must be >= 0");
    std::vector<Rational> b(static_cast<std::size_t>(k) + 1);
    b[0] = 1;
    for (long m = 1; m <= k; ++m) {
        Rational acc = 0;
        for (long j = 0; j < m; ++j) acc += Rational(binomial(Integer(m + 1), j)) * b[j];
        b[m] = -acc / (m + 1);
    }
    return b[k];
}

QSeries eisenstein_series(long k, long order) {
    if (k < 4 || k % 2 != 0) throw std::invalid_argument("Eisenstein weight must be even and >= 4");
    if (order < 0) throw std::invalid_argument("order must be >= 0");
    const Rational factor = -Rational(2 * k) / bernoulli(k);
    std::vector<Integer> sigma(static_cast<std::size_t>(order) + 1, Integer(0));
    for (long d = 1; d <= order; ++d) {
        Integer power;
        mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k - 1));
        for (long n = d; n <= order; n += d) sigma[n] += power;
    }
    QSeries s(0, order, 0);
    s.set_coeff(0, 1);
    for (long n = 1; n <= order; ++n) s.set_coeff(n, factor * sigma[n]);
    return s;
}

void write_series(std::ostream& out, const QSeries& s) {
    out << "mu " << to_string(s.mu()) << ", order " << s.order();
    if (s.phase() != 0) out << ", phase " << to_string(s.phase());
    out << "\n";
    for (long n = s.n_min(); n <= s.order(); ++n) {
        const Rational c = s.coeff(n);
        if (c != 0) out << n << " " << to_string(c) << " 0\n";
    }
}

namespace {

struct Header {
    Rational mu = 0;
    long order = -1;
    Rational phase = 0;
};

Header read_header(std::istream& in) {
    std::string line;
    while (std::getline(in, line))
        if (line.find_first_not_of(" \t\r") != std::string::npos) break;
    Header h;
    bool have_mu = false, have_order = false;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        std::stringstream fs(field);
        std::string key, value;
        fs >> key >> value;
        if (key == "mu") {
            h.mu = parse_rational(value);
            have_mu = true;
        } else if (key == "order") {
            h.order = std::stol(value);
            have_order = true;
        } else if (key == "phase") {
            h.phase = frac(parse_rational(value));
        } else {
            throw std::invalid_argument("unknown series header field '" + key + "'");
        }
    }
    if (!have_mu || !have_order) throw std::invalid_argument("series header must name mu and order");
    if (h.mu < 0 || h.mu >= 1) throw std::invalid_argument("series offset mu must lie in [0, 1)");
    return h;
}

struct Line {
    long n;
    std::string re, im;
};

std::vector<Line> read_lines(std::istream& in, long order) {
    std::vector<Line> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
        std::stringstream ss(line);
        Line l;
        if (!(ss >> l.n >> l.re >> l.im)) throw std::invalid_argument("bad series line '" + line + "'");
        if (l.n > order) throw std::invalid_argument("coefficient index " + std::to_string(l.n) + " beyond order");
        lines.push_back(std::move(l));
    }
    return lines;
}

}  // namespace

QSeries read_series(std::istream& in) {
    const Header h = read_header(in);
    const auto lines = read_lines(in, h.order);
    bool all_real = true, all_imag = true;
    std::vector<std::pair<Rational, Rational>> values;
    for (const auto& l : lines) {
        values.emplace_back(parse_rational(l.re), parse_rational(l.im));
        if (values.back().second != 0) all_real = false;
        if (values.back().first != 0) all_imag = false;
    }
    if (!all_real && !all_imag)
        throw std::invalid_argument("exact series need coefficients on a common line through 0 (all real or all imaginary)");
    QSeries s(h.mu, h.order, 0);
    for (std::size_t i = 0; i < lines.size(); ++i)
        s.set_coeff(lines[i].n, all_real ? values[i].first : values[i].second);
    return s.rotated(all_real ? h.phase : h.phase + Rational(1, 4));
}

ComplexQSeries read_complex_series(std::istream& in) {
    const Header h = read_header(in);
    const auto lines = read_lines(in, h.order);
    ComplexQSeries s(h.mu, h.order, 0);
    const Complex ph = unit_root(h.phase);
    auto number = [](const std::string& t) {
        if (t.find('/') != std::string::npos) return parse_rational(t).get_d();
        std::size_t used = 0;
        const double v = std::stod(t, &used);
        if (used != t.size()) throw std::invalid_argument("bad number '" + t + "'");
        return v;
    };
    for (const auto& l : lines) s.set_coeff(l.n, ph * Complex(number(l.re), number(l.im)));
    return s;
}

}  // namespace lvvmf
