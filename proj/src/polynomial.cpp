#include "lvvmf/polynomial.hpp"

#include <stdexcept>

namespace lvvmf {

RationalPolynomial::RationalPolynomial(const Rational& c) : coeffs_{c} { trim(); }

RationalPolynomial::RationalPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void RationalPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

RationalPolynomial RationalPolynomial::x() { return RationalPolynomial(std::vector<Rational>{0, 1}); }

RationalPolynomial RationalPolynomial::binomial(const Integer& shift, long k) {
    if (k < 0) return {};
    RationalPolynomial p(1);
    Integer fact = 1;
    for (long i = 0; i < k; ++i) {
        p *= RationalPolynomial(std::vector<Rational>{Rational(shift - i), 1});
        fact *= i + 1;
    }
    for (auto& c : p.coeffs_) c /= fact;
    return p;
}

Rational RationalPolynomial::coeff(long k) const {
    if (k < 0 || k >= static_cast<long>(coeffs_.size())) return 0;
    return coeffs_[k];
}

Rational RationalPolynomial::operator()(const Rational& x) const {
    Rational r = 0;
    for (std::size_t k = coeffs_.size(); k-- > 0;) r = r * x + coeffs_[k];
    return r;
}

Complex RationalPolynomial::operator()(const Complex& x) const {
    Complex r(0.0, 0.0);
    for (std::size_t k = coeffs_.size(); k-- > 0;) r = r * x + coeffs_[k].get_d();
    return r;
}

RationalPolynomial RationalPolynomial::shifted(const Rational& shift) const {
    const RationalPolynomial lin(std::vector<Rational>{shift, 1});
    RationalPolynomial r;
    for (std::size_t k = coeffs_.size(); k-- > 0;) r = r * lin + RationalPolynomial(coeffs_[k]);
    return r;
}

RationalPolynomial& RationalPolynomial::operator+=(const RationalPolynomial& y) {
    if (y.coeffs_.size() > coeffs_.size()) coeffs_.resize(y.coeffs_.size(), Rational(0));
    for (std::size_t k = 0; k < y.coeffs_.size(); ++k) coeffs_[k] += y.coeffs_[k];
    trim();
    return *this;
}

RationalPolynomial& RationalPolynomial::operator-=(const RationalPolynomial& y) { return *this += -y; }

RationalPolynomial& RationalPolynomial::operator*=(const RationalPolynomial& y) {
    if (is_zero() || y.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<Rational> r(coeffs_.size() + y.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < y.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * y.coeffs_[j];
    }
    coeffs_ = std::move(r);
    trim();
    return *this;
}

RationalPolynomial RationalPolynomial::operator-() const {
    RationalPolynomial r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

std::string RationalPolynomial::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        const Rational& c = coeffs_[k];
        if (c == 0) continue;
        const bool neg = c < 0;
        const Rational mag = neg ? Rational(-c) : c;
        if (out.empty()) out += neg ? "-" : "";
        else out += neg ? " - " : " + ";
        const bool unit = mag == 1;
        if (k == 0 || !unit) out += lvvmf::to_string(mag);
        if (k > 0) {
            if (!unit) out += "*";
            out += var;
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

}  // namespace lvvmf
