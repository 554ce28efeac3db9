#include "lvvmf/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace lvvmf {

namespace {

// Exact quotient of integer polynomials by a monic divisor.
std::vector<Integer> divide_monic(std::vector<Integer> num, const std::vector<Integer>& den) {
    const std::size_t dn = den.size() - 1;
    if (num.size() <= dn) return {Integer(0)};
    std::vector<Integer> q(num.size() - dn);
    for (std::size_t k = num.size(); k-- > dn;) {
        const Integer t = num[k];
        q[k - dn] = t;
        if (t == 0) continue;
        for (std::size_t i = 0; i <= dn; ++i) num[k - dn + i] -= t * den[i];
    }
    return q;
}

}  // namespace

const std::vector<Integer>& cyclotomic_polynomial(long n) {
    if (n < 1) throw std::invalid_argument("cyclotomic_polynomial needs n >= 1");
    static std::mutex mu;
    static std::map<long, std::vector<Integer>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    std::vector<Integer> p(static_cast<std::size_t>(n) + 1, Integer(0));
    p[0] = -1;
    p[n] = 1;
    for (long d = 1; d < n; ++d)
        if (n % d == 0) p = divide_monic(std::move(p), cyclotomic_polynomial(d));
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(n, std::move(p)).first->second;
}

Cyclotomic::Cyclotomic(long n, std::vector<Rational> c) : order_(n), coeffs_(reduce(n, std::move(c))) {}

std::vector<Rational> Cyclotomic::reduce(long n, std::vector<Rational> c) {
    const auto& phi = cyclotomic_polynomial(n);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t k = c.size(); k-- > deg;) {
        const Rational t = c[k];
        if (t == 0) continue;
        for (std::size_t i = 0; i <= deg; ++i) c[k - deg + i] -= t * phi[i];
    }
    c.resize(deg, Rational(0));
    return c;
}

Cyclotomic Cyclotomic::zeta_power(long n, long k) {
    if (n < 1) throw std::invalid_argument("zeta order must be positive");
    k %= n;
    if (k < 0) k += n;
    std::vector<Rational> c(static_cast<std::size_t>(k) + 1, Rational(0));
    c[k] = 1;
    return Cyclotomic(n, std::move(c));
}

Cyclotomic Cyclotomic::root_of_unity(const Rational& turns) {
    const Rational t = frac(turns);
    return zeta_power(t.get_den().get_si(), t.get_num().get_si());
}

Cyclotomic Cyclotomic::lifted(long m) const {
    if (m % order_ != 0) throw std::invalid_argument("cannot lift Q(zeta_n) into Q(zeta_m) unless n | m");
    if (m == order_) return *this;
    const long step = m / order_;
    std::vector<Rational> c(coeffs_.size() * step + 1, Rational(0));
    for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k * step] = coeffs_[k];
    return Cyclotomic(m, std::move(c));
}

Complex Cyclotomic::value() const {
    Complex z(0.0, 0.0);
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        if (coeffs_[k] != 0) z += coeffs_[k].get_d() * unit_root(Rational(static_cast<long>(k), order_));
    return z;
}

bool Cyclotomic::is_zero() const {
    for (const auto& x : coeffs_)
        if (x != 0) return false;
    return true;
}

namespace {

long common_order(long a, long b) { return std::lcm(a, b); }

}  // namespace

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& y) {
    const long n = common_order(order_, y.order_);
    if (n != order_) *this = lifted(n);
    const Cyclotomic yl = y.lifted(n);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += yl.coeffs_[k];
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& y) { return *this += -y; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& y) {
    const long n = common_order(order_, y.order_);
    const Cyclotomic xl = lifted(n), yl = y.lifted(n);
    std::vector<Rational> c(xl.coeffs_.size() + yl.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < xl.coeffs_.size(); ++i) {
        if (xl.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < yl.coeffs_.size(); ++j) c[i + j] += xl.coeffs_[i] * yl.coeffs_[j];
    }
    *this = Cyclotomic(n, std::move(c));
    return *this;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& x : r.coeffs_) x = -x;
    return r;
}

bool operator==(const Cyclotomic& x, const Cyclotomic& y) { return (x - y).is_zero(); }

}  // namespace lvvmf
