#include "lvvmf/sl2z.hpp"

#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace lvvmf {

GammaMatrix make_gamma(const Integer& a, const Integer& b, const Integer& c, const Integer& d) {
    GammaMatrix g{a, b, c, d};
    if (!g.unimodular())
        throw std::invalid_argument("matrix " + to_string(g) + " has determinant " + to_string(g.det()) + ", not 1");
    return g;
}

GammaMatrix compose(const GammaMatrix& x, const GammaMatrix& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

std::string to_string(const GammaMatrix& g) {
    return "[[" + to_string(g.a) + "," + to_string(g.b) + "],[" + to_string(g.c) + "," + to_string(g.d) + "]]";
}

std::string to_string(const EichlerWord& w) {
    std::string s = w.sign < 0 ? "-(" : "+(";
    for (std::size_t i = 0; i < w.exponents.size(); ++i) {
        if (i) s += ",";
        s += to_string(w.exponents[i]);
    }
    return s + ")";
}

std::string sign_pattern_error(const EichlerWord& w) {
    if (w.sign != 1 && w.sign != -1) return "sign flag must be +1 or -1";
    if (w.exponents.empty()) return "empty exponent sequence";
    const long nu = w.nu();
    if (nu >= 0 && w.exponents[1] <= 0) return "l_1 = " + to_string(w.exponents[1]) + " must be positive";
    for (long j = 1; j <= nu; ++j) {
        const Integer& l = w.exponents[j];
        const bool ok = (j % 2 == 1) ? l > 0 : l < 0;
        if (!ok) return "l_" + std::to_string(j) + " = " + to_string(l) + " breaks the alternating sign pattern";
    }
    if (nu >= 0) {
        const Integer& l = w.exponents[nu + 1];
        const bool ok = (nu % 2 == 0) ? l >= 0 : l <= 0;
        if (!ok) return "last exponent l_" + std::to_string(nu + 1) + " = " + to_string(l) + " has the wrong sign";
    }
    return {};
}

namespace {

// The search runs on machine integers whenever the entries are small enough
// that no intermediate can overflow, and on GMP integers otherwise.
template <class Z>
struct M2 {
    Z a, b, c, d;
    bool operator==(const M2&) const = default;
};

template <class Z>
M2<Z> left_st(const Z& l, const M2<Z>& p) {
    return {-p.c, -p.d, p.a + l * p.c, p.b + l * p.d};
}

template <class Z>
Z zabs(const Z& x) {
    return x < 0 ? Z(-x) : x;
}

// Partial quotients of x/y for x, y > 0.
template <class Z>
std::vector<Z> quotients(Z x, Z y) {
    std::vector<Z> q;
    while (y != 0) {
        Z t = x / y;
        q.push_back(t);
        Z r = x - t * y;
        x = y;
        y = r;
    }
    return q;
}

template <class Z>
struct RawWord {
    int sign;
    std::vector<Z> exponents;
};

template <class Z>
M2<Z> unsigned_product(const std::vector<Z>& e) {
    M2<Z> p{Z(0), Z(-1), Z(1), e[0]};
    for (std::size_t j = 1; j < e.size(); ++j) p = left_st(e[j], p);
    return p;
}

// Given |l_1|, ..., |l_{nu+1}|, fix the signs, solve for l_0 and accept if
// the product is +-g.
template <class Z>
std::optional<RawWord<Z>> try_candidate(const std::vector<Z>& mags, const M2<Z>& g) {
    std::vector<Z> e(mags.size() + 1);
    e[0] = Z(0);
    const std::size_t last = mags.size();
    for (std::size_t j = 1; j <= last; ++j) e[j] = (j % 2 == 1) ? mags[j - 1] : Z(-mags[j - 1]);
    const M2<Z> q = unsigned_product(e);
    int s;
    if (q.c == g.c && q.a == g.a) s = 1;
    else if (q.c == -g.c && q.a == -g.a) s = -1;
    else return std::nullopt;
    const Z target = s == 1 ? g.d : Z(-g.d);
    const Z diff = target - q.d;
    if (diff % q.c != 0) return std::nullopt;
    e[0] = diff / q.c;
    const M2<Z> p = unsigned_product(e);
    const M2<Z> want = s == 1 ? g : M2<Z>{-g.a, -g.b, -g.c, -g.d};
    if (!(p == want)) return std::nullopt;
    return RawWord<Z>{s, std::move(e)};
}

template <class Z>
void push_with_variant(std::vector<std::vector<Z>>& out, std::vector<Z> mags_last_first, bool trailing_zero) {
    // mags_last_first lists |l_{nu+1}| (or |l_nu| when trailing_zero), ...,
    // |l_1|. A continued fraction ending in q >= 2 has a twin ending in q-1, 1.
    auto emit = [&](std::vector<Z> m) {
        std::vector<Z> forward(m.rbegin(), m.rend());
        if (trailing_zero) forward.push_back(Z(0));
        out.push_back(std::move(forward));
    };
    emit(mags_last_first);
    if (mags_last_first.back() >= 2) {
        mags_last_first.back() -= 1;
        mags_last_first.push_back(Z(1));
        emit(std::move(mags_last_first));
    }
}

template <class Z>
std::optional<RawWord<Z>> decompose_raw(M2<Z> g) {
    int flip = 1;
    if (g.c < 0) {
        g = {-g.a, -g.b, -g.c, -g.d};
        flip = -1;
    }
    if (g.a == 0) {
        // c = 1, b = -1: gamma = S T^d.
        if (g.c != 1 || g.b != -1) return std::nullopt;
        return RawWord<Z>{flip, {g.d}};
    }
    const Z aa = zabs(g.a);
    std::vector<std::vector<Z>> candidates;
    if (aa <= g.c) push_with_variant(candidates, quotients(g.c, aa), false);
    if (aa >= g.c) push_with_variant(candidates, quotients(aa, g.c), true);
    for (const auto& mags : candidates) {
        if (auto w = try_candidate(mags, g)) {
            w->sign *= flip;
            return w;
        }
    }
    return std::nullopt;
}

bool fits_machine(const GammaMatrix& g) {
    static const Integer limit = Integer(1) << 28;
    return abs(g.a) < limit && abs(g.b) < limit && abs(g.c) < limit && abs(g.d) < limit;
}

}  // namespace

Decomposition eichler_decompose(const GammaMatrix& g) {
    if (!g.unimodular()) throw std::invalid_argument("not in SL(2,Z): " + to_string(g));
    if (g.c == 0) return Translation{g.a > 0 ? 1 : -1, g.a > 0 ? g.b : Integer(-g.b)};

    EichlerWord w;
    if (fits_machine(g)) {
        using Z = long long;
        const M2<Z> m{g.a.get_si(), g.b.get_si(), g.c.get_si(), g.d.get_si()};
        auto raw = decompose_raw(m);
        if (!raw) throw std::logic_error("no alternating word found for " + to_string(g));
        w.sign = raw->sign;
        for (Z l : raw->exponents) w.exponents.emplace_back(static_cast<long>(l));
    } else {
        auto raw = decompose_raw(M2<Integer>{g.a, g.b, g.c, g.d});
        if (!raw) throw std::logic_error("no alternating word found for " + to_string(g));
        w.sign = raw->sign;
        w.exponents = std::move(raw->exponents);
    }
    return w;
}

EichlerWord decompose_word(const GammaMatrix& g) {
    if (g.c == 0) throw std::invalid_argument("c = 0: " + to_string(g) + " is a translation");
    return std::get<EichlerWord>(eichler_decompose(g));
}

std::vector<GammaMatrix> prefix_products(const EichlerWord& w) {
    std::vector<GammaMatrix> p;
    p.reserve(w.exponents.size());
    p.push_back(GammaMatrix::ST(w.exponents[0]));
    for (std::size_t j = 1; j < w.exponents.size(); ++j) p.push_back(compose(GammaMatrix::ST(w.exponents[j]), p.back()));
    return p;
}

GammaMatrix reconstruct(const EichlerWord& w) {
    if (auto err = sign_pattern_error(w); !err.empty()) throw std::invalid_argument("invalid word: " + err);
    GammaMatrix p = prefix_products(w).back();
    return w.sign < 0 ? p.negated() : p;
}

GammaMatrix reconstruct(const Translation& t) {
    GammaMatrix g = GammaMatrix::T(t.b);
    return t.sign < 0 ? g.negated() : g;
}

namespace {

Integer abs_product(const std::vector<Integer>& e, std::size_t from, long to) {
    Integer p = 1;
    for (long j = static_cast<long>(from); j <= to; ++j) p *= e[j];
    return abs(p);
}

struct Checker {
    WordBoundReport& report;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            report.pass = false;
            report.violations.push_back(what);
        }
    }
    void ratio(const Integer& lhs, const Integer& rhs) {
        double r;
        if (rhs == 0) r = lhs == 0 ? 0.0 : HUGE_VAL;
        else r = Rational(lhs, rhs).get_d();
        if (r > report.max_ratio) report.max_ratio = r;
    }
};

// Per-step invariants for a word whose l_0 is nonzero.
void check_steps(const std::vector<Integer>& e, Checker& chk, const std::string& tag) {
    EichlerWord w{1, e};
    const auto p = prefix_products(w);
    const bool neg = e[0] < 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        const Integer prod = abs_product(e, 0, static_cast<long>(j));
        const Integer sj = (j % 2 == 0) ? Integer(1) : Integer(-1);
        const std::string at = tag + " j=" + std::to_string(j) + ": ";
        if (neg) {
            chk.require(prod <= abs(p[j].d), at + "|l_0..l_j| = " + to_string(prod) + " > |d_j| = " + to_string(abs(p[j].d)));
            chk.require(sj * p[j].b * p[j].d >= 0, at + "(-1)^j b_j d_j < 0");
        } else {
            const Integer bound = abs(p[j].c) + abs(p[j].d);
            chk.require(prod <= bound, at + "|l_0..l_j| = " + to_string(prod) + " > |c_j|+|d_j| = " + to_string(bound));
            if (j >= 1) {
                chk.require(sj * p[j].b * p[j].d >= 0, at + "(-1)^j b_j d_j < 0");
                chk.require(sj * p[j].a * p[j].c >= 0, at + "(-1)^j a_j c_j < 0");
            }
        }
    }
}

}  // namespace

WordBoundReport verify_word_bounds(const EichlerWord& w, const GammaMatrix& g) {
    WordBoundReport report;
    Checker chk{report};
    if (auto err = sign_pattern_error(w); !err.empty()) {
        chk.require(false, "invalid word: " + err);
        return report;
    }
    if (!(reconstruct(w) == g)) {
        chk.require(false, "word does not reconstruct " + to_string(g));
        return report;
    }
    const auto& e = w.exponents;
    const long nu = w.nu();
    const int s0 = sign(e[0]);
    report.l0_case = s0 < 0 ? "negative" : (s0 == 0 ? "zero" : "positive");
    report.trailing_zero = !w.single_factor() && e.back() == 0;

    // Final display: the product runs to l_{nu+1}, or to l_{nu-1} when
    // l_{nu+1} = 0.
    const long top = report.trailing_zero ? nu - 1 : nu + 1;
    if (s0 == 0) {
        const Integer prod = abs_product(e, 1, top);
        const Integer bound = abs(g.d - g.c);
        chk.require(prod <= bound, "|l_1..l_" + std::to_string(top) + "| = " + to_string(prod) + " > |d-c| = " + to_string(bound));
        chk.ratio(prod, bound);
        std::vector<Integer> shifted = e;
        shifted[0] = -1;
        check_steps(shifted, chk, "gamma T^-1");
    } else {
        const Integer prod = abs_product(e, 0, top);
        const Integer bound = s0 < 0 ? abs(g.d) : abs(g.c) + abs(g.d);
        chk.require(prod <= bound, "|l_0..l_" + std::to_string(top) + "| = " + to_string(prod) + " > " +
                                       (s0 < 0 ? "|d| = " : "|c|+|d| = ") + to_string(bound));
        chk.ratio(prod, bound);
        check_steps(e, chk, "prefix");
    }
    if (report.trailing_zero) {
        // gamma = -T^{l_nu} P_{nu-1}, so P_{nu-1} has bottom row +-(c, d).
        const auto p = prefix_products(w);
        const auto& q = p[nu - 1];
        chk.require(abs(q.c) == abs(g.c) && abs(q.d) == abs(g.d), "P_{nu-1} bottom row differs from +-(c, d)");
    }
    return report;
}

TailDichotomy check_tail_dichotomy(const EichlerWord& w, const GammaMatrix& g) {
    TailDichotomy r;
    if (w.single_factor()) {
        r.exempt = true;
        return r;
    }
    const Integer aa = abs(g.a), cc = abs(g.c);
    const bool small = aa < cc;
    const bool tail_nonzero = w.last() != 0;
    if (tail_nonzero != small) {
        r.holds = false;
        r.detail = std::string("l_{nu+1} = ") + to_string(w.last()) + " but |a/c| = " + to_string(Rational(aa, cc)) +
                   (small ? " < 1" : " >= 1");
        return r;
    }
    if (!small) {
        const Integer fl = floor_div(aa, cc);
        const Integer& lnu = w.exponents[w.nu()];
        if (abs(lnu) != fl) {
            r.holds = false;
            r.detail = "|l_nu| = " + to_string(abs(lnu)) + " but floor|a/c| = " + to_string(fl);
        }
    }
    return r;
}

long eichler_length(const EichlerWord& w) {
    if (w.single_factor()) return w.first() != 0 ? 2 : 1;
    const long nu = w.nu();
    const bool l0 = w.first() != 0, tail = w.last() != 0;
    if (l0 && tail) return 2 * nu + 4;
    if (!l0 && tail) return 2 * nu + 3;
    if (l0 && !tail) return 2 * nu + 1;
    return 2 * nu;
}

double lame_ratio(const EichlerWord& w, const GammaMatrix& g) {
    if (g.c == 0) throw std::invalid_argument("lame_ratio needs c != 0");
    return static_cast<double>(eichler_length(w)) / (std::log(abs(g.c).get_d()) + 1.0);
}

GammaMatrix canonical_gamma(std::int64_t c, std::int64_t d) {
    if (c < 1) throw std::invalid_argument("canonical_gamma needs c >= 1");
    if (std::gcd(c, d) != 1) throw std::invalid_argument("c and d must be coprime");
    if (c == 1) return {0, -1, 1, d};
    Integer a;
    const Integer dm = Integer(d) % c;
    const Integer dpos = dm < 0 ? Integer(dm + c) : dm;
    mpz_invert(a.get_mpz_t(), dpos.get_mpz_t(), Integer(c).get_mpz_t());
    const Integer b = (a * d - 1) / c;
    return {a, b, c, d};
}

GammaRange::GammaRange(std::int64_t c_max, std::int64_t d_max, std::int64_t c_min)
    : c_min_(c_min), c_max_(c_max), d_max_(d_max) {
    if (c_max < 1 || d_max < 1 || c_min < 1) throw std::invalid_argument("enumeration bounds must be >= 1");
}

GammaRange::iterator GammaRange::begin() const {
    iterator it;
    it.c_max_ = c_max_;
    it.d_max_ = d_max_;
    it.c_ = c_min_;
    it.d_ = -d_max_;
    it.done_ = c_min_ > c_max_;
    it.settle();
    return it;
}

void GammaRange::iterator::settle() {
    while (!done_) {
        if (d_ > d_max_) {
            ++c_;
            d_ = -d_max_;
            if (c_ > c_max_) {
                done_ = true;
                return;
            }
        }
        if (std::gcd(c_, d_) == 1) {
            current_ = canonical_gamma(c_, d_);
            return;
        }
        ++d_;
    }
}

GammaRange::iterator& GammaRange::iterator::operator++() {
    ++d_;
    settle();
    return *this;
}

GammaRange enumerate_gamma(std::int64_t c_max, std::int64_t d_max) { return GammaRange(c_max, d_max); }

}  // namespace lvvmf
