#include "lvvmf/rep_norms.hpp"

#include "lvvmf/kernels.hpp"
#include "lvvmf/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace lvvmf {

using json = nlohmann::json;

IntegerMatrix sym_power_matrix(const GammaMatrix& g, long m) {
    if (m < 0) throw std::invalid_argument("symmetric power must be >= 0");
    const std::size_t n = static_cast<std::size_t>(m) + 1;
    IntegerMatrix r(n, n, Integer(0));
    // Polynomials in y with x set to 1; row i is (a + b y)^{m-i} (c + d y)^i.
    auto mul = [](const std::vector<Integer>& p, const Integer& u, const Integer& v) {
        std::vector<Integer> q(p.size() + 1, Integer(0));
        for (std::size_t k = 0; k < p.size(); ++k) {
            q[k] += p[k] * u;
            q[k + 1] += p[k] * v;
        }
        return q;
    };
    for (long i = 0; i <= m; ++i) {
        std::vector<Integer> p{Integer(1)};
        for (long k = 0; k < m - i; ++k) p = mul(p, g.a, g.b);
        for (long k = 0; k < i; ++k) p = mul(p, g.c, g.d);
        for (std::size_t j = 0; j < n; ++j) r(i, j) = p[j];
    }
    return r;
}

Representation make_representation(std::string name, const ComplexMatrix& rhoS, const ComplexMatrix& rhoT,
                                   std::optional<JordanSpec> jordan, const ComplexMatrix& basis_change) {
    if (!rhoS.square() || rhoS.rows() != rhoT.rows() || !rhoT.square() || rhoS.rows() == 0)
        throw std::invalid_argument("rho(S) and rho(T) must be square of one size");
    Representation rep;
    rep.name = std::move(name);
    rep.p = static_cast<long>(rhoS.rows());
    rep.rhoS = rhoS;
    rep.rhoT = rhoT;
    auto integral = [](const ComplexMatrix& m) -> std::optional<IntegerMatrix> {
        IntegerMatrix r(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) {
                const Complex z = m(i, j);
                if (z.imag() != 0 || std::nearbyint(z.real()) != z.real() || std::abs(z.real()) > 1e15) return std::nullopt;
                r(i, j) = Integer(static_cast<long>(z.real()));
            }
        return r;
    };
    auto s = integral(rhoS), t = integral(rhoT);
    if (s && t) {
        rep.exactS = std::move(s);
        rep.exactT = std::move(t);
    }
    if (jordan) {
        if (jordan->dim() != rep.p) throw std::invalid_argument("Jordan blocks do not add up to the dimension");
        if (basis_change.rows() != static_cast<std::size_t>(rep.p) || !basis_change.square())
            throw std::invalid_argument("basis_change must be p x p");
        rep.jordan = std::move(jordan);
        rep.basis_change = basis_change;
    } else if (rep.exactT) {
        try {
            const UnipotentForm form = canonicalize_unipotent(*rep.exactT);
            rep.jordan = form.spec;
            rep.basis_change = to_complex(form.basis_change);
        } catch (const UnsupportedInput&) {
        }
    }
    return rep;
}

Representation trivial_rep() {
    return make_representation("trivial", ComplexMatrix{{Complex(1, 0)}}, ComplexMatrix{{Complex(1, 0)}});
}

Representation sym_power_rep(long m) {
    const IntegerMatrix s = sym_power_matrix(GammaMatrix::S(), m);
    const IntegerMatrix t = sym_power_matrix(GammaMatrix::T(), m);
    Representation rep = make_representation(m == 0 ? "trivial" : "sym" + std::to_string(m), to_complex(s), to_complex(t));
    return rep;
}

namespace {

double max_entry_error(const ComplexMatrix& x, const ComplexMatrix& y) {
    double e = 0;
    for (std::size_t i = 0; i < x.data().size(); ++i) e = std::max(e, std::abs(x.data()[i] - y.data()[i]));
    return e;
}

IntegerMatrix integer_inverse(const IntegerMatrix& m) {
    const RationalMatrix inv = inverse(to_rational(m));
    IntegerMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (inv(i, j).get_den() != 1) throw std::domain_error("integer matrix is not unimodular");
            r(i, j) = inv(i, j).get_num();
        }
    return r;
}

}  // namespace

ValidationReport validate(const Representation& rep, double tolerance) {
    ValidationReport r;
    const std::size_t p = static_cast<std::size_t>(rep.p);
    if (rep.exactS && rep.exactT) {
        r.exact = true;
        const IntegerMatrix& s = *rep.exactS;
        const IntegerMatrix& t = *rep.exactT;
        const IntegerMatrix s2 = s * s;
        const IntegerMatrix st = s * t;
        if (!(s2 * s2 == IntegerMatrix::identity(p))) {
            r.pass = false;
            r.message = "rho(S)^4 != I";
        } else if (!(st * st * st == s2)) {
            r.pass = false;
            r.message = "(rho(S) rho(T))^3 != rho(S)^2";
        }
    } else {
        const ComplexMatrix s2 = rep.rhoS * rep.rhoS;
        const ComplexMatrix st = rep.rhoS * rep.rhoT;
        r.relation_error = std::max(max_entry_error(s2 * s2, ComplexMatrix::identity(p)), max_entry_error(st * st * st, s2));
        if (r.relation_error > tolerance) {
            r.pass = false;
            r.message = "defining relations fail by " + std::to_string(r.relation_error);
        }
    }
    if (!rep.jordan) {
        r.pass = false;
        if (r.message.empty())
            r.message = "rho(T) is not unipotent and no Jordan blocks were supplied; add a \"jordan\" entry";
        return r;
    }
    const ComplexMatrix j = rhoT_matrix(*rep.jordan);
    r.jordan_error = max_entry_error(rep.basis_change * rep.rhoT * inverse(rep.basis_change), j);
    if (r.jordan_error > tolerance && r.pass) {
        r.pass = false;
        r.message = "basis_change does not bring rho(T) to the stated Jordan form (error " + std::to_string(r.jordan_error) + ")";
    }
    return r;
}

double max_norm_exact(const IntegerMatrix& m) {
    Integer best = 0;
    for (const auto& x : m.data()) best = std::max(best, abs(x));
    return best.get_d();
}

RepEvaluator::RepEvaluator(Representation rep, long table_range) : rep_(std::move(rep)), range_(table_range) {
    const std::size_t p = static_cast<std::size_t>(rep_.p);
    s_inv_ = inverse(rep_.rhoS);
    minus_ = rep_.rhoS * rep_.rhoS;
    s_norm_ = max_norm(rep_.rhoS);
    minus_norm_ = max_norm(minus_);
    if (rep_.jordan) {
        q_ = rep_.basis_change;
        q_inv_ = inverse(q_);
    }
    if (exact()) {
        const IntegerMatrix& t = *rep_.exactT;
        exact_s_inv_ = integer_inverse(*rep_.exactS);
        exact_minus_ = *rep_.exactS * *rep_.exactS;
        const IntegerMatrix t_inv = integer_inverse(t);
        const IntegerMatrix id = IntegerMatrix::identity(p);
        minus_scalar_ = *exact_minus_ == id || *exact_minus_ == id.scaled(Integer(-1));
        exact_table_[0] = id;
        IntegerMatrix up = id, down = id;
        for (long l = 1; l <= range_; ++l) {
            up = up * t;
            down = down * t_inv;
            exact_table_[l] = up;
            exact_table_[-l] = down;
        }
        for (const auto& [l, m] : exact_table_) table_[l] = to_complex(m);
    } else {
        const ComplexMatrix id = ComplexMatrix::identity(p);
        minus_scalar_ = max_entry_error(minus_, id) < 1e-12 || max_entry_error(minus_, id.scaled(Complex(-1, 0))) < 1e-12;
        for (long l = -range_; l <= range_; ++l) table_[l] = rhoT_power(Integer(l));
    }
}

std::optional<IntegerMatrix> RepEvaluator::rhoT_power_exact(const Integer& l) const {
    if (!exact()) return std::nullopt;
    if (abs(l) <= range_) return exact_table_.at(l.get_si());
    const IntegerMatrix base = l > 0 ? *rep_.exactT : exact_table_.at(-1);
    return matrix_power(base, abs(l).get_ui());
}

ComplexMatrix RepEvaluator::rhoT_power(const Integer& l) const {
    if (abs(l) <= range_) {
        if (auto it = table_.find(l.get_si()); it != table_.end()) return it->second;
    }
    if (exact()) return to_complex(*rhoT_power_exact(l));
    if (rep_.jordan) {
        std::vector<ComplexMatrix> blocks;
        for (const auto& b : rep_.jordan->blocks) blocks.push_back(block_power_exact(b, l).to_complex());
        return q_inv_ * block_diagonal(blocks) * q_;
    }
    const ComplexMatrix base = l >= 0 ? rep_.rhoT : inverse(rep_.rhoT);
    return matrix_power(base, abs(l).get_ui());
}

double RepEvaluator::rhoT_power_norm(const Integer& l) const {
    if (exact()) return max_norm_exact(*rhoT_power_exact(l));
    return max_norm(rhoT_power(l));
}

ComplexMatrix RepEvaluator::rho_of(const EichlerWord& w) const {
    ComplexMatrix r = ComplexMatrix::identity(static_cast<std::size_t>(rep_.p));
    for (std::size_t j = w.exponents.size(); j-- > 0;) r = r * rep_.rhoS * rhoT_power(w.exponents[j]);
    if (w.sign < 0) r = minus_ * r;
    return r;
}

std::optional<IntegerMatrix> RepEvaluator::rho_of_exact(const EichlerWord& w) const {
    if (!exact()) return std::nullopt;
    IntegerMatrix r = IntegerMatrix::identity(static_cast<std::size_t>(rep_.p));
    for (std::size_t j = w.exponents.size(); j-- > 0;) r = r * *rep_.exactS * *rhoT_power_exact(w.exponents[j]);
    if (w.sign < 0) r = *exact_minus_ * r;
    return r;
}

ComplexMatrix RepEvaluator::rho_of_inverse(const EichlerWord& w) const {
    ComplexMatrix r = ComplexMatrix::identity(static_cast<std::size_t>(rep_.p));
    for (const auto& l : w.exponents) r = r * rhoT_power(-l) * s_inv_;
    if (w.sign < 0) r = minus_ * r;
    return r;
}

std::optional<IntegerMatrix> RepEvaluator::rho_of_inverse_exact(const EichlerWord& w) const {
    if (!exact()) return std::nullopt;
    IntegerMatrix r = IntegerMatrix::identity(static_cast<std::size_t>(rep_.p));
    for (const auto& l : w.exponents) r = r * *rhoT_power_exact(-l) * *exact_s_inv_;
    if (w.sign < 0) r = *exact_minus_ * r;
    return r;
}

BoundChain bound_chain(const RepEvaluator& ev, const EichlerWord& w, bool inverse) {
    BoundChain b;
    b.nu = w.nu();
    b.inverse = inverse;
    b.trailing_zero = !w.single_factor() && w.last() == 0;
    const double p = static_cast<double>(ev.rep().p);
    const double s_norm = inverse ? max_norm(ev.rep().rhoS * ev.rep().rhoS * ev.rep().rhoS) : ev.rhoS_norm();
    auto t_norm = [&](const Integer& l) { return ev.rhoT_power_norm(inverse ? Integer(-l) : l); };

    // A single factor S T^{l_0} is the nu = -1 instance of the first form.
    long p_exp, s_exp, top;
    if (b.trailing_zero) {
        p_exp = 2 * b.nu + 1;
        s_exp = b.nu;
        top = b.nu;
    } else {
        p_exp = 2 * b.nu + 2;
        s_exp = b.nu + 2;
        top = b.nu + 1;
    }
    double rhs = std::pow(p, static_cast<double>(p_exp)) * std::pow(s_norm, static_cast<double>(s_exp));
    for (long j = 0; j <= top; ++j) rhs *= t_norm(w.exponents[j]);
    if (w.sign < 0 && !ev.minus_identity_scalar()) rhs *= p * ev.minus_identity_norm();
    b.rhs = rhs;

    if (ev.exact()) {
        const IntegerMatrix m = inverse ? *ev.rho_of_inverse_exact(w) : *ev.rho_of_exact(w);
        b.lhs = max_norm_exact(m);
    } else {
        b.lhs = max_norm(inverse ? ev.rho_of_inverse(w) : ev.rho_of(w));
    }
    // Integer data makes both sides exact integers below 2^53 in the
    // enumerated ranges; numeric data gets a relative slack of 1e-12.
    b.pass = ev.exact() ? b.lhs <= b.rhs : b.lhs <= b.rhs * (1 + 1e-12);
    return b;
}

namespace {

struct Sample {
    std::int64_t c;
    double x, y;
};

double trailing_adjustment(const EichlerWord& w, long s) {
    if (w.single_factor() || w.last() != 0 || s <= 1) return 0.0;
    return static_cast<double>(s - 1) * std::log(abs(w.exponents[w.nu()]).get_d());
}

long block_bound(const RepEvaluator& ev) { return ev.rep().jordan ? ev.rep().jordan->s() : ev.rep().p; }

}  // namespace

FittedConstants fit_polynomial_exponent(const RepEvaluator& ev, std::int64_t c_max, std::int64_t d_max) {
    if (c_max < 10) throw std::invalid_argument("fit needs c_max >= 10");
    if (d_max <= 0) d_max = c_max;
    const long s = block_bound(ev);
    struct Chunk {
        std::vector<Sample> samples;
        double lame = 0;
    };
    const auto chunks = parallel_chunks<Chunk>(1, c_max + 1, [&](std::int64_t lo, std::int64_t hi) {
        Chunk out;
        for (const auto& g : GammaRange(hi - 1, d_max, lo)) {
            const EichlerWord w = decompose_word(g);
            const double norm = max_norm(ev.rho_of(w));
            const double cd = Integer(g.c * g.c + g.d * g.d).get_d();
            out.samples.push_back({g.c.get_si(), std::log(cd), std::log(norm) - trailing_adjustment(w, s)});
            out.lame = std::max(out.lame, lame_ratio(w, g));
        }
        return out;
    });

    FittedConstants k;
    k.c_max = c_max;
    k.d_max = d_max;
    std::vector<double> tx, ty;
    std::vector<Sample> validation;
    for (const auto& ch : chunks) {
        k.Kemp = std::max(k.Kemp, ch.lame);
        for (const auto& smp : ch.samples) {
            if (smp.c % 2 == 1) {
                tx.push_back(smp.x);
                ty.push_back(smp.y);
            } else {
                validation.push_back(smp);
            }
        }
    }
    k.training = static_cast<std::int64_t>(tx.size());
    k.validation = static_cast<std::int64_t>(validation.size());

    const auto [ymin, ymax] = std::minmax_element(ty.begin(), ty.end());
    double intercept;
    if (ty.empty() || *ymax - *ymin < 1e-12) {
        k.degenerate = true;
        k.K4 = 0;
        intercept = ty.empty() ? 0.0 : *ymax;
    } else {
        const kernels::Moments mo = kernels::moments(tx, ty);
        const double denom = mo.n * mo.sxx - mo.sx * mo.sx;
        k.K4 = (mo.n * mo.sxy - mo.sx * mo.sy) / denom;
        intercept = (mo.sy - k.K4 * mo.sx) / mo.n;
        for (std::size_t i = 0; i < tx.size(); ++i)
            k.max_residual = std::max(k.max_residual, ty[i] - (intercept + k.K4 * tx[i]));
    }
    const double log_k3 = intercept + k.max_residual;
    k.K3 = std::exp(log_k3);
    k.alpha = 2 * k.K4;
    if (ev.rep().jordan) k.Cs = norm_bound_constant(*ev.rep().jordan, 1000);

    for (const auto& smp : validation) {
        const double excess = smp.y - (log_k3 + k.K4 * smp.x);
        k.worst_validation_ratio = std::max(k.worst_validation_ratio, std::exp(excess));
        if (excess > 1e-12) ++k.validation_violations;
    }
    return k;
}

double polynomial_bound(const FittedConstants& k, const EichlerWord& w, const GammaMatrix& g, long s) {
    const double cd = Integer(g.c * g.c + g.d * g.d).get_d();
    return k.K3 * std::pow(cd, k.K4) * std::exp(trailing_adjustment(w, s));
}

InverseCheck inverse_bound_check(const RepEvaluator& ev, const FittedConstants& k, std::int64_t c_max,
                                 std::int64_t d_max) {
    if (d_max <= 0) d_max = c_max;
    const long s = block_bound(ev);
    const auto chunks = parallel_chunks<InverseCheck>(1, c_max + 1, [&](std::int64_t lo, std::int64_t hi) {
        InverseCheck out;
        for (const auto& g : GammaRange(hi - 1, d_max, lo)) {
            if (g.c % 2 != 0) continue;
            const EichlerWord w = decompose_word(g);
            const double ratio = max_norm(ev.rho_of_inverse(w)) / polynomial_bound(k, w, g, s);
            ++out.checked;
            if (ratio > 1 + 1e-12) ++out.violations;
            if (ratio > out.worst_ratio) {
                out.worst_ratio = ratio;
                out.worst = g;
            }
        }
        return out;
    });
    InverseCheck total;
    for (const auto& ch : chunks) {
        total.checked += ch.checked;
        total.violations += ch.violations;
        if (ch.worst_ratio > total.worst_ratio) {
            total.worst_ratio = ch.worst_ratio;
            total.worst = ch.worst;
        }
    }
    return total;
}

namespace {

double json_number(const json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s.find('/') != std::string::npos) return parse_rational(s).get_d();
        std::size_t used = 0;
        const double d = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument("bad number '" + s + "'");
        return d;
    }
    throw std::invalid_argument("expected a number or numeric string");
}

Complex json_complex(const json& v) {
    if (v.is_array() && v.size() == 2) return {json_number(v[0]), json_number(v[1])};
    if (v.is_array() && v.size() == 1) return {json_number(v[0]), 0.0};
    return {json_number(v), 0.0};
}

// Either p*p entries in row order or p rows of p entries; an entry is a
// number, a numeric string or an [re, im] pair.
ComplexMatrix json_matrix(const json& v, long p, const char* what) {
    if (!v.is_array()) throw std::invalid_argument(std::string(what) + " must be an array");
    ComplexMatrix m(p, p);
    if (v.size() == static_cast<std::size_t>(p * p)) {
        for (long k = 0; k < p * p; ++k) m(k / p, k % p) = json_complex(v[k]);
    } else if (v.size() == static_cast<std::size_t>(p)) {
        for (long i = 0; i < p; ++i) {
            if (!v[i].is_array() || v[i].size() != static_cast<std::size_t>(p))
                throw std::invalid_argument(std::string(what) + " row " + std::to_string(i) + " has the wrong length");
            for (long j = 0; j < p; ++j) m(i, j) = json_complex(v[i][j]);
        }
    } else {
        throw std::invalid_argument(std::string(what) + " has the wrong shape for p = " + std::to_string(p));
    }
    return m;
}

std::string number_string(double x) {
    if (x == std::nearbyint(x) && std::abs(x) < 1e15) return std::to_string(static_cast<long long>(x));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json matrix_json(const ComplexMatrix& m) {
    json entries = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            entries.push_back(json::array({number_string(m(i, j).real()), number_string(m(i, j).imag())}));
    return entries;
}

}  // namespace

Representation read_representation(std::istream& in) {
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("representation file is not valid JSON: ") + e.what());
    }
    if (!j.contains("p") || !j.contains("rhoS") || !j.contains("rhoT"))
        throw std::invalid_argument("representation file needs p, rhoS and rhoT");
    const long p = j["p"].is_string() ? std::stol(j["p"].get<std::string>()) : j["p"].get<long>();
    if (p < 1) throw std::invalid_argument("p must be >= 1");
    const std::string name = j.value("name", std::string("unnamed"));
    const ComplexMatrix s = json_matrix(j["rhoS"], p, "rhoS");
    const ComplexMatrix t = json_matrix(j["rhoT"], p, "rhoT");
    std::optional<JordanSpec> spec;
    ComplexMatrix q;
    if (j.contains("jordan")) {
        const json& jj = j["jordan"];
        JordanSpec js;
        for (const auto& b : jj.at("blocks")) {
            const long m = b.at("m").is_string() ? std::stol(b.at("m").get<std::string>()) : b.at("m").get<long>();
            const Rational mu = b.contains("mu") ? parse_rational(b.at("mu").get<std::string>()) : Rational(0);
            js.blocks.emplace_back(m, mu);
        }
        spec = js;
        q = jj.contains("basis_change") ? json_matrix(jj["basis_change"], p, "basis_change") : ComplexMatrix::identity(p);
    }
    return make_representation(name, s, t, spec, q);
}

void write_representation(std::ostream& out, const Representation& rep) {
    json j;
    j["name"] = rep.name;
    j["p"] = std::to_string(rep.p);
    j["rhoS"] = matrix_json(rep.rhoS);
    j["rhoT"] = matrix_json(rep.rhoT);
    if (rep.jordan) {
        json blocks = json::array();
        for (const auto& b : rep.jordan->blocks) blocks.push_back({{"m", std::to_string(b.m)}, {"mu", to_string(b.mu)}});
        j["jordan"] = {{"blocks", blocks}, {"basis_change", matrix_json(rep.basis_change)}};
    }
    out << j.dump(2) << "\n";
}

}  // namespace lvvmf
