#include "lvvmf/cli.hpp"

#include "lvvmf/growth.hpp"
#include "lvvmf/log_expansion.hpp"
#include "lvvmf/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace lvvmf::cli {

using json = nlohmann::ordered_json;

std::string number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Report {
    json config = json::object();
    json results = json::object();
    bool pass = true;
    std::string raw;  // written verbatim instead of an envelope when set
};

std::string str(std::int64_t v) { return std::to_string(v); }
std::string str(const Integer& v) { return to_string(v); }

json gamma_json(const GammaMatrix& g) {
    return json::array({str(g.a), str(g.b), str(g.c), str(g.d)});
}

json complex_json(const Complex& z) { return json::array({number(z.real()), number(z.imag())}); }

json strings(const std::vector<std::string>& v) {
    json a = json::array();
    for (const auto& s : v) a.push_back(s);
    return a;
}

Integer parse_integer(const std::string& s) {
    Integer v;
    if (s.empty() || v.set_str(s, 10) != 0) throw InputError("not an integer: '" + s + "'");
    return v;
}

Rational parse_angle(const std::string& s) {
    try {
        return parse_rational(s);
    } catch (const std::exception&) {
        throw InputError("not a rational number: '" + s + "'");
    }
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return in;
}

// ---- decompose -------------------------------------------------------------

Report run_decompose(const std::vector<std::string>& entries) {
    Report r;
    if (entries.size() != 4) throw InputError("decompose needs four integers a b c d");
    GammaMatrix g;
    try {
        g = make_gamma(parse_integer(entries[0]), parse_integer(entries[1]), parse_integer(entries[2]),
                       parse_integer(entries[3]));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    r.config["gamma"] = gamma_json(g);
    const Decomposition dec = eichler_decompose(g);
    if (const auto* t = std::get_if<Translation>(&dec)) {
        r.results["kind"] = "translation";
        r.results["sign"] = std::to_string(t->sign);
        r.results["b"] = str(t->b);
        r.results["reconstructs"] = reconstruct(*t) == g;
        r.pass = reconstruct(*t) == g;
        return r;
    }
    const EichlerWord& w = std::get<EichlerWord>(dec);
    json exps = json::array();
    for (const auto& l : w.exponents) exps.push_back(str(l));
    const WordBoundReport p = verify_word_bounds(w, g);
    const TailDichotomy t = check_tail_dichotomy(w, g);
    const std::string sign_error = sign_pattern_error(w);
    const bool round_trip = reconstruct(w) == g;
    r.results["kind"] = "word";
    r.results["sign"] = std::to_string(w.sign);
    r.results["exponents"] = exps;
    r.results["nu"] = std::to_string(w.nu());
    r.results["length"] = std::to_string(eichler_length(w));
    r.results["word"] = to_string(w);
    r.results["reconstructs"] = round_trip;
    r.results["sign_pattern"] = sign_error.empty() ? "ok" : sign_error;
    r.results["bounds"] = {{"pass", p.pass},
                          {"l0_case", p.l0_case},
                          {"trailing_zero", p.trailing_zero},
                          {"max_ratio", number(p.max_ratio)},
                          {"violations", strings(p.violations)}};
    r.results["tail_dichotomy"] = {{"exempt", t.exempt}, {"holds", t.holds}, {"detail", t.detail}};
    r.pass = p.pass && sign_error.empty() && round_trip;
    return r;
}

// ---- verify ----------------------------------------------------------------

Report run_verify_words(std::int64_t c_max, std::int64_t d_max, long translates, bool csv) {
    Report r;
    WordSweepOptions o;
    o.c_max = c_max;
    o.d_max = d_max > 0 ? d_max : c_max;
    o.translate_radius = translates;
    o.keep_rows = csv;
    r.config = {{"cmax", str(o.c_max)}, {"dmax", str(o.d_max)}, {"translates", str(translates)}};
    const WordSweep s = word_sweep(o);
    r.pass = s.pass();
    r.results = {{"checked", str(s.checked)},
                 {"roundtrip_violations", str(s.roundtrip_violations)},
                 {"sign_violations", str(s.sign_violations)},
                 {"dichotomy_violations", str(s.dichotomy_violations)},
                 {"dichotomy_exempt", str(s.dichotomy_exempt)},
                 {"bound_violations", str(s.bound_violations)},
                 {"trailing_zero", str(s.trailing_zero)},
                 {"max_ratio", number(s.max_ratio)},
                 {"failures", strings(s.failures)}};
    if (translates > 0) {
        r.results["translates"] = {{"checked", str(s.translate_checked)},
                                   {"dichotomy_violations", str(s.translate_dichotomy_violations)},
                                   {"examples", strings(s.translate_failures)}};
    }
    if (csv) {
        std::ostringstream out;
        out << "c,d,nu,length,max_ratio\n";
        for (const auto& row : s.rows)
            out << row.c << ',' << row.d << ',' << row.nu << ',' << row.length << ',' << number(row.max_ratio) << '\n';
        out << "# checked " << s.checked << ", violations "
            << s.roundtrip_violations + s.sign_violations + s.dichotomy_violations + s.bound_violations << ", "
            << (r.pass ? "pass" : "fail") << '\n';
        r.raw = out.str();
    }
    return r;
}

Report run_verify_lame(std::int64_t fib_c_max, std::int64_t c_max) {
    Report r;
    r.config = {{"fib_cmax", str(fib_c_max)}, {"cmax", str(c_max)}};
    const LameSweep s = lame_sweep(fib_c_max, c_max);
    r.pass = s.pass();
    r.results = {{"fibonacci_sup", number(s.fibonacci_sup)},
                 {"fibonacci_argmax", gamma_json(s.fibonacci_argmax)},
                 {"enumerated", str(s.enumerated)},
                 {"enumerated_max", number(s.enumerated_max)},
                 {"enumerated_argmax", gamma_json(s.enumerated_argmax)},
                 {"exceedances", str(s.exceedances)}};
    return r;
}

Representation load_rep(const std::string& path, long sym) {
    if (!path.empty()) {
        auto in = open_input(path);
        try {
            return read_representation(in);
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
    }
    if (sym < 0) throw InputError("give --rep FILE or --sym M");
    return sym_power_rep(sym);
}

json fitted_json(const FittedConstants& k) {
    return {{"K3", number(k.K3)},
            {"K4", number(k.K4)},
            {"K5", number(k.alpha)},
            {"Kemp", number(k.Kemp)},
            {"Cs", number(k.Cs)},
            {"alpha", number(k.alpha)},
            {"max_residual", number(k.max_residual)},
            {"degenerate", k.degenerate},
            {"cmax", str(k.c_max)},
            {"dmax", str(k.d_max)},
            {"training", str(k.training)},
            {"validation", str(k.validation)},
            {"violations", str(k.validation_violations)},
            {"worst_ratio", number(k.worst_validation_ratio)}};
}

Report run_verify_norms(const std::string& path, long sym, std::int64_t c_max, std::int64_t chain_c_max) {
    Report r;
    const Representation rep = load_rep(path, sym);
    r.config = {{"rep", rep.name}, {"p", str(rep.p)}, {"cmax", str(c_max)}, {"chain_cmax", str(chain_c_max)}};
    const ValidationReport v = validate(rep);
    r.results["validation"] = {{"pass", v.pass},
                               {"exact", v.exact},
                               {"relation_error", number(v.relation_error)},
                               {"jordan_error", number(v.jordan_error)},
                               {"message", v.message}};
    if (!v.pass) {
        r.pass = false;
        return r;
    }
    const RepEvaluator ev(rep);
    const NormSweep s = norm_sweep(ev, chain_c_max, c_max);
    r.results["fit"] = fitted_json(s.fit);
    r.results["chain"] = {{"checked", str(s.chain_checked)},
                          {"violations", str(s.chain_violations)},
                          {"inverse_violations", str(s.inverse_chain_violations)},
                          {"worst_ratio", number(s.worst_chain_ratio)},
                          {"failures", strings(s.failures)}};
    r.results["inverse_fit"] = {{"checked", str(s.inverse.checked)},
                                {"violations", str(s.inverse.violations)},
                                {"worst_ratio", number(s.inverse.worst_ratio)},
                                {"worst", gamma_json(s.inverse.worst)},
                                {"asserted", false}};
    r.pass = s.pass();
    return r;
}

Report run_verify_jordan(long m_max, long l_small, long l_large, std::int64_t pairs, std::int64_t l_max,
                         std::uint64_t seed) {
    Report r;
    r.config = {{"mmax", str(m_max)}, {"lsmall", str(l_small)}, {"llarge", str(l_large)},
                {"pairs", str(pairs)}, {"lmax", str(l_max)},      {"seed", std::to_string(seed)}};
    json rows = json::array();
    for (long m = 0; m <= m_max; ++m) {
        const JordanStability j = jordan_stability(m, l_small, l_large);
        const bool ok = j.change() < 1e-6;
        r.pass = r.pass && ok;
        rows.push_back({{"m", str(m)},
                        {"s", str(j.s)},
                        {"ratio_small", number(j.ratio_small)},
                        {"ratio_large", number(j.ratio_large)},
                        {"jordan_small", number(j.jordan_small)},
                        {"jordan_large", number(j.jordan_large)},
                        {"change", number(j.change())},
                        {"stable", ok}});
    }
    const GroupLawCheck g = block_power_group_law(pairs, l_max, seed);
    r.pass = r.pass && g.failures == 0;
    r.results = {{"stability", rows},
                 {"group_law", {{"pairs", str(g.pairs)}, {"failures", str(g.failures)}, {"first_failure", g.first_failure}}}};
    return r;
}

Report run_verify_bmatrix(long m_max, long vanish_max) {
    Report r;
    r.config = {{"mmax", str(m_max)}, {"vanish_max", str(vanish_max)}};
    const BMatrixCheck b = bmatrix_check(m_max, vanish_max);
    json failures = json::array();
    for (long m : b.identity_failures) failures.push_back(str(m));
    r.results = {{"identity_failures", failures}, {"vanishing_failures", strings(b.vanishing_failures)}};
    r.pass = b.pass();
    return r;
}

Report run_verify_lnu(long samples, std::uint64_t seed) {
    Report r;
    r.config = {{"samples", str(samples)}, {"seed", std::to_string(seed)}};
    const auto taus = l_nu_samples(samples, seed);
    const LNuReport l = l_nu_unit_check(taus);
    json bad = json::array();
    for (const auto& c : l.cases)
        if (!c.ok) bad.push_back({{"tau", complex_json(c.tau)}, {"transport", gamma_json(c.transport)}, {"l_nu", str(c.l_nu)}});
    r.results = {{"points", str(l.points)},
                 {"trailing_zero_cases", str(l.trailing_zero_cases)},
                 {"violations", str(l.violations)},
                 {"failures", bad}};
    r.pass = l.violations == 0;
    return r;
}

// ---- jordan / bmatrix ------------------------------------------------------

Report run_jordan_power(long m, const std::string& mu, const std::string& l) {
    Report r;
    if (m < 1) throw InputError("--m must be >= 1");
    const Rational angle = parse_angle(mu);
    if (angle < 0 || angle >= 1) throw InputError("--mu must lie in [0, 1)");
    const Integer exponent = parse_integer(l);
    r.config = {{"m", str(m)}, {"mu", to_string(angle)}, {"l", str(exponent)}};
    const PhasedMatrix pm = block_power_exact(JordanBlock(m, angle), exponent);
    json rows = json::array();
    for (std::size_t i = 0; i < pm.unit.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < pm.unit.cols(); ++j) row.push_back(str(pm.unit(i, j)));
        rows.push_back(row);
    }
    r.results = {{"phase_turns", to_string(pm.turn)}, {"lambda_power", complex_json(unit_root(pm.turn))}, {"unit", rows}};
    return r;
}

Report run_bmatrix(long m, bool inverse) {
    Report r;
    if (m < 1) throw InputError("--m must be >= 1");
    r.config = {{"m", str(m)}, {"inverse", inverse}};
    const PolyMatrix b = inverse ? b_matrix_inverse(m) : b_matrix(m);
    json rows = json::array();
    for (std::size_t i = 0; i < b.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < b.cols(); ++j) row.push_back(b(i, j).to_string("x"));
        rows.push_back(row);
    }
    r.results["matrix"] = rows;
    return r;
}

// ---- qexp ------------------------------------------------------------------

Report run_qexp_gen(bool delta, long eisenstein, long order) {
    Report r;
    if (delta == (eisenstein != 0)) throw InputError("give exactly one of --delta and --eisenstein K");
    if (order < 0) throw InputError("--order must be >= 0");
    QSeries s;
    try {
        s = delta ? delta_series(order) : eisenstein_series(eisenstein, order);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    std::ostringstream out;
    write_series(out, s);
    r.raw = out.str();
    return r;
}

// Expansion files: {"basis": "binomial"|"logpower",
//                   "components": [[{"t": "0", "series": "file"}, ...], ...]}
// with series paths relative to the expansion file.
Expansion read_expansion(const std::string& path) {
    auto in = open_input(path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw InputError(std::string("expansion file is not valid JSON: ") + e.what());
    }
    Expansion e;
    const std::string basis = j.value("basis", std::string("binomial"));
    if (basis == "binomial") {
        e.basis = ExpansionBasis::binomial;
    } else if (basis == "logpower" || basis == "log") {
        e.basis = ExpansionBasis::logpower;
    } else {
        throw InputError("unknown basis '" + basis + "'");
    }
    const auto dir = std::filesystem::path(path).parent_path();
    if (!j.contains("components") || !j["components"].is_array()) throw InputError("expansion file needs components");
    for (const auto& comp : j["components"]) {
        std::vector<ExpansionTerm> terms;
        for (const auto& term : comp) {
            const json& tv = term.at("t");
            const long t = tv.is_string() ? std::stol(tv.get<std::string>()) : tv.get<long>();
            auto sin = open_input((dir / term.at("series").get<std::string>()).string());
            try {
                terms.push_back({t, read_series(sin)});
            } catch (const std::exception& ex) {
                throw InputError(std::string("series file: ") + ex.what());
            }
        }
        e.components.push_back(std::move(terms));
    }
    return e;
}

Report run_qexp_convert(const std::string& in_path, const std::string& to, const std::string& out_dir) {
    Report r;
    if (to != "log" && to != "binomial") throw InputError("--to must be log or binomial");
    if (out_dir.empty()) throw InputError("--out-dir is required");
    r.config = {{"in", in_path}, {"to", to}, {"out_dir", out_dir}};
    const Expansion e = read_expansion(in_path);
    Expansion converted;
    if (to == "log") {
        converted = e.basis == ExpansionBasis::logpower ? e : binomial_to_logpower(e);
    } else {
        converted = e.basis == ExpansionBasis::binomial ? e : logpower_to_binomial(e);
    }
    std::filesystem::create_directories(out_dir);
    json comps = json::array();
    for (std::size_t c = 0; c < converted.components.size(); ++c) {
        json terms = json::array();
        for (const auto& term : converted.components[c]) {
            const std::string name = "c" + std::to_string(c) + "_t" + std::to_string(term.t) + ".series";
            std::ofstream out(std::filesystem::path(out_dir) / name);
            write_series(out, term.series);
            terms.push_back({{"t", std::to_string(term.t)}, {"series", name}});
        }
        comps.push_back(terms);
    }
    const json expansion = {{"basis", to_string(converted.basis)}, {"components", comps}};
    std::ofstream(std::filesystem::path(out_dir) / "expansion.json") << expansion.dump(2) << "\n";
    r.results = {{"basis", to_string(converted.basis)}, {"components", str(static_cast<std::int64_t>(comps.size()))},
                 {"expansion", (std::filesystem::path(out_dir) / "expansion.json").string()}};
    if (converted.basis == ExpansionBasis::binomial) {
        try {
            const PolyQExpansion block = block_from_expansion(converted);
            r.results["block_form"] = true;
            r.results["block_size"] = str(block.m());
        } catch (const std::invalid_argument&) {
            r.results["block_form"] = false;
        }
    }
    return r;
}

// ---- growth harness --------------------------------------------------------

LVVMF load_example(const std::string& name, long order) {
    try {
        return named_example(name, order);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

Report run_growth(const std::string& example, long order, std::int64_t fit_c_max, long n_min, long n_max,
                  const std::string& csv_path) {
    Report r;
    r.config = {{"example", example}, {"order", str(order)}, {"fit_cmax", str(fit_c_max)},
                {"nmin", str(n_min)},  {"nmax", str(n_max)}};
    if (n_max > order) throw InputError("--nmax must not exceed --order");
    const LVVMF f = load_example(example, order);
    const RepEvaluator ev(f.rep);
    const FittedConstants k = fit_polynomial_exponent(ev, fit_c_max);
    const GrowthReport g = coefficient_growth(f, k, n_min, n_max);
    json comps = json::array();
    for (const auto& c : g.components)
        comps.push_back({{"block", str(c.block)},
                         {"index", str(c.index)},
                         {"skipped", c.skipped},
                         {"note", c.note},
                         {"beta", number(c.beta)},
                         {"used", str(c.used)}});
    r.results = {{"k", str(f.k)},
                 {"kind", to_string(g.kind)},
                 {"beta", number(g.beta)},
                 {"window", json::array({str(g.n_min), str(g.n_max)})},
                 {"alpha", number(g.alpha)},
                 {"sigma", number(g.sigma)},
                 {"bound", number(g.bound)},
                 {"delta", number(g.delta)},
                 {"empty", g.empty},
                 {"fitted_constants", fitted_json(k)},
                 {"components", comps}};
    r.pass = !g.empty && g.beta <= g.bound;
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw InputError("cannot write '" + csv_path + "'");
        out << "block,index,n,a\n";
        for (std::size_t b = 0; b < f.blocks.size(); ++b)
            for (std::size_t t = 0; t < f.blocks[b].h.size(); ++t) {
                const QSeries& h = f.blocks[b].h[t];
                for (long n = std::max(0L, h.n_min()); n <= h.order(); ++n)
                    out << b << ',' << t << ',' << n << ',' << to_string(h.coeff(n)) << '\n';
            }
        r.results["csv"] = csv_path;
    }
    return r;
}

Report run_slashcheck(const std::string& example, long order, std::int64_t c_max, long samples, std::uint64_t seed) {
    Report r;
    r.config = {{"example", example}, {"order", str(order)}, {"cmax", str(c_max)}, {"samples", str(samples)},
                {"seed", std::to_string(seed)}};
    const LVVMF f = load_example(example, order);
    const SlashReport s = slash_check(f, c_max, samples, seed);
    r.results = {{"k", str(f.k)},
                 {"kind", to_string(f.kind)},
                 {"checked", str(s.checked)},
                 {"max_error", number(s.max_error)},
                 {"max_tail", number(s.max_tail)},
                 {"tolerance", number(s.tolerance)},
                 {"min_image_height", number(s.min_image_height)},
                 {"inconclusive", s.inconclusive},
                 {"worst", {{"gamma", gamma_json(s.worst.gamma)}, {"tau", complex_json(s.worst.tau)}}}};
    r.pass = s.pass;
    return r;
}

Report run_domainsup(const std::string& example, long order, double sigma, double delta, double cap, long x_points) {
    Report r;
    r.config = {{"example", example}, {"order", str(order)}, {"sigma", number(sigma)},
                {"delta", number(delta)}, {"cap", number(cap)},  {"x_points", str(x_points)}};
    const LVVMF f = load_example(example, order);
    DomainGrid grid;
    grid.height_cap = cap;
    grid.x_points = x_points;
    const DomainSup lo = fundamental_domain_sup(f, sigma, delta, grid);
    grid.height_cap = 2 * cap;
    const DomainSup hi = fundamental_domain_sup(f, sigma, delta, grid);
    const double change = lo.sup > 0 ? std::abs(hi.sup - lo.sup) / lo.sup : std::abs(hi.sup);
    json per = json::array();
    for (double v : hi.per_component) per.push_back(number(v));
    r.results = {{"sup", number(lo.sup)},
                 {"sup_doubled_cap", number(hi.sup)},
                 {"relative_change", number(change)},
                 {"argmax", complex_json(hi.argmax)},
                 {"per_component", per},
                 {"points", str(hi.points)}};
    r.pass = std::isfinite(hi.sup) && change < 0.01;
    return r;
}

Report run_rep_sym(long m) {
    Report r;
    if (m < 0) throw InputError("--m must be >= 0");
    std::ostringstream out;
    write_representation(out, sym_power_rep(m));
    r.raw = out.str();
    return r;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Eichler words, Jordan blocks, polynomial q-expansions and growth checks", kTool};
    app.require_subcommand(1);
    std::uint64_t seed = 1;
    std::string format = "json", out_path;
    app.add_option("--seed", seed, "seed for randomized checks");
    app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out_path, "write the report to FILE");

    std::vector<std::string> entries;
    auto* decompose = app.add_subcommand("decompose", "canonical word of gamma = [[a, b], [c, d]]");
    decompose->add_option("entries", entries, "a b c d")->expected(4)->required();

    auto* verify = app.add_subcommand("verify", "range checks");
    verify->require_subcommand(1);
    std::int64_t c_max = 200, d_max = 0, fib_c_max = 10000, chain_c_max = 100, pairs = 1000, l_max = 1000000;
    long translates = 0, sym = -1, m_max = 6, l_small = 1000, l_large = 10000, vanish_max = 6, samples = 100;
    std::string rep_path;
    auto* v_words = verify->add_subcommand("words", "round trip, sign pattern, tail dichotomy and product bounds");
    v_words->add_option("--cmax", c_max)->check(CLI::PositiveNumber);
    v_words->add_option("--dmax", d_max, "defaults to --cmax")->check(CLI::NonNegativeNumber);
    v_words->add_option("--translates", translates, "also sweep T^k gamma, |k| <= R")->check(CLI::NonNegativeNumber);
    auto* v_lame = verify->add_subcommand("lame", "word length against ln c");
    v_lame->add_option("--fib-cmax", fib_c_max)->check(CLI::PositiveNumber);
    v_lame->add_option("--cmax", c_max)->check(CLI::PositiveNumber);
    auto* v_norms = verify->add_subcommand("norms", "norm bound chain and fitted polynomial bound");
    v_norms->add_option("--rep", rep_path, "representation file (JSON)");
    v_norms->add_option("--sym", sym, "use Sym^M instead of a file")->check(CLI::NonNegativeNumber);
    v_norms->add_option("--cmax", c_max, "fit range")->check(CLI::Range(10, 100000));
    v_norms->add_option("--chain-cmax", chain_c_max)->check(CLI::PositiveNumber);
    auto* v_jordan = verify->add_subcommand("jordan", "power norm stability and the block power group law");
    v_jordan->add_option("--mmax", m_max)->check(CLI::NonNegativeNumber);
    v_jordan->add_option("--lsmall", l_small)->check(CLI::PositiveNumber);
    v_jordan->add_option("--llarge", l_large)->check(CLI::PositiveNumber);
    v_jordan->add_option("--pairs", pairs)->check(CLI::NonNegativeNumber);
    v_jordan->add_option("--lmax", l_max)->check(CLI::PositiveNumber);
    auto* v_bmatrix = verify->add_subcommand("bmatrix", "B_m B_m^{-1} = I and the vanishing identities");
    long bm_max = 12;
    v_bmatrix->add_option("--mmax", bm_max)->check(CLI::PositiveNumber);
    v_bmatrix->add_option("--vanish-max", vanish_max)->check(CLI::NonNegativeNumber);
    auto* v_lnu = verify->add_subcommand("lnu", "|l_nu| = 1 for transports of x + i/n");
    v_lnu->add_option("--samples", samples)->check(CLI::PositiveNumber);

    auto* jordan = app.add_subcommand("jordan", "modified Jordan blocks");
    jordan->require_subcommand(1);
    long jm = 1;
    std::string mu = "0", l = "1";
    auto* j_power = jordan->add_subcommand("power", "exact J_{m,lambda}^l");
    j_power->add_option("--m", jm)->required();
    j_power->add_option("--mu", mu, "lambda = e^{2 pi i mu}");
    j_power->add_option("--l", l)->required();

    auto* bmatrix = app.add_subcommand("bmatrix", "B_m(x) or its inverse");
    long bm = 1;
    bool b_inverse = false;
    bmatrix->add_option("--m", bm)->required();
    bmatrix->add_flag("--inverse", b_inverse);

    auto* qexp = app.add_subcommand("qexp", "q-series files");
    qexp->require_subcommand(1);
    bool q_delta = false;
    long q_eis = 0, q_order = 100;
    auto* q_gen = qexp->add_subcommand("gen", "write Delta or E_k");
    auto* delta_flag = q_gen->add_flag("--delta", q_delta);
    q_gen->add_option("--eisenstein", q_eis, "weight k")->excludes(delta_flag);
    q_gen->add_option("--order", q_order);
    std::string conv_in, conv_to, conv_dir;
    auto* q_convert = qexp->add_subcommand("convert", "binomial <-> log-power expansion files");
    q_convert->add_option("--in", conv_in)->required()->check(CLI::ExistingFile);
    q_convert->add_option("--to", conv_to)->required()->check(CLI::IsMember({"log", "binomial"}));
    q_convert->add_option("--out-dir", conv_dir)->required();

    std::string example = "sym1-delta", csv_path;
    long order = 2000, n_min = 100, n_max = 2000;
    std::int64_t fit_c_max = 200;
    auto* growth = app.add_subcommand("growth", "coefficient growth of an example");
    growth->add_option("--example", example);
    growth->add_option("--order", order)->check(CLI::PositiveNumber);
    growth->add_option("--fit-cmax", fit_c_max)->check(CLI::Range(10, 100000));
    growth->add_option("--nmin", n_min)->check(CLI::PositiveNumber);
    growth->add_option("--nmax", n_max)->check(CLI::PositiveNumber);
    growth->add_option("--csv", csv_path, "dump (n, a(n)) of every h-series");

    std::int64_t slash_c_max = 5;
    long slash_samples_n = 10, slash_order = 60;
    auto* slash = app.add_subcommand("slashcheck", "rho(gamma) F = F|_k gamma");
    slash->add_option("--example", example);
    slash->add_option("--order", slash_order)->check(CLI::PositiveNumber);
    slash->add_option("--cmax", slash_c_max)->check(CLI::PositiveNumber);
    slash->add_option("--samples", slash_samples_n)->check(CLI::PositiveNumber);

    double sigma = 5.5, delta = 0, cap = 25;
    long x_points = 101, dom_order = 60;
    auto* domain = app.add_subcommand("domainsup", "sup of y^sigma |F| over the fundamental domain");
    domain->add_option("--example", example);
    domain->add_option("--order", dom_order)->check(CLI::PositiveNumber);
    domain->add_option("--sigma", sigma);
    domain->add_option("--delta", delta);
    domain->add_option("--cap", cap, "height cap; the check doubles it")->check(CLI::Range(1.5, 1e4));
    domain->add_option("--x-points", x_points)->check(CLI::Range(2, 100000));

    auto* rep = app.add_subcommand("rep", "representation files");
    rep->require_subcommand(1);
    long rep_m = 1;
    auto* rep_sym = rep->add_subcommand("sym", "write Sym^m");
    rep_sym->add_option("--m", rep_m)->required();

    std::vector<std::string> argv_store{kTool};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    Report report;
    std::string command;
    try {
        if (decompose->parsed()) {
            command = "decompose";
            report = run_decompose(entries);
        } else if (v_words->parsed()) {
            command = "verify words";
            report = run_verify_words(c_max, d_max, translates, format == "csv");
        } else if (v_lame->parsed()) {
            command = "verify lame";
            report = run_verify_lame(fib_c_max, v_lame->count("--cmax") ? c_max : 2000);
        } else if (v_norms->parsed()) {
            command = "verify norms";
            report = run_verify_norms(rep_path, sym, c_max, chain_c_max);
        } else if (v_jordan->parsed()) {
            command = "verify jordan";
            report = run_verify_jordan(m_max, l_small, l_large, pairs, l_max, seed);
        } else if (v_bmatrix->parsed()) {
            command = "verify bmatrix";
            report = run_verify_bmatrix(bm_max, vanish_max);
        } else if (v_lnu->parsed()) {
            command = "verify lnu";
            report = run_verify_lnu(samples, seed);
        } else if (j_power->parsed()) {
            command = "jordan power";
            report = run_jordan_power(jm, mu, l);
        } else if (bmatrix->parsed()) {
            command = "bmatrix";
            report = run_bmatrix(bm, b_inverse);
        } else if (q_gen->parsed()) {
            command = "qexp gen";
            report = run_qexp_gen(q_delta, q_eis, q_order);
        } else if (q_convert->parsed()) {
            command = "qexp convert";
            report = run_qexp_convert(conv_in, conv_to, conv_dir);
        } else if (growth->parsed()) {
            command = "growth";
            report = run_growth(example, order, fit_c_max, n_min, n_max, csv_path);
        } else if (slash->parsed()) {
            command = "slashcheck";
            report = run_slashcheck(example, slash_order, slash_c_max, slash_samples_n, seed);
        } else if (domain->parsed()) {
            command = "domainsup";
            report = run_domainsup(example, dom_order, sigma, delta, cap, x_points);
        } else if (rep_sym->parsed()) {
            command = "rep sym";
            report = run_rep_sym(rep_m);
        } else {
            err << app.help();
            return 2;
        }
    } catch (const InputError& e) {
        err << kTool << ": " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedInput& e) {
        err << kTool << ": " << e.what() << "\n";
        return 2;
    }

    std::string text;
    if (!report.raw.empty()) {
        text = report.raw;
    } else {
        json envelope;
        envelope["tool"] = kTool;
        envelope["version"] = kVersion;
        json config = {{"command", command}, {"seed", std::to_string(seed)}};
        for (const auto& [key, value] : report.config.items()) config[key] = value;
        envelope["config"] = config;
        envelope["results"] = report.results;
        envelope["pass"] = report.pass;
        text = envelope.dump(2) + "\n";
    }
    if (out_path.empty()) {
        out << text;
    } else {
        std::ofstream file(out_path);
        if (!file) {
            err << kTool << ": cannot write '" << out_path << "'\n";
            return 2;
        }
        file << text;
    }
    return report.pass ? 0 : 1;
}

}  // namespace lvvmf::cli
