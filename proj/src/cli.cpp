#include "gkcs/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "gkcs/algebra.hpp"
#include "gkcs/coherent.hpp"
#include "gkcs/errors.hpp"
#include "gkcs/measures.hpp"
#include "gkcs/spectrum.hpp"
#include "gkcs/stats.hpp"

namespace gkcs::cli {

namespace {

/// Bad flag values; mapped to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string format_double(double v) {
    if (v == 0.0) v = 0.0;  // no signed zeros in output
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const Cell& c) {
    if (const auto* s = std::get_if<std::string>(&c)) {
        if (s->find_first_of(",\"\r\n") == std::string::npos) return *s;
        std::string q = "\"";
        for (const char ch : *s) {
            if (ch == '"') q += '"';
            q += ch;
        }
        return q + "\"";
    }
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
    return format_double(std::get<double>(c));
}

nlohmann::ordered_json json_value(const Cell& c) {
    if (const auto* v = std::get_if<double>(&c)) return *v == 0.0 ? 0.0 : *v;
    return std::visit([](const auto& v) { return nlohmann::ordered_json(v); }, c);
}

struct RunConfig {
    std::string command;
    double B = 1.0;
    double d = std::numbers::pi;
    std::string class_name;
    int n_fixed = 0;
    int m_fixed = 0;
    std::vector<double> J;
    double J1 = 0.0;
    double J2 = 0.0;
    double alpha = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double J_prime = 0.0;
    double alpha_prime = 0.0;
    double J2_prime = 0.0;
    double alpha2_prime = 0.0;
    double trunc_eps = coherent::kDefaultTruncEps;
    double tol = 1e-8;
    int k_max = 0;
    int m_max = 0;
    int n_max = 0;
    int l_max = 0;
    std::string format = "csv";
    std::string output;
};

/// Options that were present on the command line.
struct Given {
    CLI::Option* cls = nullptr;
    CLI::Option* n = nullptr;
    CLI::Option* m = nullptr;
    CLI::Option* J = nullptr;
    CLI::Option* J2 = nullptr;
    CLI::Option* J_prime = nullptr;
    CLI::Option* alpha_prime = nullptr;
    CLI::Option* J2_prime = nullptr;
    CLI::Option* alpha2_prime = nullptr;
    CLI::Option* k_max = nullptr;
    CLI::Option* m_max = nullptr;
    CLI::Option* n_max = nullptr;
    CLI::Option* l_max = nullptr;

    static bool has(const CLI::Option* o) { return o != nullptr && o->count() > 0; }
};

int pick(const CLI::Option* o, int value, int fallback) { return Given::has(o) ? value : fallback; }

struct Context {
    RunConfig cfg;
    Given given;
    LayerParams params;
    Report report;
    std::vector<std::string> failures;
};

CSClass resolve_class(const Context& ctx) {
    if (!Given::has(ctx.given.cls)) throw UsageError("--class is required for " + ctx.cfg.command);
    CSClass cls;
    try {
        cls.tag = parse_tag(ctx.cfg.class_name);
    } catch (const DomainError& e) {
        throw UsageError(std::string("--class: ") + e.what());
    }
    switch (cls.tag) {
        case CSTag::FixedN:
        case CSTag::FixedNShifted:
            if (!Given::has(ctx.given.n)) throw UsageError("--n is required for class " + ctx.cfg.class_name);
            if (ctx.cfg.n_fixed < 0) throw UsageError("--n must be nonnegative");
            cls.fixed_index = ctx.cfg.n_fixed;
            break;
        case CSTag::FixedM:
        case CSTag::FixedMShifted:
            if (!Given::has(ctx.given.m)) throw UsageError("--m is required for class " + ctx.cfg.class_name);
            if (ctx.cfg.m_fixed < 0) throw UsageError("--m must be nonnegative");
            cls.fixed_index = ctx.cfg.m_fixed;
            break;
        default: break;
    }
    return cls;
}

/// Row used by nested-class checks that need one fixed-m row.
int nested_row(const Context& ctx) {
    if (ctx.cfg.m_fixed < 0) throw UsageError("--m must be nonnegative");
    return pick(ctx.given.m, ctx.cfg.m_fixed, 0);
}

void require_nonnegative(double v, const char* flag) {
    if (!(v >= 0.0)) throw UsageError(std::string(flag) + " must be nonnegative");
}

double single_J(const Context& ctx) {
    if (ctx.cfg.J.size() > 1) throw UsageError("--J takes a single value for " + ctx.cfg.command);
    const double J = ctx.cfg.J.empty() ? 0.0 : ctx.cfg.J.front();
    require_nonnegative(J, "--J");
    return J;
}

CSLabel resolve_label(const Context& ctx, const CSClass& cls) {
    if (is_one_degree(cls.tag)) return CSLabel::one(single_J(ctx), ctx.cfg.alpha);
    require_nonnegative(ctx.cfg.J1, "--J1");
    require_nonnegative(ctx.cfg.J2, "--J2");
    return CSLabel::two(ctx.cfg.J1, ctx.cfg.J2, ctx.cfg.alpha1, ctx.cfg.alpha2);
}

void add_class_params(Context& ctx, const CSClass& cls) {
    ctx.report.params.emplace_back("class", std::string(to_string(cls.tag)));
    if (cls.fixed_index) ctx.report.params.emplace_back("fixed_index", static_cast<long long>(*cls.fixed_index));
}

void add_label_params(Context& ctx, const CSClass& cls, const CSLabel& l) {
    if (is_one_degree(cls.tag)) {
        ctx.report.params.emplace_back("J", l.J1);
        ctx.report.params.emplace_back("alpha", l.alpha1);
        return;
    }
    ctx.report.params.emplace_back("J1", l.J1);
    ctx.report.params.emplace_back("J2", l.J2);
    ctx.report.params.emplace_back("alpha1", l.alpha1);
    ctx.report.params.emplace_back("alpha2", l.alpha2);
}

// ---- verification tables ----

void start_verification(Context& ctx) {
    ctx.report.params.emplace_back("tol", ctx.cfg.tol);
    ctx.report.columns = {"check", "target", "computed", "abs_err", "rel_err", "tol", "status"};
}

void add_check(Context& ctx, const std::string& label, double target, double computed, double abs_err,
               double rel_err, bool pass) {
    ctx.report.rows.push_back({label, target, computed, abs_err, rel_err, ctx.cfg.tol,
                               std::string(pass ? "PASS" : "FAIL")});
    if (!pass) ctx.failures.push_back(label);
}

void add_check(Context& ctx, const VerificationReport& r) {
    add_check(ctx, r.label, r.target, r.computed, r.abs_err, r.rel_err,
              r.passed(ctx.cfg.tol) && r.quadrature.converged);
}

quadrature::QuadratureConfig verify_quadrature() {
    quadrature::QuadratureConfig q;
    q.throw_on_failure = false;
    return q;
}

// ---- subcommands ----

void cmd_spectrum(Context& ctx) {
    const int m_max = pick(ctx.given.m_max, ctx.cfg.m_max, 4);
    const int n_max = pick(ctx.given.n_max, ctx.cfg.n_max, 4);
    if (m_max < 0 || n_max < 0) throw UsageError("--m-max and --n-max must be nonnegative");
    ctx.report.params.emplace_back("m_max", static_cast<long long>(m_max));
    ctx.report.params.emplace_back("n_max", static_cast<long long>(n_max));
    if (Given::has(ctx.given.l_max)) {
        const int l_max = ctx.cfg.l_max;
        if (l_max < 0) throw UsageError("--l-max must be nonnegative");
        ctx.report.params.emplace_back("l_max", static_cast<long long>(l_max));
        ctx.report.columns = {"m", "l", "n", "energy"};
        for (int m = 0; m <= m_max; ++m) {
            for (int l = -l_max; l <= l_max; ++l) {
                for (int n = 0; n <= n_max; ++n) {
                    ctx.report.rows.push_back({static_cast<long long>(m), static_cast<long long>(l),
                                               static_cast<long long>(n),
                                               spectrum::energy_full({m, l, n}, ctx.params)});
                }
            }
        }
        return;
    }
    const DegeneracyReport deg = spectrum::degeneracy_probe(ctx.params, m_max, n_max);
    ctx.report.params.emplace_back("ratio", deg.ratio);
    if (deg.rational) {
        ctx.report.params.emplace_back("ratio_rational",
                                       std::to_string(deg.rational->first) + "/" + std::to_string(deg.rational->second));
    }
    const auto partner_of = [&](int m, int n) {
        std::string s;
        for (const auto& [a, b] : deg.collisions) {
            const LevelPair self{m, n};
            const LevelPair* other = a == self ? &b : (b == self ? &a : nullptr);
            if (other == nullptr) continue;
            if (!s.empty()) s += ";";
            s += "(" + std::to_string(other->m) + "," + std::to_string(other->n) + ")";
        }
        return s;
    };
    ctx.report.columns = {"m", "n", "energy", "degenerate_with"};
    for (int m = 0; m <= m_max; ++m) {
        for (int n = 0; n <= n_max; ++n) {
            ctx.report.rows.push_back({static_cast<long long>(m), static_cast<long long>(n),
                                       spectrum::energy_mn(m, n, ctx.params), partner_of(m, n)});
        }
    }
}

void cmd_coeffs(Context& ctx) {
    const CSClass cls = resolve_class(ctx);
    const CSLabel label = resolve_label(ctx, cls);
    add_class_params(ctx, cls);
    add_label_params(ctx, cls, label);
    ctx.report.params.emplace_back("trunc_eps", ctx.cfg.trunc_eps);
    const TruncatedState s = coherent::build_state(cls, label, ctx.params, ctx.cfg.trunc_eps);
    ctx.report.params.emplace_back("tail_bound", s.tail_bound);
    ctx.report.params.emplace_back("norm_sq", s.norm_sq());
    ctx.report.columns = {"i", "j", "re", "im"};
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
        for (std::size_t j = 0; j < s.coeffs[i].size(); ++j) {
            const Complex c = s.coeffs[i][j];
            ctx.report.rows.push_back({static_cast<long long>(i), static_cast<long long>(j), c.real(), c.imag()});
        }
    }
}

void cmd_overlap(Context& ctx) {
    const CSClass cls = resolve_class(ctx);
    const CSLabel a = resolve_label(ctx, cls);
    CSLabel b = a;
    if (Given::has(ctx.given.J_prime)) b.J1 = ctx.cfg.J_prime;
    if (Given::has(ctx.given.alpha_prime)) b.alpha1 = ctx.cfg.alpha_prime;
    if (Given::has(ctx.given.J2_prime)) b.J2 = ctx.cfg.J2_prime;
    if (Given::has(ctx.given.alpha2_prime)) b.alpha2 = ctx.cfg.alpha2_prime;
    require_nonnegative(b.J1, "--J-prime");
    require_nonnegative(b.J2, "--J2-prime");
    add_class_params(ctx, cls);
    add_label_params(ctx, cls, a);
    ctx.report.params.emplace_back("J_prime", b.J1);
    ctx.report.params.emplace_back("alpha_prime", b.alpha1);
    if (!is_one_degree(cls.tag)) {
        ctx.report.params.emplace_back("J2_prime", b.J2);
        ctx.report.params.emplace_back("alpha2_prime", b.alpha2);
    }
    ctx.report.params.emplace_back("trunc_eps", ctx.cfg.trunc_eps);
    const Complex ov = coherent::overlap(coherent::build_state(cls, a, ctx.params, ctx.cfg.trunc_eps),
                                         coherent::build_state(cls, b, ctx.params, ctx.cfg.trunc_eps));
    std::optional<Complex> closed;
    try {
        closed = coherent::overlap_closed_form(cls, a, b, ctx.params);
    } catch (const UnsupportedClass&) {
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    ctx.report.columns = {"re", "im", "abs", "closed_re", "closed_im", "closed_abs_diff"};
    ctx.report.rows.push_back({ov.real(), ov.imag(), std::abs(ov), closed ? closed->real() : nan,
                               closed ? closed->imag() : nan, closed ? std::abs(*closed - ov) : nan});
}

void cmd_verify_moments(Context& ctx) {
    const CSClass cls = resolve_class(ctx);
    const int k_max = pick(ctx.given.k_max, ctx.cfg.k_max, 6);
    if (k_max < 0) throw UsageError("--k-max must be nonnegative");
    add_class_params(ctx, cls);
    ctx.report.params.emplace_back("k_max", static_cast<long long>(k_max));
    start_verification(ctx);
    const auto qcfg = verify_quadrature();
    for (const WeightSpec& w : measures::weights_for(cls, ctx.params, nested_row(ctx))) {
        for (int k = 0; k <= k_max; ++k) add_check(ctx, measures::moment_check(w, k, qcfg));
    }
}

void cmd_verify_orthonormality(Context& ctx) {
    const int m_max = pick(ctx.given.m_max, ctx.cfg.m_max, 3);
    const int l_max = pick(ctx.given.l_max, ctx.cfg.l_max, 2);
    const int n_max = pick(ctx.given.n_max, ctx.cfg.n_max, 2);
    if (m_max < 0 || l_max < 0 || n_max < 0) throw UsageError("--m-max, --l-max and --n-max must be nonnegative");
    ctx.report.params.emplace_back("m_max", static_cast<long long>(m_max));
    ctx.report.params.emplace_back("l_max", static_cast<long long>(l_max));
    ctx.report.params.emplace_back("n_max", static_cast<long long>(n_max));
    start_verification(ctx);
    std::vector<QuantumNumbers> states;
    for (int m = 0; m <= m_max; ++m) {
        for (int l = -l_max; l <= l_max; ++l) {
            for (int n = 0; n <= n_max; ++n) states.push_back({m, l, n});
        }
    }
    const auto qcfg = verify_quadrature();
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (std::size_t j = i; j < states.size(); ++j) {
            VerificationReport r = spectrum::orthonormality_check(states[i], states[j], ctx.params, qcfg);
            // Absolute comparison: off-diagonal targets are zero.
            add_check(ctx, r.label, r.target, r.computed, r.abs_err, r.abs_err,
                      r.abs_err <= ctx.cfg.tol && r.quadrature.converged);
        }
    }
}

LadderSpec axis_spec(const std::string& name, const EnergySequence& seq, const LayerParams& p) {
    if (seq.kind() == EnergySequence::Kind::Landau) return algebra::make_spec(name, seq, 1.0 / std::sqrt(seq.slope()));
    return algebra::make_spec(name, seq, p.d / std::numbers::pi, 1.5);
}

void cmd_verify_commutators(Context& ctx) {
    const CSClass cls = resolve_class(ctx);
    const int range = pick(ctx.given.k_max, ctx.cfg.k_max, 200);
    if (range < 2) throw UsageError("--k-max must be at least 2");
    add_class_params(ctx, cls);
    ctx.report.params.emplace_back("k_max", static_cast<long long>(range));
    start_verification(ctx);

    std::vector<LadderSpec> specs;
    if (is_one_degree(cls.tag)) {
        specs.push_back(axis_spec(std::string(to_string(cls.tag)), coherent::one_degree_sequence(cls, ctx.params),
                                  ctx.params));
    } else {
        specs.push_back(axis_spec("m-axis", coherent::m_axis_sequence(cls.tag, ctx.params), ctx.params));
        const bool nested = cls.tag == CSTag::Nested || cls.tag == CSTag::NestedAltPhase ||
                            cls.tag == CSTag::NestedAltPhaseShifted;
        const EnergySequence second = nested ? coherent::nested_row_sequence(cls.tag, nested_row(ctx), ctx.params)
                                             : coherent::n_axis_sequence(cls.tag, ctx.params);
        specs.push_back(axis_spec("n-axis", second, ctx.params));
    }
    for (const LadderSpec& spec : specs) {
        for (const Relation rel : {Relation::AADag, Relation::NADag, Relation::NA}) {
            const CommutatorReport r = algebra::commutator_check(spec, rel, range);
            add_check(ctx, spec.name + " " + r.relation, 0.0, r.max_deviation, r.max_deviation, r.max_deviation,
                      r.max_deviation <= ctx.cfg.tol);
        }
    }
    CommutatorReport cr;
    AlgebraKind expected = AlgebraKind::TensorWHxSU11;
    if (specs.size() == 1) {
        cr = algebra::classify_algebra(specs[0], range, ctx.cfg.tol);
        expected = specs[0].number_shift ? AlgebraKind::SU11 : AlgebraKind::WeylHeisenberg;
    } else {
        cr = algebra::classify_tensor(specs[0], specs[1], range, ctx.cfg.tol);
    }
    add_check(ctx,
              "classification " + std::string(algebra::to_string(cr.classified_algebra)) + " (expected " +
                  std::string(algebra::to_string(expected)) + ")",
              0.0, cr.max_deviation, cr.max_deviation, cr.max_deviation,
              cr.classified_algebra == expected && cr.max_deviation <= ctx.cfg.tol);
}

void cmd_verify_resolution(Context& ctx) {
    const CSClass cls = resolve_class(ctx);
    const int range = pick(ctx.given.k_max, ctx.cfg.k_max, 4);
    if (range < 0 || range > 12) throw UsageError("--k-max must lie in 0..12 for verify-resolution");
    add_class_params(ctx, cls);
    ctx.report.params.emplace_back("k_max", static_cast<long long>(range));
    start_verification(ctx);
    for (const VerificationReport& r : measures::resolution_diagonal_check(cls, range, verify_quadrature(), ctx.params)) {
        add_check(ctx, r);
    }
}

void cmd_stats(Context& ctx) {
    const CSClass cls = resolve_class(ctx);
    std::vector<double> Js = ctx.cfg.J;
    if (Js.empty()) Js.push_back(is_one_degree(cls.tag) ? 0.0 : ctx.cfg.J1);
    for (const double J : Js) require_nonnegative(J, "--J");
    std::stable_sort(Js.begin(), Js.end());
    const bool two = !is_one_degree(cls.tag);
    require_nonnegative(ctx.cfg.J2, "--J2");
    add_class_params(ctx, cls);
    if (two && Given::has(ctx.given.J2)) ctx.report.params.emplace_back("J2", ctx.cfg.J2);
    ctx.report.params.emplace_back("tol", ctx.cfg.tol);
    ctx.report.columns = {"J",           "J2",         "mean_n",           "mean_n2",
                          "mandel_q",    "mandel_q_closed", "mandel_q_series", "closed_form_used",
                          "oracle_deviation", "tol",   "status"};
    for (const double J : Js) {
        // Two-degree classes sweep J1; J2 follows --J2 when given, otherwise J.
        const double J2 = two ? (Given::has(ctx.given.J2) ? ctx.cfg.J2 : J) : 0.0;
        const CSLabel label = two ? CSLabel::two(J, J2, 0.0, 0.0) : CSLabel::one(J, 0.0);
        const StatReport r = stats::mandel_q(cls, label, ctx.params, ctx.cfg.tol);
        std::string status = "N/A";
        if (r.closed_form_used && std::isfinite(r.mandel_q_series)) {
            status = r.oracle_deviation <= ctx.cfg.tol ? "PASS" : "FAIL";
            if (status == "FAIL") ctx.failures.push_back("mandel_q at J=" + format_double(J));
        }
        ctx.report.rows.push_back({J, J2, r.mean_n, r.mean_n2, r.mandel_q, r.mandel_q_closed, r.mandel_q_series,
                                   r.closed_form_used, r.oracle_deviation, ctx.cfg.tol, status});
    }
}

void add_common_params(Context& ctx) {
    ctx.report.params.emplace_back("command", ctx.cfg.command);
    ctx.report.params.emplace_back("B", ctx.params.B);
    ctx.report.params.emplace_back("d", ctx.params.d);
}

}  // namespace

std::string to_csv(const Report& r) {
    std::string s;
    for (std::size_t c = 0; c < r.columns.size(); ++c) {
        if (c > 0) s += ',';
        s += csv_field(r.columns[c]);
    }
    s += "\n";
    for (const auto& row : r.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) s += ',';
            s += csv_field(row[c]);
        }
        s += "\n";
    }
    return s;
}

std::string to_json(const Report& r) {
    nlohmann::ordered_json j;
    j["schema_version"] = "1";
    j["params"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.params) j["params"][k] = json_value(v);
    j["results"] = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        nlohmann::ordered_json o = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size() && c < r.columns.size(); ++c) o[r.columns[c]] = json_value(row[c]);
        j["results"].push_back(std::move(o));
    }
    return j.dump(2) + "\n";
}

void emit(const Report& r, Format format, const std::string& path, std::ostream& out) {
    const std::string text = format == Format::Csv ? to_csv(r) : to_json(r);
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open output file '" + path + "'");
    f << text;
    f.close();
    if (!f) throw std::runtime_error("failed writing output file '" + path + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Context ctx;
    RunConfig& cfg = ctx.cfg;
    Given& g = ctx.given;

    CLI::App app{"Coherent states of the magnetic Schroedinger operator in a layer"};
    app.require_subcommand(1, 1);
    app.add_option("--B", cfg.B, "magnetic field strength (> 0)");
    app.add_option("--d", cfg.d, "layer width (> 0)");
    g.cls = app.add_option("--class", cfg.class_name, "coherent-state class");
    g.n = app.add_option("--n", cfg.n_fixed, "fixed layer index n");
    g.m = app.add_option("--m", cfg.m_fixed, "fixed Landau index m (nested classes: row)");
    g.J = app.add_option("--J", cfg.J, "J value(s); stats sorts them ascending");
    app.add_option("--J1", cfg.J1, "first action variable");
    g.J2 = app.add_option("--J2", cfg.J2, "second action variable");
    app.add_option("--alpha", cfg.alpha, "phase label");
    app.add_option("--alpha1", cfg.alpha1, "first phase label");
    app.add_option("--alpha2", cfg.alpha2, "second phase label");
    g.J_prime = app.add_option("--J-prime", cfg.J_prime, "overlap: J (or J1) of the second state");
    g.alpha_prime = app.add_option("--alpha-prime", cfg.alpha_prime, "overlap: alpha (or alpha1) of the second state");
    g.J2_prime = app.add_option("--J2-prime", cfg.J2_prime, "overlap: J2 of the second state");
    g.alpha2_prime = app.add_option("--alpha2-prime", cfg.alpha2_prime, "overlap: alpha2 of the second state");
    app.add_option("--trunc-eps", cfg.trunc_eps, "tail probability bound of truncated states");
    app.add_option("--tol", cfg.tol, "PASS/FAIL threshold of verification checks");
    g.k_max = app.add_option("--k-max", cfg.k_max, "moment order / index range");
    g.m_max = app.add_option("--m-max", cfg.m_max, "largest m");
    g.n_max = app.add_option("--n-max", cfg.n_max, "largest n");
    g.l_max = app.add_option("--l-max", cfg.l_max, "largest |l|");
    app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--output", cfg.output, "output file (stdout when absent)");

    const std::pair<const char*, const char*> commands[] = {
        {"spectrum", "energy table E(m, n)"},
        {"coeffs", "truncated coherent-state coefficients"},
        {"overlap", "overlap of two coherent states"},
        {"verify-moments", "moment problems of the weight densities"},
        {"verify-orthonormality", "orthonormality of the eigenfunctions"},
        {"verify-commutators", "ladder-operator commutators and algebra"},
        {"verify-resolution", "resolution-of-identity diagonal"},
        {"stats", "Mandel parameter sweep over J"},
    };
    for (const auto& [name, help] : commands) {
        app.add_subcommand(name, help)->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        ctx.params = LayerParams{cfg.B, cfg.d};
        try {
            ctx.params.validate();
        } catch (const DomainError& e) {
            throw UsageError(std::string("--B/--d: ") + e.what());
        }
        if (!(cfg.tol > 0.0)) throw UsageError("--tol must be positive");
        if (!(cfg.trunc_eps > 0.0 && cfg.trunc_eps <= 1e-3)) throw UsageError("--trunc-eps must lie in (0, 1e-3]");
        add_common_params(ctx);

        if (cfg.command == "spectrum") cmd_spectrum(ctx);
        else if (cfg.command == "coeffs") cmd_coeffs(ctx);
        else if (cfg.command == "overlap") cmd_overlap(ctx);
        else if (cfg.command == "verify-moments") cmd_verify_moments(ctx);
        else if (cfg.command == "verify-orthonormality") cmd_verify_orthonormality(ctx);
        else if (cfg.command == "verify-commutators") cmd_verify_commutators(ctx);
        else if (cfg.command == "verify-resolution") cmd_verify_resolution(ctx);
        else cmd_stats(ctx);

        emit(ctx.report, cfg.format == "json" ? Format::Json : Format::Csv, cfg.output, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    for (const std::string& f : ctx.failures) err << "FAIL " << f << "\n";
    return ctx.failures.empty() ? 0 : 1;
}

}  // namespace gkcs::cli
