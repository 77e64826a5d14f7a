#include "slowent/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "slowent/chain_basis.hpp"
#include "slowent/filtration.hpp"

namespace slowent {

namespace {

constexpr double kMinRSquared = 0.98;

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw ParseError("bad integer '" + item + "' in --params");
        }
    }
    return out;
}

std::string command_name(Command c) {
    switch (c) {
        case Command::validate: return "validate";
        case Command::entropy: return "entropy";
        case Command::chain_basis: return "chain-basis";
        case Command::verify: return "verify";
        case Command::catalog: return "catalog";
    }
    return "";
}

std::string dots(std::size_t n) {
    std::string s;
    for (std::size_t i = 0; i < n; ++i) s += "•";
    return s;
}

std::string poly_to_string(const ScalarPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    // highest degree first
    std::vector<std::pair<Monomial, Rational>> terms(p.terms().begin(), p.terms().end());
    std::stable_sort(terms.begin(), terms.end(),
                     [](const auto& a, const auto& b) { return total_degree(a.first) > total_degree(b.first); });
    for (const auto& [m, c] : terms) {
        Rational mag = abs(c);
        out += out.empty() ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + ");
        std::string mono;
        for (std::size_t v = 0; v < m.size(); ++v) {
            if (m[v] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "s" + std::to_string(v + 1);
            if (m[v] > 1) mono += "^" + std::to_string(m[v]);
        }
        if (mono.empty()) {
            out += to_string(mag);
        } else if (mag == 1) {
            out += mono;
        } else {
            out += to_string(mag) + "*" + mono;
        }
    }
    return out;
}

std::string word_to_string(const TensorWord& w) {
    std::string s = "U^(";
    for (std::size_t i = 0; i < w.multidegree.size(); ++i) s += (i ? "," : "") + std::to_string(w.multidegree[i]);
    return s + ") (x) theta_" + std::to_string(w.alpha);
}

Json checks_to_json(const std::vector<CheckResult>& checks) {
    Json out = Json::array();
    for (const CheckResult& c : checks) {
        Json e;
        e["name"] = c.name;
        e["passed"] = c.passed;
        e["detail"] = c.detail;
        out.push_back(std::move(e));
    }
    return out;
}

void require_key(const Json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("entropy report: missing \"") + key + "\"");
}

void print_entropy_text(const EntropyReport& r, std::ostream& out) {
    out << r.name << ": dim " << r.dim << ", dim u = " << r.k << "\n";
    out << "filtration (m = " << r.m << ")\n";
    out << "  level  dim\n";
    for (std::size_t i = 0; i < r.dims.size(); ++i) {
        out << "  " << std::setw(5) << i << "  " << std::setw(3) << r.dims[i] << "  " << dots(r.dims[i]) << "\n";
    }
    out << "entropy: unnormalized " << to_string(r.unnormalized) << ", normalized " << to_string(r.normalized)
        << "\n";
    if (r.oracle) {
        out << "oracle: " << to_string(r.oracle->value) << "  " << r.oracle->formula << "  "
            << (r.oracle->match ? "match" : "MISMATCH") << "\n";
    }
    if (r.verification) {
        out << "checks:\n";
        for (const CheckResult& c : *r.verification) {
            out << "  " << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(26) << c.name << std::right
                << c.detail << "\n";
        }
    }
}

Problem problem_from_example(const Example& ex) { return {ex.spec.to_string(), ex.algebra, ex.u}; }

/// Validation failures as printable lines; empty when clean.
std::vector<std::string> validation_errors(const Problem& p) {
    std::vector<std::string> lines;
    for (const Violation& v : validate(p.algebra)) {
        lines.push_back(to_string(v.kind) + " violation at (" + std::to_string(v.i) + ", " + std::to_string(v.j) +
                        ", " + std::to_string(v.k) + "): " + v.detail);
    }
    if (lines.empty()) {
        for (const UnipotencyIssue& issue : check_abelian_unipotent(p.algebra, p.u).issues) {
            lines.push_back(issue.detail);
        }
    }
    return lines;
}

class SemanticFailure : public Error {
public:
    using Error::Error;
};

void ensure_valid(const RunConfig& config, const LoadedInput& in) {
    if (config.no_validate && in.spec) return;
    const Problem& p = in.problem;
    const std::vector<std::string> errors = validation_errors(p);
    if (errors.empty()) return;
    std::string msg = "input failed validation:";
    for (const std::string& e : errors) msg += "\n  " + e;
    throw SemanticFailure(msg);
}

EntropyReport base_report(const LoadedInput& in, const Filtration& f) {
    EntropyReport r;
    r.name = in.problem.name;
    r.dim = in.problem.algebra.dim();
    r.k = in.problem.u.k();
    r.dims = f.dims;
    r.m = f.m;
    const EntropyValue h = slow_entropy(f);
    r.unnormalized = h.unnormalized;
    r.normalized = h.normalized;
    if (in.spec) {
        const Rational o = oracle_entropy(*in.spec);
        r.oracle = EntropyReport::Oracle{o, oracle_formula(in.spec->family), o == r.normalized};
    }
    return r;
}

int run_validate(const RunConfig& config, std::ostream& out) {
    const LoadedInput in = load_input(config);
    const std::vector<std::string> errors = validation_errors(in.problem);
    if (config.format == OutputFormat::json) {
        Json j;
        j["name"] = in.problem.name;
        j["valid"] = errors.empty();
        j["errors"] = errors;
        out << j.dump(2) << "\n";
    } else {
        out << in.problem.name << ": " << (errors.empty() ? "valid" : "INVALID") << "\n";
        for (const std::string& e : errors) out << "  " << e << "\n";
    }
    return errors.empty() ? 0 : 1;
}

int run_entropy(const RunConfig& config, std::ostream& out) {
    const EntropyReport r = cmd_entropy(config);
    if (config.format == OutputFormat::json) {
        out << to_json(r).dump(2) << "\n";
    } else {
        print_entropy_text(r, out);
    }
    return r.oracle && !r.oracle->match ? 1 : 0;
}

int run_chain_basis(const RunConfig& config, std::ostream& out) {
    const LoadedInput in = load_input(config);
    ensure_valid(config, in);
    const Filtration f = compute_filtration(in.problem.algebra, in.problem.u);
    const ChainContext ctx = make_chain_context(in.problem.algebra, in.problem.u, f);
    ChainBasis cb = build_chain_basis(ctx);
    associated_polynomials(ctx, cb);
    if (config.format == OutputFormat::json) {
        Json j;
        j["name"] = in.problem.name;
        j["chain_basis"] = chain_basis_to_json(cb);
        out << j.dump(2) << "\n";
        return 0;
    }
    out << in.problem.name << ": chain basis, " << cb.size() << " elements\n";
    for (std::size_t i = 0; i < cb.levels.size(); ++i) {
        out << "level " << i << " (" << cb.levels[i].size() << ")\n";
        for (const ChainElement& e : cb.levels[i]) {
            std::string coords;
            for (std::size_t c = 0; c < e.y.size(); ++c) coords += (c ? " " : "") + to_string(e.y[c]);
            out << "  " << word_to_string(e.word) << "  y = [" << coords << "]  p = " << poly_to_string(e.poly)
                << "\n";
        }
    }
    return 0;
}

int run_verify(const RunConfig& config, std::ostream& out) {
    const VerifyOutcome v = cmd_verify(config);
    if (config.csv && v.fit) {
        std::ofstream csv(*config.csv);
        if (!csv) throw ParseError("cannot write '" + *config.csv + "'");
        write_fit_csv(*v.fit, csv);
    }
    if (config.format == OutputFormat::json) {
        Json j = to_json(v.report);
        j["details"] = v.details;
        out << j.dump(2) << "\n";
    } else {
        print_entropy_text(v.report, out);
    }
    return v.passed() ? 0 : 1;
}

int run_catalog(const RunConfig& config, std::ostream& out) {
    std::vector<FamilyInfo> families = family_catalog();
    if (config.describe) {
        const auto fam = family_from_name(*config.describe);
        if (!fam) throw ParseError("unknown family '" + *config.describe + "'");
        std::erase_if(families, [&](const FamilyInfo& f) { return f.family != *fam; });
    }
    if (config.format == OutputFormat::json) {
        Json arr = Json::array();
        for (const FamilyInfo& f : families) {
            Json e;
            e["name"] = f.name;
            e["parameters"] = f.parameters;
            e["range"] = f.range;
            e["formula"] = f.formula;
            arr.push_back(std::move(e));
        }
        Json j;
        j["families"] = std::move(arr);
        out << j.dump(2) << "\n";
        return 0;
    }
    for (const FamilyInfo& f : families) {
        out << f.name << "(" << f.parameters << ")\n";
        out << "  range:   " << f.range << "\n";
        out << "  entropy: " << f.formula << "\n";
    }
    return 0;
}

}  // namespace

Json to_json(const EntropyReport& r) {
    Json j;
    j["algebra"] = Json{{"name", r.name}, {"dim", r.dim}};
    j["u"] = Json{{"k", r.k}};
    j["filtration"] = Json{{"dims", r.dims}, {"m", r.m}};
    j["entropy"] = Json{{"unnormalized", to_string(r.unnormalized)}, {"normalized", to_string(r.normalized)}};
    if (r.oracle) {
        j["oracle"] = Json{{"value", to_string(r.oracle->value)}, {"formula", r.oracle->formula}, {"match", r.oracle->match}};
    }
    if (r.chain_basis_levels) j["chain_basis"] = Json{{"levels", *r.chain_basis_levels}};
    if (r.verification) j["verification"] = checks_to_json(*r.verification);
    return j;
}

EntropyReport entropy_report_from_json(const Json& j) {
    try {
        for (const char* key : {"algebra", "u", "filtration", "entropy"}) require_key(j, key);
        EntropyReport r;
        r.name = j["algebra"].at("name").get<std::string>();
        r.dim = j["algebra"].at("dim").get<std::size_t>();
        r.k = j["u"].at("k").get<std::size_t>();
        r.dims = j["filtration"].at("dims").get<std::vector<std::size_t>>();
        r.m = j["filtration"].at("m").get<std::size_t>();
        r.unnormalized = parse_rational(j["entropy"].at("unnormalized").get<std::string>());
        r.normalized = parse_rational(j["entropy"].at("normalized").get<std::string>());
        if (j.contains("oracle")) {
            const Json& o = j["oracle"];
            r.oracle = EntropyReport::Oracle{parse_rational(o.at("value").get<std::string>()),
                                             o.at("formula").get<std::string>(), o.at("match").get<bool>()};
        }
        if (j.contains("chain_basis")) {
            r.chain_basis_levels = j["chain_basis"].at("levels").get<std::vector<std::size_t>>();
        }
        if (j.contains("verification")) {
            std::vector<CheckResult> checks;
            for (const Json& c : j["verification"]) {
                checks.push_back({c.at("name").get<std::string>(), c.at("passed").get<bool>(),
                                  c.at("detail").get<std::string>()});
            }
            r.verification = std::move(checks);
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("entropy report: ") + e.what());
    }
}

LoadedInput load_input(const RunConfig& config) {
    if (config.family.has_value() == config.input.has_value()) {
        throw ParseError("give exactly one of --input or --family");
    }
    if (config.no_validate && config.input) throw ParseError("--no-validate only applies to --family input");
    if (config.family) {
        ExampleSpec spec = config.family->find('(') != std::string::npos ? parse_example_spec(*config.family)
                                                                         : make_spec(*config.family, config.params);
        if (!config.params.empty() && config.family->find('(') != std::string::npos) {
            throw ParseError("--params cannot be combined with a parenthesized --family");
        }
        try {
            const Example ex = build_example(spec);
            return {problem_from_example(ex), spec};
        } catch (const ParameterRange& e) {
            throw ParseError(e.what());
        }
    }
    if (!config.params.empty()) throw ParseError("--params only applies to --family");
    return {load_problem(*config.input, config.subalgebra), std::nullopt};
}

EntropyReport cmd_entropy(const RunConfig& config) {
    const LoadedInput in = load_input(config);
    ensure_valid(config, in);
    return base_report(in, compute_filtration(in.problem.algebra, in.problem.u));
}

bool VerifyOutcome::passed() const {
    if (!report.verification) return false;
    for (const CheckResult& c : *report.verification) {
        if (!c.passed) return false;
    }
    return !report.oracle || report.oracle->match;
}

VerifyOutcome cmd_verify(const RunConfig& config) {
    const LoadedInput in = load_input(config);
    ensure_valid(config, in);
    const LieAlgebra& g = in.problem.algebra;
    const SubalgebraSpec& u = in.problem.u;
    const Filtration f = compute_filtration(g, u);
    VerifyOutcome v;
    v.report = base_report(in, f);
    std::vector<CheckResult> checks;

    const ChainContext ctx = make_chain_context(g, u, f);
    ChainBasis cb;
    try {
        cb = build_chain_basis(ctx);
    } catch (const SurjectivityFailure& e) {
        checks.push_back({"chain_basis", false, e.what()});
        v.report.verification = std::move(checks);
        return v;
    }
    associated_polynomials(ctx, cb);
    std::vector<std::size_t> counts;
    for (const auto& level : cb.levels) counts.push_back(level.size());
    v.report.chain_basis_levels = counts;
    checks.push_back({"chain_basis", counts == f.dims, "per-level counts match dim g_i"});

    bool degrees_ok = true;
    for (const auto& level : cb.levels) {
        for (const ChainElement& e : level) degrees_ok = degrees_ok && e.poly.degree() == static_cast<int>(e.level);
    }
    checks.push_back({"polynomial_degrees", degrees_ok, "deg p = level for every element"});

    bool indep = true;
    for (const IndependenceEntry& e : verify_homogeneous_independence(cb)) indep = indep && e.ok();
    checks.push_back({"homogeneous_independence", indep, "top homogeneous parts independent per alpha"});

    bool table_ok = true;
    for (const ProjectionDegree& d : projection_degree_table(ctx, cb)) {
        table_ok = table_ok && (d.projection <= d.element_level ? d.exact() : d.degree == -1);
    }
    checks.push_back({"projection_degrees", table_ok, "deg pi_i Ad(exp U_s) Y = level - i"});

    DecayConfig dc;
    dc.radii = config.radii;
    dc.points_per_axis = config.grid;
    dc.seed = config.seed;
    const DecayReport decay = verify_coefficient_decay(g, u, cb, dc);
    {
        std::ostringstream d;
        d << "forward spread " << decay.forward_spread << ", reverse spread " << decay.reverse_spread
          << ", C0 " << decay.fitted_c0;
        checks.push_back({"coefficient_decay", decay.passed, d.str()});
    }
    v.details["coefficient_decay"] = to_json(decay);

    // Sublevel inequality on every nonconstant chain polynomial.
    bool bg_ok = true;
    double min_margin = std::numeric_limits<double>::infinity();
    Json bg = Json::array();
    const BoxGrid box{u.k(), config.radii.front(), config.grid ? config.grid : default_points_per_axis(u.k())};
    for (const ChainElement* e : cb.elements()) {
        if (e->poly.degree() <= 0) continue;
        const double sup = sup_on_box(e->poly, box);
        const std::vector<double> levels{sup / 2, sup / 4, sup / 8, sup / 16, sup / 32};
        const SublevelReport r = brudnyi_ganzburg_check(e->poly, box, levels);
        bg_ok = bg_ok && r.passed;
        for (const SublevelResult& l : r.levels) {
            if (l.applicable) min_margin = std::min(min_margin, l.margin);
        }
        bg.push_back(to_json(r));
    }
    {
        std::ostringstream d;
        d << "min margin " << min_margin;
        checks.push_back({"brudnyi_ganzburg", bg_ok, d.str()});
    }
    v.details["brudnyi_ganzburg"] = std::move(bg);

    BowenConfig bc;
    bc.radii = config.radii;
    bc.samples = config.samples;
    bc.points_per_axis = config.grid;
    bc.seed = config.seed;
    try {
        const DecayFit fit = bowen_exponent_fit(g, u, f, cb, bc);
        const double tol = config.tolerance * std::max(1.0, std::abs(fit.expected_slope));
        const bool ok = std::abs(fit.slope - fit.expected_slope) <= tol && fit.r_squared >= kMinRSquared;
        std::ostringstream d;
        d << "slope " << fit.slope << " (expected " << fit.expected_slope << "), r^2 " << fit.r_squared;
        checks.push_back({"bowen_exponent", ok, d.str()});
        v.details["bowen_exponent"] = to_json(fit);
        v.fit = fit;
    } catch (const InsufficientAcceptance& e) {
        checks.push_back({"bowen_exponent", false, e.what()});
    }
    v.report.verification = std::move(checks);
    return v;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Polynomial slow entropy of abelian ad-unipotent subalgebras"};
    app.require_subcommand(1);
    RunConfig config;
    std::string params_text;
    std::string format = "text";
    std::vector<double> radii;

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--input", config.input, "problem file (JSON)");
        sub->add_option("--subalgebra", config.subalgebra, "subalgebra file when --input holds only the algebra");
        sub->add_option("--family", config.family, "catalog family name or spec string");
        sub->add_option("--params", params_text, "comma-separated family parameters");
        sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    };
    auto add_no_validate = [&](CLI::App* sub) {
        sub->add_flag("--no-validate", config.no_validate, "skip Jacobi and unipotency checks (catalog input)");
    };
    CLI::App* validate_cmd = app.add_subcommand("validate", "check Jacobi, antisymmetry and ad-unipotency");
    CLI::App* entropy_cmd = app.add_subcommand("entropy", "filtration and entropy");
    CLI::App* chain_cmd = app.add_subcommand("chain-basis", "generalized chain basis and its polynomials");
    CLI::App* verify_cmd = app.add_subcommand("verify", "numeric checks of the divergence mechanism");
    CLI::App* catalog_cmd = app.add_subcommand("catalog", "list example families");
    for (CLI::App* sub : {validate_cmd, entropy_cmd, chain_cmd, verify_cmd}) add_input(sub);
    for (CLI::App* sub : {entropy_cmd, chain_cmd, verify_cmd}) add_no_validate(sub);
    verify_cmd->add_option("--R-list", radii, "radii, comma separated")->delimiter(',');
    verify_cmd->add_option("--grid", config.grid, "grid points per axis");
    verify_cmd->add_option("--samples", config.samples, "Monte-Carlo samples per radius");
    verify_cmd->add_option("--seed", config.seed, "random seed");
    verify_cmd->add_option("--tolerance", config.tolerance, "relative tolerance on the Bowen slope");
    verify_cmd->add_option("--csv", config.csv, "write (log R, log volume) pairs here");
    catalog_cmd->add_option("family", config.describe, "family to describe");
    catalog_cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const std::vector<std::pair<CLI::App*, Command>> commands{{validate_cmd, Command::validate},
                                                               {entropy_cmd, Command::entropy},
                                                               {chain_cmd, Command::chain_basis},
                                                               {verify_cmd, Command::verify},
                                                               {catalog_cmd, Command::catalog}};
    for (const auto& [sub, cmd] : commands) {
        if (sub->parsed()) config.command = cmd;
    }
    config.format = format == "json" ? OutputFormat::json : OutputFormat::text;

    try {
        config.params = parse_int_list(params_text);
        if (!radii.empty()) config.radii = radii;
        if (config.radii.size() < 3 || !std::is_sorted(config.radii.begin(), config.radii.end()) ||
            config.radii.front() <= 0) {
            throw ParseError("--R-list needs at least 3 increasing positive radii");
        }
        switch (config.command) {
            case Command::validate: return run_validate(config, out);
            case Command::entropy: return run_entropy(config, out);
            case Command::chain_basis: return run_chain_basis(config, out);
            case Command::verify: return run_verify(config, out);
            case Command::catalog: return run_catalog(config, out);
        }
    } catch (const ParseError& e) {
        err << "slowent " << command_name(config.command) << ": " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "slowent " << command_name(config.command) << ": " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace slowent
