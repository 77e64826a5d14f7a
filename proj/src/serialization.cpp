#include "slowent/serialization.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

namespace slowent {

namespace {

Rational rational_field(const Json& j, const std::string& where) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw ParseError(where + ": expected a rational string \"p/q\"");
}

std::size_t index_field(const Json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long>() < 0) throw ParseError(where + ": expected a nonnegative integer");
    return j.get<std::size_t>();
}

Json vector_to_json(const Vector& v) {
    Json out = Json::array();
    for (const Rational& q : v) out.push_back(to_string(q));
    return out;
}

Json doubles(const std::vector<double>& v) {
    Json out = Json::array();
    for (double d : v) {
        if (std::isfinite(d)) {
            out.push_back(d);
        } else {
            out.push_back(nullptr);
        }
    }
    return out;
}

}  // namespace

Json algebra_to_json(const LieAlgebra& algebra) {
    Json brackets = Json::array();
    for (const BracketEntry& e : algebra.sparse_brackets()) {
        Json terms = Json::array();
        for (const auto& [k, c] : e.terms) terms.push_back(Json::array({k, to_string(c)}));
        brackets.push_back(Json::array({e.i, e.j, terms}));
    }
    Json out;
    out["dim"] = algebra.dim();
    out["basis"] = algebra.basis_names();
    out["brackets"] = std::move(brackets);
    return out;
}

LieAlgebra algebra_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("algebra: expected an object");
    if (!j.contains("dim")) throw ParseError("algebra: missing \"dim\"");
    const std::size_t n = index_field(j["dim"], "algebra.dim");
    std::vector<std::string> names;
    if (j.contains("basis")) {
        if (!j["basis"].is_array() || j["basis"].size() != n) {
            throw ParseError("algebra.basis: expected " + std::to_string(n) + " names");
        }
        for (const Json& s : j["basis"]) {
            if (!s.is_string()) throw ParseError("algebra.basis: names must be strings");
            names.push_back(s.get<std::string>());
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
    }
    std::vector<BracketEntry> entries;
    const Json brackets = j.value("brackets", Json::array());
    if (!brackets.is_array()) throw ParseError("algebra.brackets: expected an array");
    for (const Json& b : brackets) {
        if (!b.is_array() || b.size() != 3 || !b[2].is_array()) {
            throw ParseError("algebra.brackets: each entry is [i, j, [[k, \"p/q\"], ...]]");
        }
        BracketEntry e{index_field(b[0], "bracket i"), index_field(b[1], "bracket j"), {}};
        if (e.i >= e.j || e.j >= n) {
            throw ParseError("algebra.brackets: need 0 <= i < j < dim, got [" + std::to_string(e.i) + ", " +
                             std::to_string(e.j) + "]");
        }
        for (const Json& t : b[2]) {
            if (!t.is_array() || t.size() != 2) throw ParseError("algebra.brackets: terms are [k, \"p/q\"]");
            const std::size_t k = index_field(t[0], "bracket k");
            if (k >= n) throw ParseError("algebra.brackets: term index out of range");
            e.terms.emplace_back(k, rational_field(t[1], "bracket coefficient"));
        }
        entries.push_back(std::move(e));
    }
    return LieAlgebra::from_brackets(std::move(names), entries);
}

Json subalgebra_to_json(const SubalgebraSpec& u) {
    Json gens = Json::array();
    for (const Vector& g : u.generators) gens.push_back(vector_to_json(g));
    Json out;
    out["generators"] = std::move(gens);
    return out;
}

SubalgebraSpec subalgebra_from_json(const Json& j, std::size_t dim) {
    if (!j.is_object() || !j.contains("generators") || !j["generators"].is_array()) {
        throw ParseError("subalgebra: expected {\"generators\": [[...], ...]}");
    }
    SubalgebraSpec u;
    for (const Json& g : j["generators"]) {
        if (!g.is_array()) throw ParseError("subalgebra.generators: each generator is an array");
        if (g.size() != dim) {
            throw ParseError("subalgebra.generators: generator has " + std::to_string(g.size()) +
                             " coordinates, algebra has dimension " + std::to_string(dim));
        }
        Vector v;
        for (const Json& c : g) v.push_back(rational_field(c, "generator coordinate"));
        u.generators.push_back(std::move(v));
    }
    return u;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

Problem load_problem(const std::string& path, const std::optional<std::string>& subalgebra_path) {
    const Json j = read_json_file(path);
    Problem p;
    p.name = j.is_object() ? j.value("name", path) : path;
    const bool wrapped = j.is_object() && j.contains("algebra");
    p.algebra = algebra_from_json(wrapped ? j["algebra"] : j);
    if (subalgebra_path) {
        p.u = subalgebra_from_json(read_json_file(*subalgebra_path), p.algebra.dim());
    } else if (wrapped && j.contains("subalgebra")) {
        p.u = subalgebra_from_json(j["subalgebra"], p.algebra.dim());
    } else {
        throw ParseError("'" + path + "' has no \"subalgebra\"; pass one with --subalgebra");
    }
    return p;
}

Json polynomial_to_json(const ScalarPoly& p) {
    Json out = Json::object();
    for (const auto& [m, c] : p.terms()) out[monomial_key(m)] = to_string(c);
    return out;
}

ScalarPoly polynomial_from_json(const Json& j, std::size_t k) {
    if (!j.is_object()) throw ParseError("polynomial: expected {monomial: \"p/q\"}");
    ScalarPoly p(k);
    for (const auto& [key, value] : j.items()) p.add_term(parse_monomial_key(key, k), rational_field(value, key));
    return p;
}

Json chain_basis_to_json(const ChainBasis& cb) {
    Json levels = Json::array();
    for (std::size_t i = 0; i < cb.levels.size(); ++i) {
        Json elems = Json::array();
        for (const ChainElement& e : cb.levels[i]) {
            Json el;
            el["coordinates"] = vector_to_json(e.y);
            el["alpha"] = e.word.alpha;
            el["multidegree"] = e.word.multidegree;
            if (cb.polynomials_ready) el["polynomial"] = polynomial_to_json(e.poly);
            elems.push_back(std::move(el));
        }
        Json level;
        level["level"] = i;
        level["elements"] = std::move(elems);
        levels.push_back(std::move(level));
    }
    Json out;
    out["k"] = cb.k;
    out["n0"] = cb.n0;
    out["levels"] = std::move(levels);
    return out;
}

Json to_json(const DecayReport& r) {
    Json out;
    out["check"] = "coefficient_decay";
    out["passed"] = r.passed;
    out["radii"] = doubles(r.radii);
    out["forward_constants"] = doubles(r.forward_constants);
    out["reverse_constants"] = doubles(r.reverse_constants);
    out["forward_spread"] = r.forward_spread;
    out["reverse_spread"] = r.reverse_spread;
    out["fitted_c0"] = r.fitted_c0;
    return out;
}

Json to_json(const SublevelReport& r) {
    Json levels = Json::array();
    for (const SublevelResult& l : r.levels) {
        Json e;
        e["level"] = l.level;
        e["measure"] = l.measure;
        e["bound"] = l.bound;
        e["margin"] = std::isfinite(l.margin) ? Json(l.margin) : Json(nullptr);
        e["applicable"] = l.applicable;
        e["ok"] = l.ok;
        levels.push_back(std::move(e));
    }
    Json out;
    out["check"] = "brudnyi_ganzburg";
    out["passed"] = r.passed;
    out["degree"] = r.degree;
    out["box_volume"] = r.box_volume;
    out["sup"] = r.sup;
    out["refined_sup"] = r.refined_sup;
    out["refinement_converged"] = r.refinement_converged;
    out["levels"] = std::move(levels);
    return out;
}

Json to_json(const DecayFit& fit) {
    Json out;
    out["check"] = "bowen_exponent";
    out["radii"] = doubles(fit.radii);
    out["log_radii"] = doubles(fit.log_radii);
    out["log_volumes"] = doubles(fit.log_volumes);
    out["acceptance"] = doubles(fit.acceptance);
    out["accepted"] = fit.accepted;
    out["slope"] = fit.slope;
    out["intercept"] = fit.intercept;
    out["r_squared"] = fit.r_squared;
    out["expected_slope"] = fit.expected_slope;
    return out;
}

void write_fit_csv(const DecayFit& fit, std::ostream& out) {
    out << "log_R,log_volume\n";
    out.precision(17);
    for (std::size_t i = 0; i < fit.log_radii.size(); ++i) out << fit.log_radii[i] << ',' << fit.log_volumes[i] << '\n';
}

}  // namespace slowent
