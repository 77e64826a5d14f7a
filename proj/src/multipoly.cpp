#include "slowent/multipoly.hpp"

#include <sstream>

namespace slowent {

std::vector<Monomial> monomials_of_degree(std::size_t k, unsigned degree) {
    std::vector<Monomial> out;
    if (k == 0) {
        if (degree == 0) out.emplace_back();
        return out;
    }
    Monomial cur(k, 0);
    // Place exponents left to right, largest first for the leading variables.
    auto rec = [&](auto&& self, std::size_t var, unsigned remaining) -> void {
        if (var + 1 == k) {
            cur[var] = remaining;
            out.push_back(cur);
            return;
        }
        for (unsigned e = remaining + 1; e-- > 0;) {
            cur[var] = e;
            self(self, var + 1, remaining - e);
        }
    };
    rec(rec, 0, degree);
    return out;
}

std::string monomial_key(const Monomial& m) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) s.push_back(',');
        s += std::to_string(m[i]);
    }
    return s;
}

Monomial parse_monomial_key(const std::string& key, std::size_t k) {
    Monomial m;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            const long v = std::stol(part);
            if (v < 0) throw ParseError("negative exponent in monomial key '" + key + "'");
            m.push_back(static_cast<unsigned>(v));
        } catch (const std::logic_error&) {
            throw ParseError("malformed monomial key '" + key + "'");
        }
    }
    if (k == 0 && key.empty()) return m;
    if (m.size() != k) throw ParseError("monomial key '" + key + "' has wrong arity");
    return m;
}

Rational evaluate(const ScalarPoly& p, std::span<const Rational> point) {
    if (point.size() != p.variables()) throw DimensionMismatch("evaluate: point has wrong arity");
    Rational acc = 0;
    for (const auto& [m, c] : p.terms()) {
        Rational t = c;
        for (std::size_t v = 0; v < m.size(); ++v) {
            for (unsigned e = 0; e < m[v]; ++e) t *= point[v];
        }
        acc += t;
    }
    return acc;
}

HornerEvaluator::HornerEvaluator(const ScalarPoly& p) : k_(p.variables()) {
    std::vector<std::pair<Monomial, double>> terms;
    for (const auto& [m, c] : p.terms()) terms.emplace_back(m, c.get_d());
    root_ = build(std::move(terms), 0, k_);
}

HornerEvaluator::Node HornerEvaluator::build(std::vector<std::pair<Monomial, double>> terms,
                                             std::size_t var, std::size_t k) {
    Node node;
    if (var == k) {
        for (const auto& t : terms) node.leaf += t.second;
        return node;
    }
    unsigned max_e = 0;
    for (const auto& t : terms) max_e = std::max(max_e, t.first[var]);
    std::vector<std::vector<std::pair<Monomial, double>>> buckets(terms.empty() ? 0 : max_e + 1);
    for (auto& t : terms) buckets[t.first[var]].push_back(std::move(t));
    for (auto& b : buckets) node.children.push_back(build(std::move(b), var + 1, k));
    return node;
}

double HornerEvaluator::eval(const Node& node, std::span<const double> s, std::size_t var, std::size_t k) {
    if (var == k) return node.leaf;
    double acc = 0.0;
    for (std::size_t e = node.children.size(); e-- > 0;) acc = acc * s[var] + eval(node.children[e], s, var + 1, k);
    return acc;
}

double HornerEvaluator::operator()(std::span<const double> s) const {
    if (s.size() != k_) throw DimensionMismatch("HornerEvaluator: point has wrong arity");
    return eval(root_, s, 0, k_);
}

}  // namespace slowent
