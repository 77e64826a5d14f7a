#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "slowent/exact_linalg.hpp"

namespace slowent {

/// Exponent vector (m_1, ..., m_k) of s_1^{m_1} ... s_k^{m_k}.
using Monomial = std::vector<unsigned>;

inline unsigned total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0U); }

/// All exponent vectors in k variables of the given total degree, sorted so
/// that larger powers of earlier variables come first (s1^d, s1^{d-1}s2, ...).
std::vector<Monomial> monomials_of_degree(std::size_t k, unsigned degree);

/// "2,0,1" style key used in serialized maps.
std::string monomial_key(const Monomial& m);
Monomial parse_monomial_key(const std::string& key, std::size_t k);

namespace detail {
inline bool coeff_is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool coeff_is_zero(const Vector& v) { return is_zero(v); }
inline void coeff_add(Rational& a, const Rational& b) { a += b; }
inline void coeff_add(Vector& a, const Vector& b) { a = add(a, b); }
}  // namespace detail

/// Sparse multivariate polynomial in k variables with coefficients in T
/// (Rational for scalar polynomials, Vector for algebra-valued ones).
/// Zero coefficients are never stored.
template <typename T>
class MultiPoly {
public:
    MultiPoly() = default;
    explicit MultiPoly(std::size_t variables) : k_(variables) {}

    static MultiPoly constant(std::size_t variables, T value) {
        MultiPoly p(variables);
        p.add_term(Monomial(variables, 0), std::move(value));
        return p;
    }

    std::size_t variables() const noexcept { return k_; }
    const std::map<Monomial, T>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(const Monomial& m, const T& c) {
        if (m.size() != k_) throw DimensionMismatch("monomial has wrong number of variables");
        if (detail::coeff_is_zero(c)) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
            return;
        }
        detail::coeff_add(it->second, c);
        if (detail::coeff_is_zero(it->second)) terms_.erase(it);
    }

    /// Total degree; -1 for the zero polynomial.
    int degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(total_degree(m)));
        return d;
    }

    MultiPoly homogeneous_part(unsigned d) const {
        MultiPoly p(k_);
        for (const auto& [m, c] : terms_) {
            if (total_degree(m) == d) p.terms_.emplace(m, c);
        }
        return p;
    }

    /// Applies a coefficient-wise linear map T -> U, dropping zero results.
    template <typename U, typename F>
    MultiPoly<U> map(F&& f) const {
        MultiPoly<U> p(k_);
        for (const auto& [m, c] : terms_) p.add_term(m, f(c));
        return p;
    }

    friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

private:
    std::size_t k_ = 0;
    std::map<Monomial, T> terms_;
};

using ScalarPoly = MultiPoly<Rational>;
using VectorPoly = MultiPoly<Vector>;

inline ScalarPoly operator+(const ScalarPoly& a, const ScalarPoly& b) {
    ScalarPoly r = a;
    for (const auto& [m, c] : b.terms()) r.add_term(m, c);
    return r;
}

inline ScalarPoly operator*(const Rational& s, const ScalarPoly& p) {
    return p.map<Rational>([&](const Rational& c) { return Rational(s * c); });
}

/// Exact evaluation at a rational point.
Rational evaluate(const ScalarPoly& p, std::span<const Rational> point);

/// Floating-point evaluator using nested Horner schemes, one variable at a time.
class HornerEvaluator {
public:
    explicit HornerEvaluator(const ScalarPoly& p);
    double operator()(std::span<const double> s) const;
    std::size_t variables() const noexcept { return k_; }

private:
    struct Node {
        double leaf = 0.0;
        std::vector<Node> children;  // indexed by exponent of this level's variable
    };
    static Node build(std::vector<std::pair<Monomial, double>> terms, std::size_t var, std::size_t k);
    static double eval(const Node& node, std::span<const double> s, std::size_t var, std::size_t k);

    std::size_t k_;
    Node root_;
};

}  // namespace slowent
