#pragma once

// Exact rational linear algebra: dense matrices, canonical row-echelon
// forms, and subspaces of Q^n represented by their reduced row basis.

#include <gmpxx.h>

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slowent/errors.hpp"

namespace slowent {

using Rational = mpq_class;

/// Coordinates of an element of Q^n (or of a Lie algebra in its basis).
using Vector = std::vector<Rational>;

/// Parses "p", "-p" or "p/q"; the result is canonicalized.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);
bool is_zero(const Vector& v);
Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(const Rational& s, const Vector& v);
Rational dot(const Vector& a, const Vector& b);

class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols);
    RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

    static RationalMatrix identity(std::size_t n);
    static RationalMatrix zero(std::size_t rows, std::size_t cols);
    /// Rows of the result are the given vectors; all must share `cols` entries.
    static RationalMatrix from_rows(std::span<const Vector> rows, std::size_t cols);
    static RationalMatrix from_columns(std::span<const Vector> columns, std::size_t rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    Vector row(std::size_t r) const;
    Vector column(std::size_t c) const;
    std::vector<Vector> row_vectors() const;

    RationalMatrix transpose() const;
    bool is_zero() const;
    RationalMatrix pow(std::size_t exponent) const;

    /// Rows stacked below this matrix's rows.
    RationalMatrix stacked(const RationalMatrix& below) const;

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

    const std::vector<Rational>& entries() const noexcept { return entries_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> entries_;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
Vector operator*(const RationalMatrix& m, const Vector& v);
RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator*(const Rational& s, const RationalMatrix& m);
std::ostream& operator<<(std::ostream& os, const RationalMatrix& m);

struct RrefResult {
    RationalMatrix reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

/// Canonical reduced row-echelon form; zero rows are kept at the bottom.
RrefResult rref(const RationalMatrix& m);
std::size_t rank(const RationalMatrix& m);

/// Inverse of a square matrix; throws DimensionMismatch when singular.
RationalMatrix inverse(const RationalMatrix& m);

class Subspace {
public:
    Subspace() = default;
    static Subspace zero(std::size_t ambient_dim);
    static Subspace full(std::size_t ambient_dim);
    /// Span of arbitrary (possibly dependent) vectors.
    static Subspace span(std::span<const Vector> vectors, std::size_t ambient_dim);
    /// Row space of a matrix.
    static Subspace row_space(const RationalMatrix& m);

    std::size_t ambient_dim() const noexcept { return ambient_dim_; }
    std::size_t dim() const noexcept { return basis_.rows(); }
    /// Rows form the canonical RREF basis.
    const RationalMatrix& basis() const noexcept { return basis_; }
    std::vector<Vector> basis_vectors() const { return basis_.row_vectors(); }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

    bool contains(const Vector& v) const;
    bool contains(const Subspace& other) const;
    bool is_full() const noexcept { return dim() == ambient_dim_; }

    /// Coordinates of v (assumed contained) with respect to basis().
    Vector coordinates(const Vector& v) const;

    /// Basis of the orthogonal complement {w : b.w = 0 for every basis row b};
    /// rows of the returned matrix cut this subspace out as a kernel.
    RationalMatrix annihilator() const;

    friend bool operator==(const Subspace&, const Subspace&) = default;

private:
    Subspace(std::size_t ambient_dim, RationalMatrix basis, std::vector<std::size_t> pivots);

    std::size_t ambient_dim_ = 0;
    RationalMatrix basis_;
    std::vector<std::size_t> pivots_;
};

Subspace kernel(const RationalMatrix& m);
Subspace image(const RationalMatrix& m);
Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
/// {v : m v in target}.
Subspace preimage(const RationalMatrix& m, const Subspace& target);

enum class ComplementRule {
    /// Basis vectors of `sup` at the positions left free by `sub`'s pivots.
    non_pivot,
    /// Greedily scan `sup`'s basis vectors from last to first.
    reversed_greedy,
};

/// A complement of `sub` inside `sup`. Throws ContainmentViolation when
/// sub is not a subspace of sup.
Subspace complement_in(const Subspace& sub, const Subspace& sup,
                       ComplementRule rule = ComplementRule::non_pivot);

}  // namespace slowent
