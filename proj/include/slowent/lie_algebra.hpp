#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "slowent/exact_linalg.hpp"

namespace slowent {

/// Sparse bracket entry [e_i, e_j] = sum_k c_k e_k with i < j.
struct BracketEntry {
    std::size_t i = 0;
    std::size_t j = 0;
    std::vector<std::pair<std::size_t, Rational>> terms;
};

/// A finite-dimensional Lie algebra given by structure constants in a
/// named basis.  In memory the table is dense: structure(i, j) holds the
/// coordinates of [e_i, e_j].
class LieAlgebra {
public:
    LieAlgebra() = default;

    /// Builds from i<j bracket entries; antisymmetry holds by construction.
    static LieAlgebra from_brackets(std::vector<std::string> basis_names,
                                    const std::vector<BracketEntry>& brackets);
    /// Raw dense table c[i][j][k], no symmetry enforced (for validation).
    static LieAlgebra from_dense(std::vector<std::string> basis_names,
                                 std::vector<std::vector<Vector>> table);
    static LieAlgebra abelian(std::size_t dim);

    std::size_t dim() const noexcept { return names_.size(); }
    const std::vector<std::string>& basis_names() const noexcept { return names_; }
    const Vector& structure(std::size_t i, std::size_t j) const { return table_[i][j]; }

    Vector basis_vector(std::size_t i) const { return unit_vector(dim(), i); }
    std::optional<std::size_t> basis_index(const std::string& name) const;

    Vector bracket(const Vector& a, const Vector& b) const;
    /// Matrix of ad(x) = [x, .] acting on coordinate columns.
    RationalMatrix ad(const Vector& x) const;

    /// i<j entries with nonzero brackets, the compact file form.
    std::vector<BracketEntry> sparse_brackets() const;

private:
    std::vector<std::string> names_;
    std::vector<std::vector<Vector>> table_;
};

struct Violation {
    enum class Kind { antisymmetry, jacobi, shape };
    Kind kind;
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t k = 0;
    std::string detail;
};

std::string to_string(Violation::Kind kind);

/// Empty iff the table is antisymmetric and satisfies Jacobi on all basis triples.
std::vector<Violation> validate(const LieAlgebra& algebra);

/// Basis U_1..U_k of an abelian subalgebra, as coordinate vectors.
struct SubalgebraSpec {
    std::vector<Vector> generators;
    std::size_t k() const noexcept { return generators.size(); }
};

/// Smallest N with m^N = 0, or nullopt when m^n != 0 (n = size of m).
std::optional<std::size_t> nilpotency_index(const RationalMatrix& m);

struct UnipotencyIssue {
    enum class Kind { empty, wrong_length, dependent, non_abelian, not_nilpotent };
    Kind kind;
    std::size_t a = 0;  ///< offending generator
    std::size_t b = 0;  ///< partner generator for non_abelian
    Vector witness;     ///< the nonzero bracket, or the generator that is not nilpotent
    std::string detail;
};

std::string to_string(UnipotencyIssue::Kind kind);

struct UnipotencyReport {
    std::vector<UnipotencyIssue> issues;
    bool ok() const noexcept { return issues.empty(); }
};

UnipotencyReport check_abelian_unipotent(const LieAlgebra& algebra, const SubalgebraSpec& u);

/// ad(U_j) for each generator.
std::vector<RationalMatrix> ad_operators(const LieAlgebra& algebra, const SubalgebraSpec& u);

}  // namespace slowent
