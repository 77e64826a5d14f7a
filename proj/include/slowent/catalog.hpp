#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "slowent/exact_linalg.hpp"
#include "slowent/lie_algebra.hpp"

namespace slowent {

enum class Family {
    sl_horocyclic_block,       ///< (d, i): u = i x (d-i) upper-right block of sl(d)
    sl_first_row_restriction,  ///< (d, l): u = span{E_{1,j} : 2 <= j <= l+1} in sl(d)
    sl_jordan_powers,          ///< (d): u = span{A_1, ..., A_{d-1}}, A_k = A_1^k
    strictly_upper_first_row,  ///< (d, l): first-row u_l in the strictly upper triangular algebra
    rank_one_jordan,           ///< (m_1, ..., m_n): U with ad(U) = J_{m_1} + ... + J_{m_n} + J_1
    sl_passive,                ///< (d): sl(d) with no u; only valid as a direct-sum factor
    direct_sum,                ///< factors acting independently
};

struct ExampleSpec {
    Family family = Family::sl_horocyclic_block;
    std::vector<int> params;
    std::vector<ExampleSpec> factors;  ///< direct_sum only

    std::string to_string() const;
};

std::string family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

/// Parses "name(a,b,...)" with nested specs inside direct_sum(...).
ExampleSpec parse_example_spec(const std::string& text);
/// Builds a spec from a family name and integer parameters.
ExampleSpec make_spec(const std::string& family, const std::vector<int>& params);

struct Example {
    ExampleSpec spec;
    LieAlgebra algebra;
    SubalgebraSpec u;
    /// [offset, offset + dim) of each direct-sum factor; one block otherwise.
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
};

/// Throws ParameterRange for parameters outside the family's range.
Example build_example(const ExampleSpec& spec);

/// Lie algebra spanned by the given matrices, with structure constants read
/// off from matrix commutators.  Throws if the span is not closed.
LieAlgebra matrix_lie_algebra(std::vector<std::string> names, const std::vector<RationalMatrix>& basis);

/// d x d matrix unit E_{i,j}, 1-based.
RationalMatrix matrix_unit(std::size_t d, std::size_t i, std::size_t j);

/// Closed-form normalized entropy for the family.
Rational oracle_entropy(const ExampleSpec& spec);

/// Closed-form expression as a display string.
std::string oracle_formula(Family f);

struct FamilyInfo {
    Family family;
    std::string name;
    std::string parameters;
    std::string range;
    std::string formula;
};

std::vector<FamilyInfo> family_catalog();

/// All specs with parameters in range for d <= max_d, plus a fixed set of
/// Jordan-type and direct-sum examples.
std::vector<ExampleSpec> catalog_registry(int max_d);

/// Jordan block sizes of a nilpotent matrix, largest first.
std::vector<std::size_t> jordan_block_sizes(const RationalMatrix& m);

struct HorocyclicWitness {
    Vector x;
    Subspace negative;
    Subspace zero;
    Subspace positive;
    std::size_t dim_negative() const { return negative.dim(); }
    std::size_t dim_zero() const { return zero.dim(); }
    std::size_t dim_positive() const { return positive.dim(); }
};

struct HorocyclicResult {
    enum class Status { found, not_found, non_integer_spectrum };
    Status status = Status::not_found;
    std::optional<HorocyclicWitness> witness;
    std::string detail;
};

std::string to_string(HorocyclicResult::Status s);

/// Solves [X, U_j] = U_j for X and compares the positive generalized
/// eigenspaces of ad(X) (integer eigenvalues only) with u.
HorocyclicResult detect_horocyclic(const LieAlgebra& algebra, const SubalgebraSpec& u);

struct SimpleFactor {
    std::size_t dim = 0;
    bool detected = false;
};

/// sum of detected factor dimensions / dim u.
Rational semisimple_sum_entropy(const std::vector<SimpleFactor>& factors, std::size_t dim_u);

/// Whether u projects nontrivially to each block of a direct-sum example.
std::vector<SimpleFactor> detected_factors(const Example& ex);

struct ProductComponent {
    std::size_t k = 1;
    Rational h;
};

/// (1/N) sum_i k_i h_i with N = sum_i k_i.
Rational product_entropy(const std::vector<ProductComponent>& components);

struct CoherenceResult {
    Rational jordan_value;
    Rational filtration_value;
    bool equal = false;
    std::vector<std::size_t> blocks;
};

/// Compares sum_i C(m_i, 2) over the Jordan blocks of ad(U) with the
/// unnormalized filtration entropy of span{U}.  Throws NotNilpotent.
CoherenceResult coherence_check_rank_one(const LieAlgebra& algebra, const Vector& generator);

}  // namespace slowent
