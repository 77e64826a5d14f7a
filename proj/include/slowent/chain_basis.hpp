#pragma once

// Generalized chain bases.
//
// For each level i >= 1 the maps
//     Phi_i : Sym^i(u) (x) g_0^*  ->  g_i^*,   U_1...U_i (x) psi  |->  psi o ad_{U_1}...ad_{U_i}
// are surjective, so a subfamily of the images of the tensor words
// U^mu (x) theta_alpha is a basis of g_i^*.  The chain basis of g_i is the
// dual basis; each element carries the alpha of the word it came from and
// the polynomial  p(s) = theta_alpha(pi_0(Ad(exp(sum s_j U_j)) Y)).

#include <cstddef>
#include <vector>

#include "slowent/filtration.hpp"
#include "slowent/lie_algebra.hpp"
#include "slowent/multipoly.hpp"

namespace slowent {

/// U_1^{m_1} ... U_k^{m_k} (x) theta_alpha.
struct TensorWord {
    Monomial multidegree;
    std::size_t alpha = 0;
    unsigned degree() const { return total_degree(multidegree); }
    friend bool operator==(const TensorWord&, const TensorWord&) = default;
};

/// Coordinates adapted to the splitting g = g_0 + g_1 + ... + g_m.
/// The columns of `basis` are the graded bases in level order; the
/// projection pi_i reads the block [offset(i), offset(i) + dims[i]) of
/// `to_graded * v`.  theta_alpha is the alpha-th graded coordinate (block 0).
struct GradedFrame {
    RationalMatrix basis;
    RationalMatrix to_graded;
    std::vector<std::size_t> offsets;
    std::vector<std::size_t> dims;

    Vector graded_coordinates(const Vector& v) const { return to_graded * v; }
    Vector project(const Vector& graded, std::size_t level) const;
};

GradedFrame make_graded_frame(const Filtration& f);

/// Everything the chain-basis constructions need, fixed once per (g, u).
struct ChainContext {
    const LieAlgebra* algebra = nullptr;
    SubalgebraSpec u;
    Filtration filtration;
    GradedFrame frame;
    std::vector<RationalMatrix> ad_ambient;  ///< ad(U_j) in the algebra basis
    std::vector<RationalMatrix> ad_graded;   ///< ad(U_j) in graded coordinates
};

ChainContext make_chain_context(const LieAlgebra& algebra, const SubalgebraSpec& u, const Filtration& f);

/// ad_{U_1}^{m_1}...ad_{U_k}^{m_k} v, applying the factors in `order`
/// (a permutation of generator slots with multiplicity); default order is
/// U_k first.
Vector apply_word(const std::vector<RationalMatrix>& ops, const Monomial& multidegree, const Vector& v);
Vector apply_in_order(const std::vector<RationalMatrix>& ops, const std::vector<std::size_t>& order,
                      const Vector& v);

/// Phi_i(U^mu (x) psi) restricted to g_i, written in the coordinates of the
/// g_i basis.  `psi` is a functional on g_0 given in theta coordinates.
Vector phi_apply(const ChainContext& ctx, const Monomial& multidegree, const Vector& psi);
/// The word's own functional theta_alpha.
Vector phi_apply(const ChainContext& ctx, const TensorWord& word);

struct ChainElement {
    std::size_t level = 0;
    Vector y;  ///< algebra coordinates
    TensorWord word;
    ScalarPoly poly;
};

struct ChainBasis {
    std::size_t k = 0;
    std::size_t n0 = 0;
    std::vector<std::vector<ChainElement>> levels;
    bool polynomials_ready = false;

    std::size_t size() const;
    /// Flattened elements in level order.
    std::vector<const ChainElement*> elements() const;
};

/// Greedy selection over words in graded-lex order of multidegree, then
/// alpha ascending.  Throws SurjectivityFailure(i) if a level cannot be spanned.
ChainBasis build_chain_basis(const ChainContext& ctx);

/// Ad(exp(sum_j s_j U_j)) Y as an algebra-valued polynomial in s, using
/// exp(ad) = sum_{mu} s^mu ad^mu / mu!; the series is cut once a whole
/// degree vanishes.
VectorPoly orbit_polynomial(const std::vector<RationalMatrix>& ops, const Vector& y);

/// Fills cb.polys with theta_{alpha_j}(pi_0(Ad(exp U_s) Y_j)).
void associated_polynomials(const ChainContext& ctx, ChainBasis& cb);

struct IndependenceEntry {
    std::size_t level = 0;
    std::size_t alpha = 0;
    std::size_t count = 0;
    std::size_t rank = 0;
    bool ok() const { return rank == count; }
};

/// For each (level, alpha), the rank of the top-degree homogeneous parts.
std::vector<IndependenceEntry> verify_homogeneous_independence(const ChainBasis& cb);

struct ProjectionDegree {
    std::size_t element_level = 0;
    std::size_t element_index = 0;
    std::size_t projection = 0;
    int degree = -1;  ///< -1 for the zero polynomial
    int bound = 0;    ///< max(level - projection, 0)
    bool exact() const { return degree == bound; }
};

/// deg pi_i(Ad(exp U_s) Y) for every chain element Y and every projection index i.
std::vector<ProjectionDegree> projection_degree_table(const ChainContext& ctx, const ChainBasis& cb);

}  // namespace slowent
