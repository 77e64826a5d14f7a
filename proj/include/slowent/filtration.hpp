#pragma once

#include <cstddef>
#include <vector>

#include "slowent/exact_linalg.hpp"
#include "slowent/lie_algebra.hpp"

namespace slowent {

/// The centralizer filtration tilde_0 < tilde_1 < ... < tilde_m = g of an
/// abelian ad-unipotent subalgebra, where tilde_i collects the elements
/// killed by every (i+1)-fold product of ad operators from u, together with
/// chosen graded complements g_i of tilde_{i-1} in tilde_i.
struct Filtration {
    std::vector<Subspace> tilde;
    std::vector<Subspace> graded;
    std::vector<std::size_t> dims;
    std::size_t m = 0;
    std::size_t k = 0;
    std::size_t ambient_dim() const { return tilde.empty() ? 0 : tilde.front().ambient_dim(); }
};

struct EntropyValue {
    Rational unnormalized;  ///< sum_i i * dim g_i
    Rational normalized;    ///< unnormalized / dim u
};

Subspace centralizer(const LieAlgebra& algebra, const SubalgebraSpec& u);

/// Builds the filtration by the preimage recursion
///   tilde_i = { X : ad(U_j) X in tilde_{i-1} for all j }.
/// Throws NotUnipotent when the recursion stalls below the full algebra.
Filtration compute_filtration(const LieAlgebra& algebra, const SubalgebraSpec& u,
                              ComplementRule rule = ComplementRule::non_pivot);

/// Same recursion on bare ad operators; used where u is given as operators
/// (possibly zero) rather than as a validated subalgebra.
Filtration compute_filtration(const std::vector<RationalMatrix>& ad_ops, std::size_t ambient_dim,
                              ComplementRule rule = ComplementRule::non_pivot);

EntropyValue slow_entropy(const Filtration& f);

/// Generators U_{a_1},...,U_{a_i} (as vectors) with ad(U_1)...ad(U_i) x a
/// nonzero element of tilde_0.  `level` is the graded index i of x.
/// Searches generator tuples first, then small integer combinations up to
/// `combination_bound`; throws SearchExhausted if nothing is found.
std::vector<Vector> witness_nonkill(const LieAlgebra& algebra, const SubalgebraSpec& u,
                                    const Filtration& f, std::size_t level, const Vector& x,
                                    int combination_bound = 2);

}  // namespace slowent
