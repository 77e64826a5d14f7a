#include "slowent/filtration.hpp"

#include <functional>

namespace slowent {

namespace {

Subspace common_kernel(const std::vector<RationalMatrix>& ops, std::size_t n) {
    Subspace s = Subspace::full(n);
    for (const RationalMatrix& op : ops) s = intersect(s, kernel(op));
    return s;
}

}  // namespace

Subspace centralizer(const LieAlgebra& algebra, const SubalgebraSpec& u) {
    return common_kernel(ad_operators(algebra, u), algebra.dim());
}

Filtration compute_filtration(const std::vector<RationalMatrix>& ad_ops, std::size_t n,
                              ComplementRule rule) {
    Filtration f;
    f.k = ad_ops.size();
    f.tilde.push_back(common_kernel(ad_ops, n));
    while (!f.tilde.back().is_full()) {
        if (f.tilde.size() > n) {
            throw NotUnipotent("filtration did not reach the full algebra within dim steps");
        }
        Subspace next = Subspace::full(n);
        for (const RationalMatrix& op : ad_ops) next = intersect(next, preimage(op, f.tilde.back()));
        if (next == f.tilde.back()) {
            throw NotUnipotent("filtration stabilized at dimension " + std::to_string(next.dim()) +
                               " < " + std::to_string(n) + "; u is not ad-unipotent");
        }
        f.tilde.push_back(std::move(next));
    }
    f.m = f.tilde.size() - 1;
    f.graded.push_back(f.tilde.front());
    for (std::size_t i = 1; i <= f.m; ++i) f.graded.push_back(complement_in(f.tilde[i - 1], f.tilde[i], rule));
    for (const Subspace& g : f.graded) f.dims.push_back(g.dim());
    return f;
}

Filtration compute_filtration(const LieAlgebra& algebra, const SubalgebraSpec& u, ComplementRule rule) {
    return compute_filtration(ad_operators(algebra, u), algebra.dim(), rule);
}

EntropyValue slow_entropy(const Filtration& f) {
    EntropyValue e;
    e.unnormalized = 0;
    for (std::size_t i = 0; i < f.dims.size(); ++i) e.unnormalized += Rational(static_cast<unsigned long>(i * f.dims[i]));
    e.normalized = f.k == 0 ? Rational(0) : e.unnormalized / Rational(static_cast<unsigned long>(f.k));
    return e;
}

std::vector<Vector> witness_nonkill(const LieAlgebra& algebra, const SubalgebraSpec& u,
                                    const Filtration& f, std::size_t level, const Vector& x,
                                    int combination_bound) {
    if (level > f.m) throw DimensionMismatch("witness_nonkill: level exceeds filtration degree");
    if (is_zero(x)) throw ContainmentViolation("witness_nonkill: x must be nonzero");
    if (!f.tilde[level].contains(x) || (level > 0 && f.tilde[level - 1].contains(x))) {
        throw ContainmentViolation("witness_nonkill: x does not lie in tilde_i minus tilde_{i-1}");
    }
    if (level == 0) return {};
    const std::vector<RationalMatrix> ops = ad_operators(algebra, u);
    const Subspace& bottom = f.tilde.front();

    // Nondecreasing index tuples suffice because the ad operators commute.
    std::vector<std::size_t> idx(level, 0);
    std::vector<Vector> found;
    std::function<bool(std::size_t, std::size_t, const Vector&)> dfs =
        [&](std::size_t pos, std::size_t start, const Vector& v) -> bool {
        if (is_zero(v)) return false;
        if (pos == 0) {
            if (!bottom.contains(v)) return false;
            for (std::size_t t = 0; t < level; ++t) found.push_back(u.generators[idx[t]]);
            return true;
        }
        for (std::size_t g = start; g < ops.size(); ++g) {
            idx[pos - 1] = g;
            if (dfs(pos - 1, g, ops[g] * v)) return true;
        }
        return false;
    };
    if (dfs(level, 0, x)) return found;

    // Fallback: a single integer combination W applied i times.
    const std::size_t k = u.k();
    std::vector<int> coeff(k, -combination_bound);
    while (true) {
        Vector w = zero_vector(algebra.dim());
        for (std::size_t j = 0; j < k; ++j) w = add(w, scale(Rational(coeff[j]), u.generators[j]));
        if (!is_zero(w)) {
            const RationalMatrix adw = algebra.ad(w);
            Vector v = x;
            for (std::size_t t = 0; t < level; ++t) v = adw * v;
            if (!is_zero(v) && bottom.contains(v)) return std::vector<Vector>(level, w);
        }
        std::size_t j = 0;
        while (j < k && coeff[j] == combination_bound) coeff[j++] = -combination_bound;
        if (j == k) break;
        ++coeff[j];
    }
    throw SearchExhausted("witness_nonkill: no witness within combination bound");
}

}  // namespace slowent
