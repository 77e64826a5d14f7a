#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

using namespace slowent;
using support::q;
using support::vec;

TEST_CASE("centralizer examples") {
    const LieAlgebra ab = LieAlgebra::abelian(3);
    CHECK(centralizer(ab, support::span_of({vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})})).is_full());

    const LieAlgebra g = support::sl2();
    const Vector E = g.basis_vector(1);
    const std::vector<Vector> e{E};
    CHECK(centralizer(g, support::span_of({E})) == Subspace::span(e, 3));

    const Example sl3 = build_example(make_spec("sl_first_row_restriction", {3, 1}));
    CHECK(centralizer(sl3.algebra, sl3.u).dim() == 4);
    const Example sl3b = build_example(make_spec("sl_first_row_restriction", {3, 2}));
    CHECK(centralizer(sl3b.algebra, sl3b.u) == Subspace::span(sl3b.u.generators, 8));
}

TEST_CASE("filtration examples") {
    const LieAlgebra g = support::sl2();
    const Filtration f = compute_filtration(g, support::span_of({g.basis_vector(1)}));
    CHECK(f.dims == std::vector<std::size_t>{1, 1, 1});
    CHECK(f.m == 2);

    const Example jp = build_example(make_spec("sl_jordan_powers", {3}));
    const Filtration fj = compute_filtration(jp.algebra, jp.u);
    CHECK(fj.dims == std::vector<std::size_t>{2, 2, 2, 1, 1});
    CHECK(fj.m == 4);

    const LieAlgebra h = support::heisenberg();
    const Filtration fh = compute_filtration(h, support::span_of({h.basis_vector(0)}));
    CHECK(fh.dims == std::vector<std::size_t>{2, 1});
    CHECK(fh.m == 1);
    const std::vector<Vector> xz{h.basis_vector(0), h.basis_vector(2)};
    CHECK(fh.tilde[0] == Subspace::span(xz, 3));
}

TEST_CASE("non-unipotent input stalls the recursion") {
    const LieAlgebra g = support::sl2();
    CHECK_THROWS_AS(compute_filtration(g, support::span_of({g.basis_vector(0)})), NotUnipotent);
}

TEST_CASE("slow_entropy examples") {
    const LieAlgebra g = support::sl2();
    const EntropyValue e = slow_entropy(compute_filtration(g, support::span_of({g.basis_vector(1)})));
    CHECK(e.unnormalized == 3);
    CHECK(e.normalized == 3);

    const Example jp = build_example(make_spec("sl_jordan_powers", {3}));
    CHECK(slow_entropy(compute_filtration(jp.algebra, jp.u)).normalized == q(13, 2));

    // central u: Z in the Heisenberg algebra
    const LieAlgebra h = support::heisenberg();
    const Filtration fz = compute_filtration(h, support::span_of({h.basis_vector(2)}));
    CHECK(fz.m == 0);
    CHECK(slow_entropy(fz).normalized == 0);
}

TEST_CASE("filtration structure on the catalog") {
    for (const ExampleSpec& spec : catalog_registry(5)) {
        const Example ex = build_example(spec);
        const Filtration f = compute_filtration(ex.algebra, ex.u);
        const std::size_t n = ex.algebra.dim();
        CHECK(f.tilde.back().is_full());
        CHECK(f.graded.front() == f.tilde.front());
        std::size_t total = 0;
        for (std::size_t i = 0; i <= f.m; ++i) {
            total += f.dims[i];
            if (i > 0) {
                CHECK(f.tilde[i].contains(f.tilde[i - 1]));
                CHECK(f.tilde[i].dim() > f.tilde[i - 1].dim());
                CHECK(intersect(f.graded[i], f.tilde[i - 1]).dim() == 0);
                CHECK(sum(f.graded[i], f.tilde[i - 1]) == f.tilde[i]);
            }
        }
        CHECK(total == n);
        Subspace all = Subspace::zero(n);
        for (const Subspace& g : f.graded) all = sum(all, g);
        CHECK(all.is_full());
        const EntropyValue h = slow_entropy(f);
        CHECK(h.normalized * Rational(static_cast<unsigned long>(f.k)) == h.unnormalized);
        CHECK(h.normalized >= 0);
    }
}

TEST_CASE("recursion agrees with the all-tuples definition") {
    for (const ExampleSpec& spec : catalog_registry(4)) {
        const Example ex = build_example(spec);
        const std::size_t n = ex.algebra.dim();
        if (n > 15) continue;
        const Filtration f = compute_filtration(ex.algebra, ex.u);
        const std::vector<RationalMatrix> ops = ad_operators(ex.algebra, ex.u);
        for (std::size_t i = 0; i <= f.m; ++i) {
            const support::LiteralLevel lit = support::literal_tilde(ops, i, n, f.tilde[i]);
            CHECK_MESSAGE(lit.dim == f.tilde[i].dim(), spec.to_string() << " level " << i);
            CHECK(lit.candidate_killed);
        }
    }
}

TEST_CASE("filtration is invariant under a change of basis of u") {
    std::mt19937_64 rng(41);
    for (const ExampleSpec& spec : catalog_registry(4)) {
        const Example ex = build_example(spec);
        const std::size_t k = ex.u.k();
        if (k < 2) continue;
        const Filtration f = compute_filtration(ex.algebra, ex.u);
        for (int trial = 0; trial < 2; ++trial) {
            const RationalMatrix g = support::random_invertible(rng, k);
            SubalgebraSpec v;
            for (std::size_t r = 0; r < k; ++r) {
                Vector w = zero_vector(ex.algebra.dim());
                for (std::size_t c = 0; c < k; ++c) w = add(w, scale(g(r, c), ex.u.generators[c]));
                v.generators.push_back(w);
            }
            const Filtration fv = compute_filtration(ex.algebra, v);
            CHECK(fv.tilde == f.tilde);
            CHECK(fv.dims == f.dims);
            CHECK(fv.m == f.m);
            CHECK(slow_entropy(fv).normalized == slow_entropy(f).normalized);
            CHECK(slow_entropy(fv).unnormalized == slow_entropy(f).unnormalized);
        }
    }
}

TEST_CASE("entropy does not depend on the complement rule") {
    for (const ExampleSpec& spec : catalog_registry(4)) {
        const Example ex = build_example(spec);
        const Filtration a = compute_filtration(ex.algebra, ex.u, ComplementRule::non_pivot);
        const Filtration b = compute_filtration(ex.algebra, ex.u, ComplementRule::reversed_greedy);
        CHECK(a.tilde == b.tilde);
        CHECK(a.dims == b.dims);
        CHECK(slow_entropy(a).normalized == slow_entropy(b).normalized);
    }
}

TEST_CASE("witness_nonkill examples") {
    const LieAlgebra g = support::sl2();
    const Vector H = g.basis_vector(0), E = g.basis_vector(1), F = g.basis_vector(2);
    const SubalgebraSpec u = support::span_of({E});
    const Filtration f = compute_filtration(g, u);

    CHECK(witness_nonkill(g, u, f, 0, E).empty());

    const std::vector<Vector> w1 = witness_nonkill(g, u, f, 1, H);
    REQUIRE(w1.size() == 1);
    CHECK(w1[0] == E);
    CHECK(g.bracket(E, H) == scale(q(-2), E));

    const std::vector<Vector> w2 = witness_nonkill(g, u, f, 2, F);
    REQUIRE(w2.size() == 2);
    const Vector image = g.bracket(w2[0], g.bracket(w2[1], F));
    CHECK(!is_zero(image));
    CHECK(f.tilde[0].contains(image));

    CHECK_THROWS_AS(witness_nonkill(g, u, f, 1, F), ContainmentViolation);
}

TEST_CASE("every graded element has a witness") {
    for (const ExampleSpec& spec : catalog_registry(4)) {
        const Example ex = build_example(spec);
        const Filtration f = compute_filtration(ex.algebra, ex.u);
        for (std::size_t i = 1; i <= f.m; ++i) {
            for (const Vector& x : f.graded[i].basis_vectors()) {
                const std::vector<Vector> w = witness_nonkill(ex.algebra, ex.u, f, i, x);
                REQUIRE(w.size() == i);
                Vector v = x;
                for (auto it = w.rbegin(); it != w.rend(); ++it) v = ex.algebra.bracket(*it, v);
                CHECK(!is_zero(v));
                CHECK(f.tilde[0].contains(v));
            }
        }
    }
}
