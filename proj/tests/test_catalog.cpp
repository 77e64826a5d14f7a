#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

using namespace slowent;
using support::q;

namespace {

Rational entropy_of(const ExampleSpec& spec) {
    const Example ex = build_example(spec);
    return slow_entropy(compute_filtration(ex.algebra, ex.u)).normalized;
}

RationalMatrix jordan(std::size_t m) {
    RationalMatrix j(m, m);
    for (std::size_t r = 0; r + 1 < m; ++r) j(r, r + 1) = 1;
    return j;
}

}  // namespace

TEST_CASE("build_example shapes") {
    const Example sl3 = build_example(make_spec("sl_horocyclic_block", {3, 1}));
    CHECK(sl3.algebra.dim() == 8);
    CHECK(sl3.u.k() == 2);
    CHECK(sl3.algebra.basis_names().front() == "E12");
    CHECK(sl3.algebra.basis_names().back() == "H2");

    const Example su = build_example(make_spec("strictly_upper_first_row", {4, 2}));
    CHECK(su.algebra.dim() == 6);
    CHECK(su.u.k() == 2);

    const Example r1 = build_example(make_spec("rank_one_jordan", {3, 2}));
    CHECK(r1.algebra.dim() == 6);
    CHECK(r1.u.k() == 1);

    const Example ds = build_example(parse_example_spec("direct_sum(sl_horocyclic_block(2,1),rank_one_jordan(3))"));
    CHECK(ds.algebra.dim() == 7);
    CHECK(ds.u.k() == 2);
    REQUIRE(ds.blocks.size() == 2);
    CHECK(ds.blocks[1].first == 3);
    CHECK(ds.algebra.basis_names().front() == "1.E12");
}

TEST_CASE("parameter ranges are enforced") {
    CHECK_THROWS_AS(build_example(make_spec("sl_horocyclic_block", {3, 3})), ParameterRange);
    CHECK_THROWS_AS(build_example(make_spec("sl_first_row_restriction", {3, 0})), ParameterRange);
    CHECK_THROWS_AS(build_example(make_spec("sl_jordan_powers", {2})), ParameterRange);
    CHECK_THROWS_AS(build_example(make_spec("sl_passive", {3})), ParameterRange);
    CHECK_THROWS_AS(build_example(make_spec("rank_one_jordan", {})), ParameterRange);
    CHECK_THROWS_AS(make_spec("no_such_family", {1}), ParseError);
}

TEST_CASE("specs round-trip through text") {
    for (const ExampleSpec& spec : catalog_registry(4)) {
        const ExampleSpec again = parse_example_spec(spec.to_string());
        CHECK(again.to_string() == spec.to_string());
    }
    CHECK_THROWS_AS(parse_example_spec("sl_jordan_powers(3"), ParseError);
    CHECK_THROWS_AS(parse_example_spec("sl_jordan_powers(x)"), ParseError);
}

TEST_CASE("oracle examples") {
    CHECK(oracle_entropy(make_spec("sl_horocyclic_block", {4, 2})) == q(15, 4));
    CHECK(oracle_entropy(make_spec("sl_first_row_restriction", {5, 2})) == 7);
    CHECK(oracle_entropy(make_spec("rank_one_jordan", {5, 4, 2, 1})) == 17);
    CHECK(oracle_entropy(make_spec("sl_jordan_powers", {3})) == q(13, 2));
    CHECK(oracle_entropy(make_spec("strictly_upper_first_row", {4, 2})) == q(3, 2));
}

TEST_CASE("oracle formulas agree with the filtration on the catalog") {
    for (const ExampleSpec& spec : catalog_registry(5)) {
        CHECK_MESSAGE(entropy_of(spec) == oracle_entropy(spec), spec.to_string());
    }
}

TEST_CASE("every family has a catalog entry") {
    const std::vector<FamilyInfo> info = family_catalog();
    CHECK(info.size() >= 6);
    for (const FamilyInfo& f : info) {
        CHECK(family_from_name(f.name) == f.family);
        CHECK(f.formula == oracle_formula(f.family));
        CHECK(!f.range.empty());
    }
}

TEST_CASE("jordan_block_sizes examples") {
    CHECK(jordan_block_sizes(RationalMatrix::zero(3, 3)) == std::vector<std::size_t>{1, 1, 1});
    CHECK(jordan_block_sizes(jordan(3)) == std::vector<std::size_t>{3});
    const Example sl3 = build_example(make_spec("sl_first_row_restriction", {3, 1}));
    const std::vector<std::size_t> b = jordan_block_sizes(sl3.algebra.ad(sl3.u.generators[0]));
    Rational total = 0;
    std::size_t n = 0;
    for (std::size_t m : b) {
        total += support::binom2(m);
        n += m;
    }
    CHECK(n == 8);
    CHECK(total == 5);
    CHECK_THROWS_AS(jordan_block_sizes(RationalMatrix::identity(2)), NotNilpotent);
}

TEST_CASE("jordan blocks survive conjugation") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::size_t> sizes{1 + rng() % 3, 1 + rng() % 3, 1 + rng() % 2};
        std::size_t n = 0;
        for (std::size_t s : sizes) n += s;
        RationalMatrix j(n, n);
        std::size_t off = 0;
        for (std::size_t s : sizes) {
            for (std::size_t r = 0; r + 1 < s; ++r) j(off + r, off + r + 1) = 1;
            off += s;
        }
        const RationalMatrix p = support::random_invertible(rng, n);
        std::sort(sizes.rbegin(), sizes.rend());
        CHECK(jordan_block_sizes(p * j * inverse(p)) == sizes);
    }
}

TEST_CASE("horocyclic detection examples") {
    const Example sl2 = build_example(make_spec("sl_horocyclic_block", {2, 1}));
    const HorocyclicResult r = detect_horocyclic(sl2.algebra, sl2.u);
    REQUIRE(r.status == HorocyclicResult::Status::found);
    REQUIRE(r.witness.has_value());
    const std::size_t h = *sl2.algebra.basis_index("H1");
    CHECK(r.witness->x == scale(q(1, 2), sl2.algebra.basis_vector(h)));
    CHECK(r.witness->dim_negative() == 1);
    CHECK(r.witness->dim_zero() == 1);
    CHECK(r.witness->dim_positive() == 1);
    for (const Vector& g : sl2.u.generators) CHECK(sl2.algebra.bracket(r.witness->x, g) == g);

    const Example sl4 = build_example(make_spec("sl_horocyclic_block", {4, 2}));
    const HorocyclicResult r4 = detect_horocyclic(sl4.algebra, sl4.u);
    REQUIRE(r4.status == HorocyclicResult::Status::found);
    CHECK(r4.witness->dim_negative() == 4);
    CHECK(r4.witness->dim_zero() == 7);
    CHECK(r4.witness->dim_positive() == 4);
    for (const Vector& g : sl4.u.generators) CHECK(sl4.algebra.bracket(r4.witness->x, g) == g);

    for (const char* text : {"sl_jordan_powers(3)", "sl_first_row_restriction(4,1)", "strictly_upper_first_row(3,1)"}) {
        const Example ex = build_example(parse_example_spec(text));
        CHECK_MESSAGE(detect_horocyclic(ex.algebra, ex.u).status == HorocyclicResult::Status::not_found, text);
    }
    CHECK(to_string(HorocyclicResult::Status::found) == "found");
}

TEST_CASE("semisimple_sum_entropy examples") {
    CHECK(semisimple_sum_entropy({{3, true}}, 1) == 3);
    CHECK(semisimple_sum_entropy({{3, true}, {5, true}}, 2) == 4);
    CHECK(semisimple_sum_entropy({{3, false}}, 1) == 0);
    CHECK_THROWS_AS(semisimple_sum_entropy({{3, true}}, 0), ParameterRange);

    const Example ds = build_example(
        parse_example_spec("direct_sum(sl_horocyclic_block(2,1),sl_passive(3))"));
    const std::vector<SimpleFactor> f = detected_factors(ds);
    REQUIRE(f.size() == 2);
    CHECK(f[0].detected);
    CHECK(!f[1].detected);
}

TEST_CASE("product_entropy examples") {
    CHECK(product_entropy({{1, q(3)}, {2, q(4)}}) == q(11, 3));
    CHECK(product_entropy({{2, q(5, 2)}}) == q(5, 2));
    CHECK_THROWS_AS(product_entropy({}), ParameterRange);
}

TEST_CASE("direct sums match the weighted average of their factors") {
    for (const ExampleSpec& spec : catalog_registry(4)) {
        if (spec.family != Family::direct_sum) continue;
        std::vector<ProductComponent> parts;
        for (const ExampleSpec& factor : spec.factors) {
            if (factor.family == Family::sl_passive) continue;
            const Example ex = build_example(factor);
            parts.push_back({ex.u.k(), entropy_of(factor)});
        }
        CHECK_MESSAGE(entropy_of(spec) == product_entropy(parts), spec.to_string());
    }
}

TEST_CASE("rank-one coherence examples") {
    const CoherenceResult ab = coherence_check_rank_one(LieAlgebra::abelian(2), zero_vector(2));
    CHECK(ab.jordan_value == 0);
    CHECK(ab.filtration_value == 0);
    CHECK(ab.equal);

    const LieAlgebra g = support::sl2();
    const CoherenceResult e = coherence_check_rank_one(g, g.basis_vector(1));
    CHECK(e.jordan_value == 3);
    CHECK(e.equal);

    const Example jp = build_example(make_spec("sl_jordan_powers", {3}));
    const CoherenceResult a1 = coherence_check_rank_one(jp.algebra, jp.u.generators[0]);
    CHECK(a1.blocks == std::vector<std::size_t>{5, 3});
    CHECK(a1.jordan_value == 13);
    CHECK(a1.equal);

    CHECK_THROWS_AS(coherence_check_rank_one(g, g.basis_vector(0)), NotNilpotent);
}

TEST_CASE("matrix_lie_algebra rejects a non-closed span") {
    std::vector<RationalMatrix> basis{matrix_unit(2, 1, 2), matrix_unit(2, 2, 1)};
    CHECK_THROWS_AS(matrix_lie_algebra({"E", "F"}, basis), Error);
}
