#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "slowent/divergence.hpp"
#include "test_support.hpp"

using namespace slowent;
using support::q;

namespace {

struct Setup {
    LieAlgebra algebra;
    SubalgebraSpec u;
    Filtration f;
    ChainBasis cb;
};

Setup setup(const LieAlgebra& g, const SubalgebraSpec& u) {
    Setup s{g, u, {}, {}};
    s.f = compute_filtration(s.algebra, s.u);
    const ChainContext ctx = make_chain_context(s.algebra, s.u, s.f);
    s.cb = build_chain_basis(ctx);
    associated_polynomials(ctx, s.cb);
    return s;
}

Setup setup(const std::string& text) {
    const Example ex = build_example(parse_example_spec(text));
    return setup(ex.algebra, ex.u);
}

ScalarPoly poly(std::size_t k, std::initializer_list<std::pair<Monomial, long>> terms) {
    ScalarPoly p(k);
    for (const auto& [m, c] : terms) p.add_term(m, q(c));
    return p;
}

/// Largest |p| over the corners; exact for polynomials of degree at most
/// one in each variable.
double multilinear_sup(const ScalarPoly& p, double R) {
    const std::size_t k = p.variables();
    const HornerEvaluator h(p);
    double best = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        std::vector<double> s(k);
        for (std::size_t j = 0; j < k; ++j) s[j] = (mask >> j & 1) ? R : -R;
        best = std::max(best, std::abs(h(s)));
    }
    return best;
}

}  // namespace

TEST_CASE("grid geometry") {
    const BoxGrid g{2, 3.0, 4};
    const std::vector<double> a = g.axis();
    REQUIRE(a.size() == 4);
    CHECK(a.front() == -3.0);
    CHECK(a.back() == 3.0);
    CHECK(g.size() == 16);
    std::size_t count = 0;
    g.for_each([&](std::span<const double>) { ++count; });
    CHECK(count == 16);
    CHECK_THROWS_AS(BoxGrid({1, 1.0, 1}).axis(), ParameterRange);
}

TEST_CASE("sup_on_box examples") {
    CHECK(sup_on_box(ScalarPoly::constant(2, q(-7, 2)), BoxGrid{2, 5.0, 3}) == doctest::Approx(3.5));
    CHECK(sup_on_box(poly(1, {{{1}, 1}}), BoxGrid{1, 4.0, 5}) == doctest::Approx(4.0));

    // s1 s2 - s1 on [-2,2]^2; the oracle looks only at corners
    const ScalarPoly p = poly(2, {{{1, 1}, 1}, {{1, 0}, -1}});
    const double oracle = multilinear_sup(p, 2.0);
    CHECK(oracle == doctest::Approx(6.0));
    CHECK(sup_on_box(p, BoxGrid{2, 2.0, 9}) == doctest::Approx(oracle));
    CHECK_THROWS_AS(sup_on_box(p, BoxGrid{3, 2.0, 3}), DimensionMismatch);
}

TEST_CASE("sup of a homogeneous polynomial scales like R^d") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 10; ++trial) {
        const unsigned d = 1 + rng() % 4;
        ScalarPoly p(2);
        for (const Monomial& m : monomials_of_degree(2, d)) p.add_term(m, q(static_cast<long>(rng() % 7) - 3));
        if (p.is_zero()) continue;
        const double a = sup_on_box(p, BoxGrid{2, 1.0, 5});
        const double b = sup_on_box(p, BoxGrid{2, 3.0, 5});
        CHECK(std::abs(b - std::pow(3.0, d) * a) <= 1e-9 * b);
    }
}

TEST_CASE("refining the grid never lowers the sup") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 20; ++trial) {
        ScalarPoly p(2);
        for (unsigned d = 0; d <= 3; ++d)
            for (const Monomial& m : monomials_of_degree(2, d)) p.add_term(m, q(static_cast<long>(rng() % 5) - 2));
        BoxGrid g{2, 1.5, 3};
        double prev = sup_on_box(p, g);
        for (int level = 0; level < 3; ++level) {
            g = g.refined();
            const double next = sup_on_box(p, g);
            CHECK(next >= prev);
            prev = next;
        }
    }
}

TEST_CASE("Brudnyi-Ganzburg examples") {
    // p = s on [-1,1]: {|s| <= 1/2} has measure 1, bound (4*2/1)^1 * 1/2 = 4, sup 1
    const ScalarPoly p = poly(1, {{{1}, 1}});
    const std::vector<double> t{0.5};
    const SublevelReport r = brudnyi_ganzburg_check(p, BoxGrid{1, 1.0, 2001}, t);
    REQUIRE(r.levels.size() == 1);
    CHECK(r.degree == 1);
    CHECK(r.box_volume == doctest::Approx(2.0));
    CHECK(r.sup == doctest::Approx(1.0));
    CHECK(r.levels[0].measure == doctest::Approx(1.0).epsilon(0.01));
    CHECK(r.levels[0].bound == doctest::Approx(4.0).epsilon(0.01));
    CHECK(r.levels[0].margin >= 1.0);
    CHECK(r.passed);
    CHECK(r.refinement_converged);

    CHECK_THROWS_AS(brudnyi_ganzburg_check(ScalarPoly(1), BoxGrid{1, 1.0, 3}, t), ParameterRange);
}

TEST_CASE("Brudnyi-Ganzburg holds for random cubics") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        ScalarPoly p(2);
        for (unsigned d = 0; d <= 3; ++d)
            for (const Monomial& m : monomials_of_degree(2, d)) p.add_term(m, q(static_cast<long>(rng() % 7) - 3));
        if (p.degree() < 1) continue;
        const double sup = sup_on_box(p, BoxGrid{2, 3.0, 41});
        const std::vector<double> levels{sup / 2, sup / 4, sup / 8, sup / 16, sup / 32};
        const SublevelReport r = brudnyi_ganzburg_check(p, BoxGrid{2, 3.0, 41}, levels);
        for (const SublevelResult& l : r.levels) {
            if (l.applicable) CHECK(l.margin >= 1.0);
        }
        CHECK(r.passed);
    }
}

TEST_CASE("orbit growth by level") {
    const LieAlgebra g = support::sl2();
    const Setup s = setup(g, support::span_of({g.basis_vector(1)}));
    const OrbitMap orbit(s.algebra, s.u, s.cb);
    REQUIRE(orbit.basis_size() == 3);
    CHECK(orbit.levels() == std::vector<std::size_t>{0, 1, 2});
    auto sup_for = [&](std::size_t e, double R) {
        std::vector<double> x(3, 0.0);
        x[e] = 1.0;
        return OrbitMap::sup_norm(orbit.grid_matrices(BoxGrid{1, R, 9}), 3, x);
    };
    // level 0 is fixed by the flow, level 2 grows quadratically
    CHECK(sup_for(0, 4.0) == doctest::Approx(sup_for(0, 64.0)));
    const double ratio = sup_for(2, 64.0) / sup_for(2, 32.0);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.05));
    const double ratio1 = sup_for(1, 64.0) / sup_for(1, 32.0);
    CHECK(ratio1 == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("orbit matrix at s = 0 is the chain basis") {
    const Setup s = setup("sl_jordan_powers(3)");
    const OrbitMap orbit(s.algebra, s.u, s.cb);
    const std::vector<double> zero(orbit.variables(), 0.0);
    const std::vector<double> m = orbit.matrix_at(zero);
    const std::vector<const ChainElement*> els = s.cb.elements();
    for (std::size_t e = 0; e < els.size(); ++e)
        for (std::size_t r = 0; r < orbit.algebra_dim(); ++r)
            CHECK(m[e * orbit.algebra_dim() + r] == doctest::Approx(els[e]->y[r].get_d()));
}

TEST_CASE("coefficient decay is stable across radii") {
    for (const char* text : {"sl_horocyclic_block(2,1)", "strictly_upper_first_row(3,1)"}) {
        const Setup s = setup(text);
        DecayConfig config;
        config.trials = 100;
        const DecayReport r = verify_coefficient_decay(s.algebra, s.u, s.cb, config);
        CHECK(r.forward_constants.size() == config.radii.size());
        CHECK(r.forward_spread <= config.stability_factor);
        CHECK(r.reverse_spread <= config.stability_factor);
        CHECK(r.fitted_c0 > 0);
        CHECK_MESSAGE(r.passed, text);
    }
    const Setup s = setup("sl_horocyclic_block(2,1)");
    CHECK_THROWS_AS(verify_coefficient_decay(s.algebra, s.u, ChainBasis{}, DecayConfig{}), ChainBasisMissing);
}

TEST_CASE("least_squares examples") {
    const std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7};
    const LineFit f = least_squares(x, y);
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(1.0));
    CHECK(f.r_squared == doctest::Approx(1.0));
    const std::vector<double> same{1, 1, 1, 1};
    CHECK_THROWS_AS(least_squares(same, y), ParameterRange);
    const std::vector<double> one{1};
    CHECK_THROWS_AS(least_squares(one, one), ParameterRange);
}

TEST_CASE("Bowen exponent matches minus the unnormalized entropy") {
    struct Case {
        std::string text;
        double expected;
    };
    for (const Case& c : {Case{"rank_one_jordan(1)", 0.0}, Case{"sl_horocyclic_block(2,1)", -3.0},
                          Case{"strictly_upper_first_row(3,1)", -1.0}}) {
        const Setup s = setup(c.text);
        BowenConfig config;
        config.samples = 10000;
        const DecayFit fit = bowen_exponent_fit(s.algebra, s.u, s.f, s.cb, config);
        INFO(c.text);
        CHECK(fit.expected_slope == doctest::Approx(c.expected));
        CHECK(std::abs(fit.slope - c.expected) <= 0.1 * std::max(1.0, std::abs(c.expected)));
        if (c.expected != 0.0) CHECK(fit.r_squared >= 0.98);
        CHECK(fit.log_volumes.size() == config.radii.size());
    }
}

TEST_CASE("Bowen fit with the fixed box") {
    const Setup s = setup("sl_horocyclic_block(2,1)");
    BowenConfig config;
    config.adaptive_box = false;
    config.samples = 10000;
    const DecayFit fit = bowen_exponent_fit(s.algebra, s.u, s.f, s.cb, config);
    CHECK(fit.slope == doctest::Approx(-3.0).epsilon(0.1));
}

TEST_CASE("Bowen fit is reproducible for a fixed seed") {
    const Setup s = setup("strictly_upper_first_row(3,1)");
    BowenConfig config;
    config.samples = 3000;
    config.seed = 7;
    const DecayFit a = bowen_exponent_fit(s.algebra, s.u, s.f, s.cb, config);
    const DecayFit b = bowen_exponent_fit(s.algebra, s.u, s.f, s.cb, config);
    CHECK(a.log_volumes == b.log_volumes);
    CHECK(a.accepted == b.accepted);
    CHECK(a.slope == b.slope);
}

TEST_CASE("Bowen fit reports bad configurations") {
    const Setup s = setup("sl_horocyclic_block(2,1)");
    BowenConfig config;
    config.radii = {4, 8};
    CHECK_THROWS_AS(bowen_exponent_fit(s.algebra, s.u, s.f, s.cb, config), ParameterRange);
    config.radii = {4, 16, 8};
    CHECK_THROWS_AS(bowen_exponent_fit(s.algebra, s.u, s.f, s.cb, config), ParameterRange);

    // a huge fixed box leaves almost nothing inside the Bowen set
    config = BowenConfig{};
    config.adaptive_box = false;
    config.sampling_scale = 1e6;
    config.samples = 500;
    config.min_accepted = 400;
    CHECK_THROWS_AS(bowen_exponent_fit(s.algebra, s.u, s.f, s.cb, config), InsufficientAcceptance);
}

TEST_CASE("max and Euclidean norms give the same growth rates") {
    // Norm equivalence: sqrt(n) bounds the ratio at every radius, so the
    // log-log slopes of the sup agree.
    const Setup s = setup("sl_jordan_powers(3)");
    const OrbitMap orbit(s.algebra, s.u, s.cb);
    const std::size_t n = orbit.algebra_dim();
    std::mt19937_64 rng(67);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<double> x(orbit.basis_size());
    for (double& v : x) v = d(rng);
    std::vector<double> maxs, twos;
    for (double R : {8.0, 16.0, 32.0}) {
        const BoxGrid grid{orbit.variables(), R, 5};
        double m = 0, e = 0;
        for (const auto& mat : orbit.grid_matrices(grid)) {
            double mx = 0, sq = 0;
            for (std::size_t r = 0; r < n; ++r) {
                double y = 0;
                for (std::size_t c = 0; c < x.size(); ++c) y += mat[c * n + r] * x[c];
                mx = std::max(mx, std::abs(y));
                sq += y * y;
            }
            m = std::max(m, mx);
            e = std::max(e, std::sqrt(sq));
        }
        CHECK(OrbitMap::sup_norm(orbit.grid_matrices(grid), n, x) == doctest::Approx(m));
        CHECK(e <= std::sqrt(static_cast<double>(n)) * m * (1 + 1e-12));
        CHECK(m <= e * (1 + 1e-12));
        maxs.push_back(std::log(m));
        twos.push_back(std::log(e));
    }
    const std::vector<double> lr{std::log(8.0), std::log(16.0), std::log(32.0)};
    CHECK(least_squares(lr, maxs).slope == doctest::Approx(least_squares(lr, twos).slope).epsilon(0.1));
}

TEST_CASE("Bowen slope tracks the entropy on small catalog algebras") {
    for (const ExampleSpec& spec : catalog_registry(3)) {
        const Example ex = build_example(spec);
        if (ex.algebra.dim() > 8) continue;
        const Setup s = setup(ex.algebra, ex.u);
        BowenConfig config;
        // the sl(3) horocyclic cases accept about 0.5% of samples
        config.samples = 40000;
        const DecayFit fit = bowen_exponent_fit(s.algebra, s.u, s.f, s.cb, config);
        const double h = -fit.expected_slope;
        INFO(spec.to_string() << " slope " << fit.slope << " expected " << fit.expected_slope);
        CHECK(std::abs(fit.slope + h) <= 0.1 * std::max(1.0, h));
        if (h > 0) CHECK(fit.r_squared >= 0.98);
    }
}

TEST_CASE("coefficient norm and box sup norm are equivalent on chain polynomials") {
    std::mt19937_64 rng(73);
    std::uniform_int_distribution<int> d(-5, 5);
    for (const char* text : {"sl_jordan_powers(3)", "sl_first_row_restriction(3,2)", "sl_horocyclic_block(3,1)"}) {
        const Setup s = setup(text);
        for (std::size_t i = 1; i < s.cb.levels.size(); ++i) {
          for (std::size_t alpha = 0; alpha < s.cb.n0; ++alpha) {
            std::vector<ScalarPoly> tops;
            for (const ChainElement& e : s.cb.levels[i]) {
                if (e.word.alpha == alpha) tops.push_back(e.poly.homogeneous_part(static_cast<unsigned>(i)));
            }
            if (tops.empty()) continue;
            double up = 0, down = 0;
            for (int trial = 0; trial < 40; ++trial) {
                ScalarPoly p(s.cb.k);
                double coeff_max = 0;
                for (const ScalarPoly& t : tops) {
                    const int c = d(rng);
                    coeff_max = std::max(coeff_max, std::abs(static_cast<double>(c)));
                    p = p + Rational(c) * t;
                }
                if (coeff_max == 0) continue;
                const double sup = sup_on_box(p, BoxGrid{s.cb.k, 1.0, 21});
                REQUIRE(sup > 0);
                up = std::max(up, sup / coeff_max);
                down = std::max(down, coeff_max / sup);
            }
            INFO(text << " level " << i << " alpha " << alpha);
            CHECK(up * down < 1e4);
          }
        }
    }
}
