#include "slowent/divergence.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numeric>
#include <random>

namespace slowent {

std::vector<double> BoxGrid::axis() const {
    if (points_per_axis < 2) throw ParameterRange("BoxGrid needs at least 2 points per axis");
    std::vector<double> a(points_per_axis);
    const double step = 2.0 * radius / static_cast<double>(points_per_axis - 1);
    for (std::size_t i = 0; i < points_per_axis; ++i) a[i] = -radius + step * static_cast<double>(i);
    a.back() = radius;
    return a;
}

std::size_t BoxGrid::size() const {
    std::size_t s = 1;
    for (std::size_t i = 0; i < k; ++i) s *= points_per_axis;
    return s;
}

void BoxGrid::for_each(const std::function<void(std::span<const double>)>& f) const {
    const std::vector<double> a = axis();
    std::vector<std::size_t> idx(k, 0);
    std::vector<double> point(k);
    while (true) {
        for (std::size_t v = 0; v < k; ++v) point[v] = a[idx[v]];
        f(point);
        std::size_t v = 0;
        while (v < k && idx[v] + 1 == points_per_axis) idx[v++] = 0;
        if (v == k) return;
        ++idx[v];
    }
}

double sup_on_box(const ScalarPoly& p, const BoxGrid& grid) {
    if (p.variables() != grid.k) throw DimensionMismatch("sup_on_box: variable count mismatch");
    const HornerEvaluator eval(p);
    double best = 0.0;
    grid.for_each([&](std::span<const double> s) { best = std::max(best, std::abs(eval(s))); });
    return best;
}

std::size_t default_points_per_axis(std::size_t k) {
    switch (k) {
        case 0:
        case 1: return 65;
        case 2: return 25;
        case 3: return 11;
        default: return 7;
    }
}

// ---------------------------------------------------------------------------
// OrbitMap

OrbitMap::OrbitMap(const LieAlgebra& algebra, const SubalgebraSpec& u, const ChainBasis& cb)
    : n_(algebra.dim()), k_(u.k()) {
    const std::vector<RationalMatrix> ops = ad_operators(algebra, u);
    for (const ChainElement* e : cb.elements()) {
        levels_.push_back(e->level);
        std::vector<Term> terms;
        const VectorPoly orbit = orbit_polynomial(ops, e->y);
        for (const auto& [m, c] : orbit.terms()) {
            Term t{m, std::vector<double>(n_)};
            for (std::size_t r = 0; r < n_; ++r) t.coeff[r] = c[r].get_d();
            terms.push_back(std::move(t));
        }
        orbits_.push_back(std::move(terms));
    }
}

std::vector<double> OrbitMap::matrix_at(std::span<const double> s) const {
    const std::size_t N = orbits_.size();
    std::vector<double> mat(n_ * N, 0.0);
    for (std::size_t e = 0; e < N; ++e) {
        for (const Term& t : orbits_[e]) {
            double w = 1.0;
            for (std::size_t v = 0; v < k_; ++v)
                for (unsigned p = 0; p < t.monomial[v]; ++p) w *= s[v];
            for (std::size_t r = 0; r < n_; ++r) mat[e * n_ + r] += w * t.coeff[r];
        }
    }
    return mat;
}

std::vector<std::vector<double>> OrbitMap::grid_matrices(const BoxGrid& grid) const {
    std::vector<std::pair<double, std::vector<double>>> points;
    grid.for_each([&](std::span<const double> s) {
        double mx = 0.0;
        for (double x : s) mx = std::max(mx, std::abs(x));
        points.emplace_back(mx, std::vector<double>(s.begin(), s.end()));
    });
    std::stable_sort(points.begin(), points.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<std::vector<double>> mats;
    mats.reserve(points.size());
    for (const auto& p : points) mats.push_back(matrix_at(p.second));
    return mats;
}

double OrbitMap::sup_norm(const std::vector<std::vector<double>>& mats, std::size_t n,
                          std::span<const double> x, double threshold) {
    const std::size_t N = x.size();
    double best = 0.0;
    std::vector<double> y(n);
    for (const std::vector<double>& m : mats) {
        std::fill(y.begin(), y.end(), 0.0);
        for (std::size_t e = 0; e < N; ++e) {
            const double xe = x[e];
            if (xe == 0.0) continue;
            const double* col = m.data() + e * n;
            for (std::size_t r = 0; r < n; ++r) y[r] += col[r] * xe;
        }
        for (double v : y) best = std::max(best, std::abs(v));
        if (threshold >= 0.0 && best > threshold) return best;
    }
    return best;
}

namespace {

/// Hit-and-run walk inside {x : sup_s ||M_s x|| <= eta}, moving in
/// coordinates z with x = T z (T lower triangular, row-major N x N).
/// Chords are computed exactly from the grid matrices, so every chord
/// endpoint lies on the boundary.
struct PilotWalk {
    std::vector<std::vector<double>> points;  ///< walk positions, z coordinates
    std::vector<double> extent;               ///< max |z_e| over chord endpoints
};

PilotWalk hit_and_run(const std::vector<std::vector<double>>& mats, std::size_t n, std::size_t N, double eta,
                      const std::vector<double>& T, std::size_t steps, std::mt19937_64& rng) {
    const std::size_t rows = mats.size() * n;
    std::vector<double> z(N, 0.0), dz(N), v(N), a(rows, 0.0), b(rows);
    PilotWalk walk;
    walk.extent.assign(N, 0.0);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t step = 0; step < steps; ++step) {
        if (step % 2 == 0) {
            std::fill(dz.begin(), dz.end(), 0.0);
            dz[(step / 2) % N] = 1.0;
        } else {
            for (double& c : dz) c = gauss(rng);
        }
        for (std::size_t r = 0; r < N; ++r) {
            v[r] = 0.0;
            for (std::size_t c = 0; c <= r; ++c) v[r] += T[r * N + c] * dz[c];
        }
        std::fill(b.begin(), b.end(), 0.0);
        for (std::size_t g = 0; g < mats.size(); ++g) {
            for (std::size_t e = 0; e < N; ++e) {
                if (v[e] == 0.0) continue;
                const double* col = mats[g].data() + e * n;
                for (std::size_t r = 0; r < n; ++r) b[g * n + r] += col[r] * v[e];
            }
        }
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < rows; ++r) {
            if (b[r] == 0.0) continue;
            double t1 = (eta - a[r]) / b[r];
            double t2 = (-eta - a[r]) / b[r];
            if (t1 > t2) std::swap(t1, t2);
            lo = std::max(lo, t1);
            hi = std::min(hi, t2);
        }
        if (!std::isfinite(lo) || !std::isfinite(hi)) {
            throw Error("hit_and_run: Bowen set is unbounded along a sampled direction");
        }
        for (std::size_t e = 0; e < N; ++e) {
            walk.extent[e] = std::max({walk.extent[e], std::abs(z[e] + lo * dz[e]), std::abs(z[e] + hi * dz[e])});
        }
        const double t = lo + (hi - lo) * unif(rng);
        for (std::size_t e = 0; e < N; ++e) z[e] += t * dz[e];
        for (std::size_t r = 0; r < rows; ++r) a[r] += t * b[r];
        walk.points.push_back(z);
    }
    return walk;
}

/// Lower Cholesky factor of the second-moment matrix of the points,
/// composed with T.  The body is symmetric, so the mean is taken as 0.
std::vector<double> whitening(const std::vector<std::vector<double>>& points, const std::vector<double>& T,
                              std::size_t N) {
    std::vector<double> cov(N * N, 0.0);
    for (const auto& p : points)
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c <= r; ++c) cov[r * N + c] += p[r] * p[c];
    for (double& c : cov) c /= static_cast<double>(points.size());
    std::vector<double> L(N * N, 0.0);
    for (std::size_t r = 0; r < N; ++r) {
        for (std::size_t c = 0; c <= r; ++c) {
            double sum = cov[r * N + c];
            for (std::size_t t = 0; t < c; ++t) sum -= L[r * N + t] * L[c * N + t];
            if (r == c) {
                L[r * N + r] = sum > 0.0 ? std::sqrt(sum) : 0.0;
            } else {
                L[r * N + c] = L[c * N + c] > 0.0 ? sum / L[c * N + c] : 0.0;
            }
        }
    }
    for (std::size_t r = 0; r < N; ++r) {
        if (L[r * N + r] <= 0.0) throw Error("whitening: degenerate pilot covariance");
    }
    std::vector<double> out(N * N, 0.0);
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c <= r; ++c)
            for (std::size_t t = c; t <= r; ++t) out[r * N + c] += T[r * N + t] * L[t * N + c];
    return out;
}

double spread(const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    if (*lo <= 0.0) return std::numeric_limits<double>::infinity();
    return *hi / *lo;
}

}  // namespace

DecayReport verify_coefficient_decay(const LieAlgebra& algebra, const SubalgebraSpec& u,
                                     const ChainBasis& cb, const DecayConfig& config) {
    if (cb.size() == 0) throw ChainBasisMissing("verify_coefficient_decay: empty chain basis");
    if (config.radii.empty()) throw ParameterRange("verify_coefficient_decay: no radii given");
    const OrbitMap orbit(algebra, u, cb);
    const std::size_t N = orbit.basis_size();
    const std::size_t n = orbit.algebra_dim();
    const std::size_t ppa = config.points_per_axis ? config.points_per_axis : default_points_per_axis(u.k());
    const double eps = config.epsilon;

    // Fixed sign patterns and directions shared by every radius.
    std::mt19937_64 rng(config.seed);
    std::bernoulli_distribution coin(0.5);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<double>> signs(config.trials, std::vector<double>(N));
    std::vector<std::vector<double>> dirs;
    for (auto& s : signs)
        for (double& v : s) v = coin(rng) ? 1.0 : -1.0;
    for (std::size_t e = 0; e < N; ++e) {
        std::vector<double> d(N, 0.0);
        d[e] = 1.0;
        dirs.push_back(std::move(d));
    }
    for (std::size_t t = 0; t < config.trials; ++t) {
        std::vector<double> d(N);
        for (double& v : d) v = gauss(rng);
        dirs.push_back(std::move(d));
    }

    DecayReport report;
    report.radii = config.radii;
    std::vector<double> x(N);
    for (double R : config.radii) {
        const auto mats = orbit.grid_matrices({u.k(), R, ppa});
        std::vector<double> scale(N);
        for (std::size_t e = 0; e < N; ++e) scale[e] = std::pow(R, -static_cast<double>(orbit.levels()[e]));

        double fwd = 0.0;
        for (const auto& s : signs) {
            for (std::size_t e = 0; e < N; ++e) x[e] = eps * scale[e] * s[e];
            fwd = std::max(fwd, OrbitMap::sup_norm(mats, n, x) / eps);
        }
        double rev = 0.0;
        for (const auto& d : dirs) {
            for (std::size_t e = 0; e < N; ++e) x[e] = d[e] * scale[e];
            const double sup = OrbitMap::sup_norm(mats, n, x);
            if (sup <= 0.0) continue;
            // Rescale so that sup ||Ad Y|| = eps exactly.
            double worst = 0.0;
            for (std::size_t e = 0; e < N; ++e) worst = std::max(worst, std::abs(d[e]) / sup);
            rev = std::max(rev, worst);
        }
        report.forward_constants.push_back(fwd);
        report.reverse_constants.push_back(rev);
    }
    report.forward_spread = spread(report.forward_constants);
    report.reverse_spread = spread(report.reverse_constants);
    report.fitted_c0 = std::max(*std::max_element(report.forward_constants.begin(), report.forward_constants.end()),
                                *std::max_element(report.reverse_constants.begin(), report.reverse_constants.end()));
    report.passed = report.forward_spread <= config.stability_factor &&
                    report.reverse_spread <= config.stability_factor;
    return report;
}

SublevelReport brudnyi_ganzburg_check(const ScalarPoly& p, const BoxGrid& box, std::span<const double> levels) {
    if (p.is_zero()) throw ParameterRange("brudnyi_ganzburg_check: polynomial must be nonzero");
    if (p.variables() != box.k) throw DimensionMismatch("brudnyi_ganzburg_check: variable count mismatch");
    SublevelReport report;
    report.degree = p.degree();
    const double k = static_cast<double>(box.k);
    report.box_volume = std::pow(2.0 * box.radius, k);
    report.sup = sup_on_box(p, box);
    report.refined_sup = sup_on_box(p, box.refined());
    report.refinement_converged =
        report.refined_sup == 0.0 || std::abs(report.refined_sup - report.sup) < 0.01 * report.refined_sup;
    const double sup = std::max(report.sup, report.refined_sup);

    // Cell-centre values on a grid of points_per_axis cells per axis.
    const HornerEvaluator eval(p);
    const std::size_t cells = box.points_per_axis;
    const double h = 2.0 * box.radius / static_cast<double>(cells);
    std::vector<double> values;
    std::vector<std::size_t> idx(box.k, 0);
    std::vector<double> point(box.k);
    while (true) {
        for (std::size_t v = 0; v < box.k; ++v) point[v] = -box.radius + h * (static_cast<double>(idx[v]) + 0.5);
        values.push_back(std::abs(eval(point)));
        std::size_t v = 0;
        while (v < box.k && idx[v] + 1 == cells) idx[v++] = 0;
        if (v == box.k) break;
        ++idx[v];
    }
    const double cell_volume = report.box_volume / static_cast<double>(values.size());

    report.passed = true;
    for (double t : levels) {
        SublevelResult r;
        r.level = t;
        const auto count = std::count_if(values.begin(), values.end(), [t](double v) { return v <= t; });
        r.measure = static_cast<double>(count) * cell_volume;
        r.applicable = r.measure > 0.0;
        if (r.applicable) {
            r.bound = std::pow(4.0 * k * report.box_volume / r.measure, report.degree) * t;
            r.margin = sup > 0.0 ? r.bound / sup : std::numeric_limits<double>::infinity();
            r.ok = r.margin >= 1.0;
        }
        report.passed = report.passed && r.ok;
        report.levels.push_back(r);
    }
    return report;
}

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw ParameterRange("least_squares: need >= 2 paired points");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw ParameterRange("least_squares: abscissae are all equal");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    const double ss_res = syy - fit.slope * sxy;
    // A flat response is fitted perfectly by a flat line.
    fit.r_squared = syy <= 1e-24 ? 1.0 : 1.0 - std::max(0.0, ss_res) / syy;
    return fit;
}

DecayFit bowen_exponent_fit(const LieAlgebra& algebra, const SubalgebraSpec& u, const Filtration& f,
                            const ChainBasis& cb, const BowenConfig& config) {
    if (config.radii.size() < 3) throw ParameterRange("bowen_exponent_fit: need at least 3 radii");
    if (!std::is_sorted(config.radii.begin(), config.radii.end()) ||
        std::adjacent_find(config.radii.begin(), config.radii.end()) != config.radii.end()) {
        throw ParameterRange("bowen_exponent_fit: radii must be strictly increasing");
    }
    if (cb.size() == 0) throw ChainBasisMissing("bowen_exponent_fit: empty chain basis");
    const OrbitMap orbit(algebra, u, cb);
    const std::size_t N = orbit.basis_size();
    const std::size_t n = orbit.algebra_dim();
    const std::size_t ppa = config.points_per_axis ? config.points_per_axis : default_points_per_axis(u.k());

    DecayFit fit;
    fit.radii = config.radii;
    fit.expected_slope = -slow_entropy(f).unnormalized.get_d();

    // Unit-cube samples reused at every radius (common random numbers).
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> cube(config.samples * N);
    for (double& v : cube) v = unif(rng);

    std::vector<double> x(N);
    for (double R : config.radii) {
        const auto mats = orbit.grid_matrices({u.k(), R, ppa});
        std::vector<double> half(N);
        // Sampling map x = T (half o cube); T is the identity for the fixed box.
        std::vector<double> T(N * N, 0.0);
        for (std::size_t e = 0; e < N; ++e) T[e * N + e] = 1.0;
        double log_det = 0.0;
        if (config.adaptive_box) {
            std::mt19937_64 pilot_rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
            for (std::size_t e = 0; e < N; ++e) {
                T[e * N + e] = config.eta * std::pow(R, -static_cast<double>(orbit.levels()[e]));
            }
            const PilotWalk first = hit_and_run(mats, n, N, config.eta, T, config.pilot_steps, pilot_rng);
            T = whitening(first.points, T, N);
            const PilotWalk second = hit_and_run(mats, n, N, config.eta, T, config.pilot_steps, pilot_rng);
            for (std::size_t e = 0; e < N; ++e) {
                half[e] = config.pilot_margin * second.extent[e];
                log_det += std::log(T[e * N + e]);
            }
        } else {
            for (std::size_t e = 0; e < N; ++e) {
                half[e] = config.sampling_scale * config.eta * std::pow(R, -static_cast<double>(orbit.levels()[e]));
            }
        }
        double log_box = log_det;
        for (double h : half) log_box += std::log(2.0 * h);
        fit.log_box_volumes.push_back(log_box);
        std::size_t hits = 0;
        for (std::size_t t = 0; t < config.samples; ++t) {
            for (std::size_t r = 0; r < N; ++r) {
                x[r] = 0.0;
                for (std::size_t c = 0; c <= r; ++c) x[r] += T[r * N + c] * half[c] * cube[t * N + c];
            }
            if (OrbitMap::sup_norm(mats, n, x, config.eta) <= config.eta) ++hits;
        }
        const double acc = static_cast<double>(hits) / static_cast<double>(config.samples);
        fit.accepted.push_back(hits);
        fit.acceptance.push_back(acc);
        fit.log_radii.push_back(std::log(R));
        fit.log_volumes.push_back(hits ? std::log(acc) + log_box : -std::numeric_limits<double>::infinity());
    }
    if (fit.accepted.back() < config.min_accepted) {
        throw InsufficientAcceptance("bowen_exponent_fit: only " + std::to_string(fit.accepted.back()) +
                                     " accepted samples at the largest radius; raise samples or shrink radii");
    }
    for (std::size_t hits : fit.accepted) {
        if (hits == 0) throw InsufficientAcceptance("bowen_exponent_fit: a radius had no accepted samples");
    }
    const LineFit lf = least_squares(fit.log_radii, fit.log_volumes);
    fit.slope = lf.slope;
    fit.intercept = lf.intercept;
    fit.r_squared = lf.r_squared;
    return fit;
}

}  // namespace slowent
