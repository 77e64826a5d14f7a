#pragma once

// Numerical checks of the polynomial divergence of nearby orbits:
// coefficient decay in chain-basis coordinates, the Brudnyi-Ganzburg
// sublevel-set inequality, and the Bowen-box volume exponent.
//
// Algebra elements are measured with the max norm of their coordinates in
// the algebra basis; boxes in parameter space are C_R = [-R, R]^k.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "slowent/chain_basis.hpp"
#include "slowent/filtration.hpp"
#include "slowent/multipoly.hpp"

namespace slowent {

/// Uniform grid on [-R, R]^k including every corner.
struct BoxGrid {
    std::size_t k = 1;
    double radius = 1.0;
    std::size_t points_per_axis = 2;

    std::vector<double> axis() const;
    std::size_t size() const;
    /// Calls f(point) for every grid point in lexicographic order.
    void for_each(const std::function<void(std::span<const double>)>& f) const;
    /// Grid with 2n-1 points per axis; contains every point of this one.
    BoxGrid refined() const { return {k, radius, 2 * points_per_axis - 1}; }
};

/// Largest |p| over the grid points.
double sup_on_box(const ScalarPoly& p, const BoxGrid& grid);

/// Orbit map s -> Ad(exp(sum s_j U_j)) Y for chain-basis combinations Y,
/// precompiled in floating point.
class OrbitMap {
public:
    OrbitMap(const LieAlgebra& algebra, const SubalgebraSpec& u, const ChainBasis& cb);

    std::size_t basis_size() const noexcept { return levels_.size(); }
    std::size_t algebra_dim() const noexcept { return n_; }
    std::size_t variables() const noexcept { return k_; }
    /// Level i of the j-th chain element (flattened level order).
    const std::vector<std::size_t>& levels() const noexcept { return levels_; }

    /// Column-major n x N matrix whose e-th column is Ad(exp U_s) Y_e.
    std::vector<double> matrix_at(std::span<const double> s) const;

    /// All grid matrices, ordered with the outermost points first.
    std::vector<std::vector<double>> grid_matrices(const BoxGrid& grid) const;

    /// sup over the grid of ||Ad(exp U_s) Y|| for Y = sum x_e Y_e.  With a
    /// threshold, returns early once the threshold is exceeded.
    static double sup_norm(const std::vector<std::vector<double>>& mats, std::size_t n,
                           std::span<const double> x, double threshold = -1.0);

private:
    struct Term {
        Monomial monomial;
        std::vector<double> coeff;
    };
    std::size_t n_ = 0;
    std::size_t k_ = 0;
    std::vector<std::size_t> levels_;
    std::vector<std::vector<Term>> orbits_;
};

/// Points per axis used when a config leaves it unset: keeps grid sizes
/// moderate as k grows.
std::size_t default_points_per_axis(std::size_t k);

struct DecayConfig {
    std::vector<double> radii{4, 8, 16, 32, 64};
    double epsilon = 1e-2;
    std::size_t trials = 200;
    std::size_t points_per_axis = 0;  ///< 0 selects default_points_per_axis(k)
    double stability_factor = 3.0;
    std::uint64_t seed = 1;
};

struct DecayReport {
    std::vector<double> radii;
    /// max over trials of sup||Ad Y|| / eps for |x_{j,i}| <= eps R^{-i}
    std::vector<double> forward_constants;
    /// max over trials of |x_{j,i}| R^i / eps for sup||Ad Y|| <= eps
    std::vector<double> reverse_constants;
    double forward_spread = 0;  ///< largest / smallest forward constant
    double reverse_spread = 0;
    double fitted_c0 = 0;
    bool passed = false;
};

/// Two-sided check that chain-basis coefficients of the Bowen-box elements
/// scale like eps R^{-i}.  Throws ChainBasisMissing when `cb` is empty.
DecayReport verify_coefficient_decay(const LieAlgebra& algebra, const SubalgebraSpec& u,
                                     const ChainBasis& cb, const DecayConfig& config);

struct SublevelResult {
    double level = 0;
    double measure = 0;  ///< estimated |{s in C_R : |p(s)| <= level}|
    double bound = 0;    ///< (4k|V|/|w|)^d * level
    double margin = 0;   ///< bound / sup_V |p|
    bool applicable = false;
    bool ok = true;
};

struct SublevelReport {
    int degree = 0;
    double box_volume = 0;
    double sup = 0;
    double refined_sup = 0;
    bool refinement_converged = false;  ///< doubling the grid changes sup by < 1%
    std::vector<SublevelResult> levels;
    bool passed = false;
};

/// Checks sup_V|p| <= (4k|V|/|w|)^d t for each level t, where w is the
/// t-sublevel set, estimated by counting cells of the grid.
SublevelReport brudnyi_ganzburg_check(const ScalarPoly& p, const BoxGrid& box, std::span<const double> levels);

struct BowenConfig {
    double eta = 1e-2;
    std::vector<double> radii{4, 8, 16, 32, 64};
    std::size_t samples = 50000;
    std::size_t points_per_axis = 0;
    /// Fixed box: half-width kappa * eta * R^{-i} for level-i coordinates.
    double sampling_scale = 4.0;
    /// Adaptive box: a hit-and-run pilot walk measures the extent of the
    /// Bowen set along each coordinate; the box is that extent times
    /// pilot_margin, in coordinates that whiten the pilot walk.
    bool adaptive_box = true;
    std::size_t pilot_steps = 4000;
    double pilot_margin = 1.1;
    std::size_t min_accepted = 100;
    std::uint64_t seed = 1;
};

struct DecayFit {
    std::vector<double> radii;
    std::vector<double> log_radii;
    std::vector<double> log_volumes;
    std::vector<double> acceptance;
    std::vector<std::size_t> accepted;
    /// log of the sampling-box volume at each radius
    std::vector<double> log_box_volumes;
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
    double expected_slope = 0;  ///< -h with h = sum_i i dim g_i
};

/// Monte-Carlo estimate of vol{Y : sup_{s in C_R} ||Ad(exp U_s) Y|| <= eta}
/// in chain-basis coordinates, and the least-squares slope of log(vol)
/// against log(R).  Throws InsufficientAcceptance when the largest radius
/// gets fewer than min_accepted hits.
DecayFit bowen_exponent_fit(const LieAlgebra& algebra, const SubalgebraSpec& u, const Filtration& f,
                            const ChainBasis& cb, const BowenConfig& config);

struct LineFit {
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
};

LineFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace slowent
