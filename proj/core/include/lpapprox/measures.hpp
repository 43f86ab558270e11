#ifndef LPAPPROX_MEASURES_HPP
#define LPAPPROX_MEASURES_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lpapprox/cubes.hpp"
#include "lpapprox/monotone.hpp"
#include "lpapprox/realfn.hpp"

namespace lpapprox {

struct LpEstimate {
    enum class Method { exact_dyadic, quadrature, monte_carlo };
    double value = 0.0;
    Method method = Method::monte_carlo;
    std::uint64_t samples = 0;
    double standard_error = 0.0; // of the p-th-power mean (monte carlo only)
    std::uint64_t seed = 0;
};

/// Exact L^p(lambda) distance over [0,1]^d between two piecewise-constant
/// functions, via the common refinement of their cube boundaries. Exact for
/// any axis-aligned boxes (dyadic or not); every boundary becomes a cut, so
/// each overlay cell sees constant integrands.
double lp_distance_exact(const PiecewiseConstantFn& f, const PiecewiseConstantFn& g, double p,
                         std::size_t cell_cap = std::size_t(1) << 25);

/// Deterministic point source for Monte Carlo: point `index` of stream
/// `seed`. The default draws uniformly from [0,1)^d.
using PointSampler = std::function<void(std::uint64_t seed, std::uint64_t index,
                                        std::span<double> out)>;
PointSampler uniform_sampler();

/// Monte Carlo L^p(mu) distance with a counter-based generator: the result
/// depends only on (seed, n), never on work partitioning.
LpEstimate lp_distance_mc(const RealFn& f, const RealFn& g, double p, int d, std::uint64_t n,
                          std::uint64_t seed, const PointSampler& mu = uniform_sampler());

/// Lower estimate of sup |f-g| over the nested grids {k/grid : 0 <= k <=
/// grid}^d plus any caller-declared probe points (e.g. pairs straddling a
/// known discontinuity surface).
double sup_grid(const RealFn& f, const RealFn& g, int d, int grid_per_axis,
                const std::vector<std::vector<double>>& extra_points = {});

/// Packing-transfer verdict: with a (3 eps)-separated base family and
/// per-index approximants within eps, the approximants must themselves be
/// eps-separated. Precondition failures are reported, not thrown, and leave
/// the claim unset.
struct TransferReport {
    std::vector<std::string> precondition_violations;
    std::optional<bool> approximants_are_packing;
    bool ok() const {
        return precondition_violations.empty() && approximants_are_packing == true;
    }
};
TransferReport packing_transfer_check(std::size_t count,
                                      const std::function<double(std::size_t, std::size_t)>& dist_ff,
                                      const std::function<double(std::size_t)>& dist_fg,
                                      const std::function<double(std::size_t, std::size_t)>& dist_gg,
                                      double eps);
/// Convenience overload for piecewise-constant families (exact distances).
TransferReport packing_transfer_check(const std::vector<PiecewiseConstantFn>& f_pack,
                                      const std::vector<PiecewiseConstantFn>& g_approx, double eps,
                                      double p);

/// Indicator of the closed unit ball centered at (1,...,1), restricted to
/// [0,1]^d; non-decreasing in every coordinate. Requires d >= 2.
MonotoneOracle disk_indicator(int d);

} // namespace lpapprox

#endif
