#include "lpapprox/measures.hpp"

#include <algorithm>
#include <cmath>

#include "lpapprox/rng.hpp"

namespace lpapprox {

namespace {
void require_p(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("lp distance: p must be in [1,inf)");
}
} // namespace

double lp_distance_exact(const PiecewiseConstantFn& f, const PiecewiseConstantFn& g, double p,
                         std::size_t cell_cap) {
    require_p(p);
    const int d = f.piece_count() ? f.dim() : g.dim();
    if (f.piece_count() && g.piece_count() && f.dim() != g.dim())
        throw ValidationError("lp_distance_exact: dimension mismatch");
    if (d == 0) return 0.0;

    // Per-axis cuts: domain endpoints plus every cube boundary in (0,1).
    std::vector<std::vector<double>> cuts(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        auto& c = cuts[static_cast<std::size_t>(j)];
        c = {0.0, 1.0};
        for (const auto* fn : {&f, &g})
            for (const Cube& cube : fn->cubes) {
                for (double t : {cube.lo[static_cast<std::size_t>(j)], cube.hi[static_cast<std::size_t>(j)]})
                    if (t > 0.0 && t < 1.0) c.push_back(t);
            }
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
    }

    std::size_t cells = 1;
    for (const auto& c : cuts) {
        cells *= c.size() - 1;
        if (cells > cell_cap)
            throw CapacityError("lp_distance_exact: refinement exceeds cell cap");
    }

    std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
    std::vector<double> center(static_cast<std::size_t>(d));
    long double total = 0.0L;
    while (true) {
        double vol = 1.0;
        for (int j = 0; j < d; ++j) {
            const auto& c = cuts[static_cast<std::size_t>(j)];
            const std::size_t k = idx[static_cast<std::size_t>(j)];
            vol *= c[k + 1] - c[k];
            center[static_cast<std::size_t>(j)] = 0.5 * (c[k] + c[k + 1]);
        }
        const double diff = std::fabs(f(center) - g(center));
        if (diff > 0.0) total += static_cast<long double>(vol) * std::pow(diff, p);
        int axis = d - 1;
        while (axis >= 0 &&
               ++idx[static_cast<std::size_t>(axis)] == cuts[static_cast<std::size_t>(axis)].size() - 1) {
            idx[static_cast<std::size_t>(axis)] = 0;
            --axis;
        }
        if (axis < 0) break;
    }
    return static_cast<double>(std::pow(total, 1.0L / static_cast<long double>(p)));
}

PointSampler uniform_sampler() {
    return [](std::uint64_t seed, std::uint64_t index, std::span<double> out) {
        rng::uniform_point(seed, index, out);
    };
}

LpEstimate lp_distance_mc(const RealFn& f, const RealFn& g, double p, int d, std::uint64_t n,
                          std::uint64_t seed, const PointSampler& mu) {
    require_p(p);
    if (n < 1) throw ValidationError("lp_distance_mc: needs n >= 1");
    std::vector<double> x(static_cast<std::size_t>(d));
    long double sum = 0.0L, sum_sq = 0.0L;
    for (std::uint64_t i = 0; i < n; ++i) {
        mu(seed, i, x);
        const double diff = std::fabs(f(x) - g(x));
        const double v = diff == 0.0 ? 0.0 : std::pow(diff, p);
        if (std::isnan(v))
            throw NumericError("lp_distance_mc: NaN integrand at sample " + std::to_string(i));
        sum += v;
        sum_sq += static_cast<long double>(v) * v;
    }
    const long double mean = sum / static_cast<long double>(n);
    const long double var =
        n > 1 ? std::max(0.0L, (sum_sq - static_cast<long double>(n) * mean * mean) /
                                   static_cast<long double>(n - 1))
              : 0.0L;
    LpEstimate est;
    est.value = static_cast<double>(std::pow(mean, 1.0L / static_cast<long double>(p)));
    est.method = LpEstimate::Method::monte_carlo;
    est.samples = n;
    est.standard_error = static_cast<double>(std::sqrt(var / static_cast<long double>(n)));
    est.seed = seed;
    return est;
}

double sup_grid(const RealFn& f, const RealFn& g, int d, int grid_per_axis,
                const std::vector<std::vector<double>>& extra_points) {
    if (grid_per_axis < 2) throw DomainError("sup_grid: grid must be >= 2");
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    std::vector<double> x(static_cast<std::size_t>(d));
    double best = 0.0;
    while (true) {
        for (int j = 0; j < d; ++j)
            x[static_cast<std::size_t>(j)] =
                static_cast<double>(idx[static_cast<std::size_t>(j)]) / grid_per_axis;
        best = std::max(best, std::fabs(f(x) - g(x)));
        int axis = d - 1;
        while (axis >= 0 && ++idx[static_cast<std::size_t>(axis)] > grid_per_axis) {
            idx[static_cast<std::size_t>(axis)] = 0;
            --axis;
        }
        if (axis < 0) break;
    }
    for (const auto& pt : extra_points) {
        if (static_cast<int>(pt.size()) != d)
            throw ValidationError("sup_grid: probe point dimension mismatch");
        best = std::max(best, std::fabs(f(pt) - g(pt)));
    }
    return best;
}

TransferReport packing_transfer_check(std::size_t count,
                                      const std::function<double(std::size_t, std::size_t)>& dist_ff,
                                      const std::function<double(std::size_t)>& dist_fg,
                                      const std::function<double(std::size_t, std::size_t)>& dist_gg,
                                      double eps) {
    if (eps <= 0.0) throw DomainError("packing_transfer_check: eps must be positive");
    TransferReport report;
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = i + 1; j < count; ++j)
            if (!(dist_ff(i, j) > 3.0 * eps))
                report.precondition_violations.push_back(
                    "base pair (" + std::to_string(i) + "," + std::to_string(j) +
                    ") is not 3eps-distant");
    for (std::size_t i = 0; i < count; ++i)
        if (!(dist_fg(i) < eps))
            report.precondition_violations.push_back("approximant " + std::to_string(i) +
                                                     " is not within eps of its target");
    if (!report.precondition_violations.empty()) return report;

    bool packed = true;
    for (std::size_t i = 0; i < count && packed; ++i)
        for (std::size_t j = i + 1; j < count && packed; ++j)
            packed = dist_gg(i, j) > eps;
    report.approximants_are_packing = packed;
    return report;
}

TransferReport packing_transfer_check(const std::vector<PiecewiseConstantFn>& f_pack,
                                      const std::vector<PiecewiseConstantFn>& g_approx, double eps,
                                      double p) {
    if (f_pack.size() != g_approx.size())
        throw ValidationError("packing_transfer_check: family size mismatch");
    return packing_transfer_check(
        f_pack.size(),
        [&](std::size_t i, std::size_t j) { return lp_distance_exact(f_pack[i], f_pack[j], p); },
        [&](std::size_t i) { return lp_distance_exact(f_pack[i], g_approx[i], p); },
        [&](std::size_t i, std::size_t j) { return lp_distance_exact(g_approx[i], g_approx[j], p); },
        eps);
}

MonotoneOracle disk_indicator(int d) {
    if (d < 2) throw DomainError("disk_indicator: requires d >= 2");
    const std::size_t du = static_cast<std::size_t>(d);
    return {d, [du](std::span<const double> x) {
                double s = 0;
                for (std::size_t j = 0; j < du; ++j) s += (x[j] - 1.0) * (x[j] - 1.0);
                return s <= 1.0 ? 1.0 : 0.0;
            }};
}

} // namespace lpapprox
