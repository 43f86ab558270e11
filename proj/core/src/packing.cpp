#include "lpapprox/packing.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "lpapprox/rng.hpp"

namespace lpapprox {

// ----------------------------------------------------------------- BumpProfile

BumpProfile::BumpProfile(int d) : d_(d) {
    if (d < 1) throw DomainError("bump: d must be >= 1");
}

double BumpProfile::radial(double r) {
    if (r >= 1.0) return 0.0;
    const double r2 = r * r;
    return std::exp(-r2 / (1.0 - r2));
}

double BumpProfile::operator()(std::span<const double> x) const {
    double r = 0.0;
    for (double v : x) r = std::max(r, std::fabs(v));
    return radial(r);
}

namespace {

double lp_norm_pth_power(int d, double p) {
    if (d <= 2) {
        // tensor midpoint rule, 2^10 points per axis over [-1,1]^d
        const int n = 1 << 10;
        const double h = 2.0 / n;
        if (d == 1) {
            long double sum = 0.0L;
            for (int i = 0; i < n; ++i) {
                const double x = -1.0 + (i + 0.5) * h;
                sum += std::pow(BumpProfile::radial(std::fabs(x)), p);
            }
            return static_cast<double>(sum * h);
        }
        long double sum = 0.0L;
        for (int i = 0; i < n; ++i) {
            const double x = std::fabs(-1.0 + (i + 0.5) * h);
            for (int j = 0; j < n; ++j) {
                const double y = std::fabs(-1.0 + (j + 0.5) * h);
                sum += std::pow(BumpProfile::radial(std::max(x, y)), p);
            }
        }
        return static_cast<double>(sum * h * h);
    }
    // seeded Monte Carlo over [-1,1]^d
    const std::uint64_t n = 1000000;
    const std::uint64_t seed = 0x9a7cULL + static_cast<std::uint64_t>(d);
    long double sum = 0.0L;
    for (std::uint64_t i = 0; i < n; ++i) {
        double r = 0.0;
        for (int j = 0; j < d; ++j)
            r = std::max(r, std::fabs(rng::uniform(seed, i * static_cast<std::uint64_t>(d) +
                                                             static_cast<std::uint64_t>(j),
                                                   -1.0, 1.0)));
        sum += std::pow(BumpProfile::radial(r), p);
    }
    const double volume = std::ldexp(1.0, d);
    return static_cast<double>(sum / n) * volume;
}

double holder_norm_estimate(int d, double s) {
    // dense grid-pair maximum of |phi(x)-phi(y)| / ||x-y||_2^s, then the
    // 1.1 safety factor; sup|phi| = 1 enters the max at the end
    const int per_axis = d == 1 ? 2001 : (d == 2 ? 57 : 15);
    const double lo = -1.02, hi = 1.02;
    std::vector<std::vector<double>> pts;
    std::vector<double> vals;
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    while (true) {
        std::vector<double> x(static_cast<std::size_t>(d));
        double r = 0.0;
        for (int j = 0; j < d; ++j) {
            x[static_cast<std::size_t>(j)] =
                lo + (hi - lo) * idx[static_cast<std::size_t>(j)] / (per_axis - 1);
            r = std::max(r, std::fabs(x[static_cast<std::size_t>(j)]));
        }
        pts.push_back(std::move(x));
        vals.push_back(BumpProfile::radial(r));
        int axis = d - 1;
        while (axis >= 0 && ++idx[static_cast<std::size_t>(axis)] == per_axis) {
            idx[static_cast<std::size_t>(axis)] = 0;
            --axis;
        }
        if (axis < 0) break;
    }
    double seminorm = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const double dv = std::fabs(vals[i] - vals[j]);
            if (dv <= seminorm * 1e-12) continue;
            double dist2 = 0.0;
            for (int k = 0; k < d; ++k) {
                const double t = pts[i][static_cast<std::size_t>(k)] - pts[j][static_cast<std::size_t>(k)];
                dist2 += t * t;
            }
            seminorm = std::max(seminorm, dv / std::pow(std::sqrt(dist2), s));
        }
    return 1.1 * std::max(1.0, seminorm);
}

} // namespace

namespace {
std::mutex g_norm_cache_mutex;
}

double BumpProfile::lp_norm(double p) const {
    if (!(p >= 1.0)) throw DomainError("bump lp_norm: p must be >= 1");
    static std::map<std::pair<int, double>, double> cache;
    const auto key = std::make_pair(d_, p);
    {
        std::lock_guard lock(g_norm_cache_mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    const double v = std::pow(lp_norm_pth_power(d_, p), 1.0 / p);
    std::lock_guard lock(g_norm_cache_mutex);
    cache[key] = v;
    return v;
}

double BumpProfile::holder_norm(double s) const {
    if (!(s > 0.0 && s <= 1.0))
        throw ValidationError("bump holder_norm: supported smoothness is 0 < s <= 1");
    static std::map<std::pair<int, double>, double> cache;
    const auto key = std::make_pair(d_, s);
    {
        std::lock_guard lock(g_norm_cache_mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    const double v = holder_norm_estimate(d_, s);
    std::lock_guard lock(g_norm_cache_mutex);
    cache[key] = v;
    return v;
}

// ------------------------------------------------------- Varshamov-Gilbert

int VarshamovGilbertCode::hamming(std::size_t i, std::size_t j) const {
    return std::popcount(words[i] ^ words[j]);
}

double vg_size_lower_bound(int m, int t) {
    long double ball = 0.0L, binom = 1.0L;
    for (int k = 0; k <= t - 1; ++k) {
        ball += binom;
        binom = binom * (m - k) / (k + 1);
    }
    return static_cast<double>(std::ldexp(static_cast<long double>(1), m) / ball);
}

VarshamovGilbertCode gilbert_varshamov_code(int m, int t, int exhaustive_cap, bool sampled_mode,
                                            std::uint64_t seed, std::size_t sample_budget) {
    if (m < 1 || m > 63) throw DomainError("gilbert_varshamov_code: m must be in [1,63]");
    if (t < 1 || t > m) throw DomainError("gilbert_varshamov_code: needs 1 <= t <= m");
    VarshamovGilbertCode code;
    code.m = m;
    code.min_distance = t;
    if (!sampled_mode && m > exhaustive_cap)
        throw CapacityError("gilbert_varshamov_code: m = " + std::to_string(m) +
                            " exceeds the exhaustive cap " + std::to_string(exhaustive_cap) +
                            "; use sampled mode");
    auto far_from_kept = [&](std::uint64_t v) {
        for (std::uint64_t w : code.words)
            if (std::popcount(v ^ w) < t) return false;
        return true;
    };
    if (!sampled_mode) {
        const std::uint64_t end = std::uint64_t(1) << m;
        for (std::uint64_t v = 0; v < end; ++v)
            if (far_from_kept(v)) code.words.push_back(v);
    } else {
        code.exhaustive = false;
        const std::uint64_t mask = m == 63 ? ~std::uint64_t(0) >> 1 : (std::uint64_t(1) << m) - 1;
        for (std::size_t i = 0; i < sample_budget; ++i) {
            const std::uint64_t v = rng::mix(seed, i) & mask;
            if (far_from_kept(v)) code.words.push_back(v);
        }
        std::sort(code.words.begin(), code.words.end());
    }
    return code;
}

// ------------------------------------------------------------ PackingFamily

PackingFamily::PackingFamily(double s, int d, double p, int N, VarshamovGilbertCode code)
    : s_(s), p_(p), d_(d), N_(N), code_(std::move(code)), bump_(d) {
    if (!(s > 0.0)) throw DomainError("packing: s must be positive");
    if (s > 1.0)
        throw ValidationError("packing: smoothness s > 1 unsupported "
                              "(higher-order derivative norms are out of scope)");
    if (!(p >= 1.0)) throw DomainError("packing: p must be >= 1");
    if (N < 1) throw DomainError("packing: N must be >= 1");
    double cells = std::pow(static_cast<double>(N), d);
    cells_ = static_cast<int>(std::llround(cells));
    if (code_.m != cells_)
        throw ValidationError("packing: code length != N^d");
    phi_lp_ = bump_.lp_norm(p);
    phi_holder_ = bump_.holder_norm(s);
    c_s_ = 0.5 * std::pow(2.0 * N, -s) / phi_holder_;
}

double PackingFamily::evaluate(std::size_t member, std::span<const double> x) const {
    // locate the grid cube; bump supports stay inside open cubes, so the
    // boundary choice is immaterial (phi vanishes there)
    int flat = 0;
    std::vector<double> scaled(static_cast<std::size_t>(d_));
    for (int j = 0; j < d_; ++j) {
        const double t = x[static_cast<std::size_t>(j)];
        if (t < 0.0 || t > 1.0) return 0.0;
        int cell = static_cast<int>(t * N_);
        cell = std::min(cell, N_ - 1);
        flat = flat * N_ + cell;
        const double center = (cell + 0.5) / N_;
        scaled[static_cast<std::size_t>(j)] = 2.0 * N_ * (t - center);
    }
    const int sign = code_.sign(member, flat);
    return c_s_ * sign * bump_(scaled);
}

RealFn PackingFamily::member_fn(std::size_t member) const {
    return [copy = *this, member](std::span<const double> x) { return copy.evaluate(member, x); };
}

double PackingFamily::distance_formula(std::size_t i, std::size_t j) const {
    const double h = static_cast<double>(hamming(i, j));
    return 2.0 * c_s_ * std::pow(2.0 * N_, -static_cast<double>(d_) / p_) * phi_lp_ *
           std::pow(h, 1.0 / p_);
}

double PackingFamily::min_pairwise_distance() const {
    int h_min = cells_ + 1;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j) h_min = std::min(h_min, hamming(i, j));
    if (h_min > cells_) return 0.0; // fewer than two members
    return 2.0 * c_s_ * std::pow(2.0 * N_, -static_cast<double>(d_) / p_) * phi_lp_ *
           std::pow(static_cast<double>(h_min), 1.0 / p_);
}

double PackingFamily::separation_constant() const {
    return std::pow(2.0, -s_ - (d_ + 2.0) / p_) * phi_lp_ / phi_holder_;
}

PackingFamily build_packing(double s, int d, double p, int N, bool sampled_mode,
                            std::uint64_t seed) {
    if (d < 1) throw DomainError("packing: d must be >= 1");
    if (N < 1) throw DomainError("packing: N must be >= 1");
    const double cells = std::pow(static_cast<double>(N), d);
    if (cells > 63) {
        if (!sampled_mode)
            throw CapacityError("packing: N^d > 63 sign coordinates unsupported");
    }
    const int m = static_cast<int>(std::llround(cells));
    const int t = (m + 3) / 4; // ceil(m/4)
    auto code = gilbert_varshamov_code(m, t, 24, sampled_mode, seed);
    return PackingFamily(s, d, p, N, std::move(code));
}

MembershipReport holder_membership_check(const RealFn& f, int d, double s, int grid_density,
                                         std::uint64_t seed) {
    if (grid_density < 2) throw DomainError("holder_membership_check: grid too small");
    if (!(s > 0.0 && s <= 1.0)) throw ValidationError("holder_membership_check: needs 0 < s <= 1");

    std::vector<std::vector<double>> pts;
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    while (true) {
        std::vector<double> x(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j)
            x[static_cast<std::size_t>(j)] =
                static_cast<double>(idx[static_cast<std::size_t>(j)]) / grid_density;
        pts.push_back(std::move(x));
        int axis = d - 1;
        while (axis >= 0 && ++idx[static_cast<std::size_t>(axis)] > grid_density) {
            idx[static_cast<std::size_t>(axis)] = 0;
            --axis;
        }
        if (axis < 0) break;
    }
    // seeded near-pairs sharpen the seminorm estimate between grid nodes
    const std::size_t base = pts.size();
    for (std::size_t i = 0; i < base; ++i) {
        std::vector<double> y = pts[i];
        for (int j = 0; j < d; ++j) {
            const double step =
                (rng::uniform01(seed, i * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)) -
                 0.5) /
                (4.0 * grid_density);
            y[static_cast<std::size_t>(j)] =
                std::clamp(y[static_cast<std::size_t>(j)] + step, 0.0, 1.0);
        }
        pts.push_back(std::move(y));
    }

    std::vector<double> vals(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = f(pts[i]);

    MembershipReport report;
    for (double v : vals) report.sup_estimate = std::max(report.sup_estimate, std::fabs(v));
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const double dv = std::fabs(vals[i] - vals[j]);
            if (dv == 0.0) continue;
            double dist2 = 0.0;
            for (int k = 0; k < d; ++k) {
                const double t = pts[i][static_cast<std::size_t>(k)] - pts[j][static_cast<std::size_t>(k)];
                dist2 += t * t;
            }
            if (dist2 == 0.0) continue;
            report.seminorm_estimate =
                std::max(report.seminorm_estimate, dv / std::pow(std::sqrt(dist2), s));
        }
    return report;
}

double holder_packing_lower_bound(double eps, double s, int d, double c0, double eps0) {
    if (!(eps > 0.0)) throw DomainError("holder_packing_lower_bound: eps must be positive");
    if (eps > eps0) throw DomainError("holder_packing_lower_bound: eps exceeds eps0");
    if (!(s > 0.0) || d < 1 || !(c0 > 0.0))
        throw DomainError("holder_packing_lower_bound: invalid parameters");
    return c0 * std::pow(eps, -static_cast<double>(d) / s);
}

} // namespace lpapprox
