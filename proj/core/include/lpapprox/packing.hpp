#ifndef LPAPPROX_PACKING_HPP
#define LPAPPROX_PACKING_HPP

#include <cstdint>
#include <vector>

#include "lpapprox/errors.hpp"
#include "lpapprox/realfn.hpp"

namespace lpapprox {

/// The smooth bump phi(x) = exp(-r^2 / (1 - r^2)) with r = ||x||_inf,
/// vanishing for r >= 1 (support = the sup-norm unit ball [-1,1]^d).
/// Caches the numeric norms the packing construction needs.
class BumpProfile {
public:
    explicit BumpProfile(int d);

    int dim() const { return d_; }
    double operator()(std::span<const double> x) const;
    static double radial(double r); // 1-D profile in r = ||x||_inf

    double sup_norm() const { return 1.0; } // attained at 0: phi(0) = 1

    /// ||phi||_{L^p} over the support: tensor midpoint quadrature with 2^10
    /// points per axis for d <= 2, seeded Monte Carlo (10^6 points) above.
    double lp_norm(double p) const;

    /// Estimate of the Hoelder norm max(sup |phi|, s-seminorm), 0 < s <= 1,
    /// from a dense grid-pair maximum inflated by a 1.1 safety factor.
    /// Underestimating this norm would overstate the packing scale, so the
    /// estimate is biased upward; ball membership is verified empirically.
    double holder_norm(double s) const;

private:
    int d_;
};

/// Greedy binary code scanned in lexicographic order: vectors of {-1,+1}^m
/// kept when Hamming-distant >= t from everything kept so far. Exhaustive
/// scan for m <= cap; above the cap a seeded random candidate stream is
/// used and the size guarantee becomes empirical.
struct VarshamovGilbertCode {
    int m = 0;
    int min_distance = 1;
    bool exhaustive = true;
    std::vector<std::uint64_t> words; // bit k set: coordinate k is +1

    std::size_t size() const { return words.size(); }
    int sign(std::size_t member, int coordinate) const {
        return (words[member] >> coordinate) & 1u ? +1 : -1;
    }
    int hamming(std::size_t i, std::size_t j) const;
};

/// Counting floor 2^m / V(m, t-1) on the greedy code size (V = Hamming ball
/// volume); with t = ceil(m/4) this is at least exp(m/8).
double vg_size_lower_bound(int m, int t);

VarshamovGilbertCode gilbert_varshamov_code(int m, int t, int exhaustive_cap = 24,
                                            bool sampled_mode = false,
                                            std::uint64_t seed = 0x5eedULL,
                                            std::size_t sample_budget = 1u << 22);

/// Scaled-bump sign family: f_sigma(x) = c_s sum_m sigma_m phi(2N(x - x_m))
/// over the N^d grid of cube centers x_m, with c_s = (2N)^{-s} / (2
/// ||phi||_{C^{0,s}}). Signs range over a Varshamov-Gilbert code, giving
/// pairwise L^p separation >= c N^{-s}.
class PackingFamily {
public:
    PackingFamily(double s, int d, double p, int N, VarshamovGilbertCode code);

    double s() const { return s_; }
    int d() const { return d_; }
    double p() const { return p_; }
    int N() const { return N_; }
    double scale() const { return c_s_; } // c_s
    const VarshamovGilbertCode& code() const { return code_; }
    std::size_t size() const { return code_.size(); }

    double phi_lp_norm() const { return phi_lp_; }
    double phi_holder_norm() const { return phi_holder_; }

    /// Member evaluation; bump supports are confined to disjoint open cubes.
    double evaluate(std::size_t member, std::span<const double> x) const;
    RealFn member_fn(std::size_t member) const;

    int cell_count() const { return cells_; } // N^d
    int hamming(std::size_t i, std::size_t j) const { return code_.hamming(i, j); }

    /// Exact per-cube identity: ||f_i - f_j||_p = 2 c_s (2N)^{-d/p}
    /// ||phi||_p H^{1/p} with H the Hamming distance.
    double distance_formula(std::size_t i, std::size_t j) const;
    double min_pairwise_distance() const;

    /// Guaranteed separation constant c = 2^{-s-(d+2)/p} ||phi||_p /
    /// ||phi||_{C^{0,s}}; all pairwise distances are >= c N^{-s}.
    double separation_constant() const;

private:
    double s_, p_, c_s_, phi_lp_, phi_holder_;
    int d_, N_, cells_;
    VarshamovGilbertCode code_;
    BumpProfile bump_;
};

/// Builds the family with the greedy code at t = ceil(N^d / 4).
/// Restricted to 0 < s <= 1 (no symbolic derivatives of phi).
PackingFamily build_packing(double s, int d, double p, int N, bool sampled_mode = false,
                            std::uint64_t seed = 0x5eedULL);

/// Empirical Hoelder-ball membership: sup estimate and s-seminorm estimate
/// over grid points and seeded near-pairs; both should be <= 1 + tolerance.
struct MembershipReport {
    double sup_estimate = 0.0;
    double seminorm_estimate = 0.0;
    bool within(double tolerance) const {
        return sup_estimate <= 1.0 + tolerance && seminorm_estimate <= 1.0 + tolerance;
    }
};
MembershipReport holder_membership_check(const RealFn& f, int d, double s, int grid_density,
                                         std::uint64_t seed = 0x5eedULL);

/// log-packing lower bound c0 * eps^{-d/s} for eps <= eps0.
double holder_packing_lower_bound(double eps, double s, int d, double c0, double eps0);

} // namespace lpapprox

#endif
