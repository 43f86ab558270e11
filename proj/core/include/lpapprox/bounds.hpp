#ifndef LPAPPROX_BOUNDS_HPP
#define LPAPPROX_BOUNDS_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "lpapprox/errors.hpp"

namespace lpapprox {

/// Lower-bound profile for the log packing number of the target class:
/// either parametric log M(eps) >= c0 eps^{-alpha} for eps <= eps0 (taken
/// as 0 beyond eps0, the honest lower bound), or a caller callable.
struct PackingProfile {
    static PackingProfile parametric(double c0, double eps0, double alpha);
    static PackingProfile from_callable(std::function<double(double)> fn);

    double operator()(double eps) const;

    bool is_parametric = false;
    double c0 = 1.0, eps0 = 1.0, alpha = 1.0;
    std::function<double(double)> callable;
};

/// Fat-shattering profile of the approximating class: either the constant
/// pseudo-dimension (fat_gamma <= Pdim for every gamma) or a callable.
struct FatProfile {
    static FatProfile from_pdim(double P);
    static FatProfile from_callable(std::function<double(double)> fn);

    double operator()(double gamma) const;

    std::optional<double> pdim;
    std::function<double(double)> callable;
};

/// Inputs of the generic lower bound. The constant c is the caller's stand-in
/// for the packing-vs-fat inequality's p-dependent constant; no numeric value
/// for it exists, so every evaluation is conditional on it.
struct BoundQuery {
    double p = 2.0;
    double a = 0.0, b = 1.0; // common range of the target class
    PackingProfile packing = PackingProfile::parametric(1.0, 1.0, 1.0);
    FatProfile fat = FatProfile::from_pdim(1.0);
    double c = 1.0;
};

/// c * fat * log^2(2 (b-a) fat / eps), with 0 * log^2(0) = 0.
double fat_log_packing_bound(double eps, double fat_at_eps_over_32, double b_minus_a, double c, double p);

/// inf{eps > 0 : log M(3 eps) <= c fat_{eps/32} log^2(2 (b-a) fat / eps)},
/// located by a geometric sweep plus bisection, bracketing verified at
/// 1e-9. Any eps >= (b-a)/3 solves the inequation (the range argument), so
/// the result never exceeds (b-a)/3.
double approximation_lower_bound(const BoundQuery& q);

struct RateResult {
    double value = 0.0;
    std::string regime;
    std::map<std::string, double> constants;
};

/// min{eps1, c1 P^{-1/alpha} log^{-2/alpha} P}; the second term is +infinity
/// when P = 1, by convention.
RateResult closed_form_lower_bound(double P, double alpha, double c1, double eps1);

/// Smallest eps in (0, r) with eps^{-alpha} <= c P log^2(r P / eps), via
/// bisection on the increasing branch of x -> x^alpha / log^2(r P x).
/// nullopt when no solution exists below r.
std::optional<double> solve_inequation(double c, double alpha, double r, double P);

/// Pseudo-dimension growth by activation degree: c1 W^2 (nu >= 2),
/// c2 L W log W (nu = 1), c3 W log W (nu = 0).
RateResult pdim_upper_bound(double W, double L, int nu, double c1 = 1.0, double c2 = 1.0,
                            double c3 = 1.0);

/// The three-branch approximation rate in terms of the packing exponent
/// alpha of the target class and the activation degree nu.
RateResult network_rate(double alpha, int nu, double W, double L, double c1 = 1.0,
                        double c2 = 1.0, double c3 = 1.0);

// Packing exponents of the worked examples.
double holder_packing_exponent(double s, int d);   // d/s
double monotone_packing_exponent(int d, double p); // max(d, (d-1)p)
double barron_packing_exponent(int d);             // 1/(1/2 + 1/d) = 2d/(d+2)

/// Hoelder-ball rate c1 W^{-gamma} log^{-3s/d} W; requires
/// gamma in (s/d, 2s/d] and depth L <= depth_c * W^{gamma d/s - 1}.
RateResult holder_rate(double s, int d, double gamma, double W, double L, double c1 = 1.0,
                       double depth_c = 1.0);

/// Monotone-class rate: network_rate branches at alpha = max(d, (d-1)p).
RateResult monotone_lower_rate(int d, double p, int nu, double W, double L, double c1 = 1.0,
                               double c2 = 1.0, double c3 = 1.0);

/// Two-hidden-layer Heaviside upper rate: c W^{-1/alpha} when p(d-1) != d,
/// c W^{-1/d} log W when p(d-1) = d. Requires d >= 2.
RateResult monotone_upper_rate(int d, double p, double W, double c = 1.0);

/// Barron-class rate: network_rate branches at alpha = 2d/(d+2).
RateResult barron_rate(int d, int nu, double W, double L, double c1 = 1.0, double c2 = 1.0,
                       double c3 = 1.0);

/// CLI-facing dispatcher over the rate formulas above.
struct RateQuery {
    std::string cls; // "holder" | "monotone_lower" | "monotone_upper" | "barron"
    int d = 1;
    double p = 1.0;
    double s = 1.0;
    double gamma = 1.0;
    int nu = 0;
    double W = 16.0;
    double L = 1.0;
    double c1 = 1.0, c2 = 1.0, c3 = 1.0;
};
RateResult rate_table(const RateQuery& q);

} // namespace lpapprox

#endif
