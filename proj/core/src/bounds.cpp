#include "lpapprox/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace lpapprox {

// ------------------------------------------------------------------ profiles

PackingProfile PackingProfile::parametric(double c0, double eps0, double alpha) {
    if (!(c0 > 0.0) || !(eps0 > 0.0) || !(alpha > 0.0))
        throw DomainError("packing profile: c0, eps0, alpha must be positive");
    PackingProfile p;
    p.is_parametric = true;
    p.c0 = c0;
    p.eps0 = eps0;
    p.alpha = alpha;
    return p;
}

PackingProfile PackingProfile::from_callable(std::function<double(double)> fn) {
    PackingProfile p;
    p.callable = std::move(fn);
    return p;
}

double PackingProfile::operator()(double eps) const {
    if (!(eps > 0.0)) throw DomainError("packing profile: eps must be positive");
    if (is_parametric) return eps <= eps0 ? c0 * std::pow(eps, -alpha) : 0.0;
    return callable(eps);
}

FatProfile FatProfile::from_pdim(double P) {
    if (!(P >= 1.0)) throw DomainError("fat profile: Pdim must be >= 1");
    FatProfile f;
    f.pdim = P;
    return f;
}

FatProfile FatProfile::from_callable(std::function<double(double)> fn) {
    FatProfile f;
    f.callable = std::move(fn);
    return f;
}

double FatProfile::operator()(double gamma) const {
    if (!(gamma > 0.0)) throw DomainError("fat profile: gamma must be positive");
    if (pdim) return *pdim;
    return callable(gamma);
}

// -------------------------------------------------- fat-shattering bound

double fat_log_packing_bound(double eps, double fat_at_eps_over_32, double b_minus_a, double c, double p) {
    if (!(eps > 0.0)) throw DomainError("fat_log_packing_bound: eps must be positive");
    if (!(b_minus_a > 0.0)) throw DomainError("fat_log_packing_bound: range width must be positive");
    if (!(c > 0.0)) throw DomainError("fat_log_packing_bound: c must be positive");
    if (!(p >= 1.0)) throw DomainError("fat_log_packing_bound: p must be >= 1");
    if (fat_at_eps_over_32 < 0.0) throw DomainError("fat_log_packing_bound: fat must be >= 0");
    if (fat_at_eps_over_32 == 0.0) return 0.0; // 0 * log^2(0) = 0
    const double lg = std::log(2.0 * b_minus_a * fat_at_eps_over_32 / eps);
    return c * fat_at_eps_over_32 * lg * lg;
}

// ------------------------------------------------- lower-bound solver

namespace {

void check_profile_contracts(const BoundQuery& q) {
    // callable profiles must be non-increasing; sampled check
    const double hi = (q.b - q.a) / 3.0;
    if (!q.packing.is_parametric) {
        double prev = std::numeric_limits<double>::infinity();
        for (int i = 1; i <= 24; ++i) {
            const double eps = hi * i / 24.0;
            const double v = q.packing(3.0 * eps);
            if (v > prev * (1.0 + 1e-9) + 1e-12)
                throw ContractError("approximation_lower_bound: packing profile increased at eps=" +
                                    std::to_string(3.0 * eps));
            prev = v;
        }
    }
    if (!q.fat.pdim) {
        double prev = std::numeric_limits<double>::infinity();
        for (int i = 1; i <= 24; ++i) {
            const double gamma = hi / 32.0 * i / 24.0;
            const double v = q.fat(gamma);
            if (v > prev * (1.0 + 1e-9) + 1e-12)
                throw ContractError("approximation_lower_bound: fat profile increased at gamma=" +
                                    std::to_string(gamma));
            prev = v;
        }
    }
}

} // namespace

double approximation_lower_bound(const BoundQuery& q) {
    if (!(q.a < q.b)) throw DomainError("approximation_lower_bound: needs a < b");
    if (!(q.p >= 1.0)) throw DomainError("approximation_lower_bound: p must be >= 1");
    if (!(q.c > 0.0)) throw DomainError("approximation_lower_bound: c must be positive");
    check_profile_contracts(q);

    const double width = q.b - q.a;
    const double hi = width / 3.0;
    const double lo = 1e-12 * width;
    auto feasible = [&](double eps) {
        if (eps >= hi) return true; // log M(3 eps) = 0 once 3 eps reaches the range width
        return q.packing(3.0 * eps) <= fat_log_packing_bound(eps, q.fat(eps / 32.0), width, q.c, q.p);
    };

    // geometric sweep for the first feasible point, then bisection
    constexpr int kSweep = 4096;
    const double ratio = std::pow(hi / lo, 1.0 / kSweep);
    double prev = lo;
    if (feasible(lo)) return lo;
    double bracket_lo = lo, bracket_hi = hi;
    bool found = false;
    double x = lo;
    for (int i = 1; i <= kSweep; ++i) {
        x = i == kSweep ? hi : x * ratio;
        if (feasible(x)) {
            bracket_lo = prev;
            bracket_hi = x;
            found = true;
            break;
        }
        prev = x;
    }
    if (!found) return hi;

    while (bracket_hi - bracket_lo > 1e-12 * width) {
        const double mid = 0.5 * (bracket_lo + bracket_hi);
        (feasible(mid) ? bracket_hi : bracket_lo) = mid;
    }
    // bracketing certificate: holds at the returned point, fails just below
    if (!feasible(bracket_hi) || feasible(bracket_lo))
        throw NumericError("approximation_lower_bound: bisection lost its bracket");
    return bracket_hi;
}

// ------------------------------------------------------ closed-form solution

RateResult closed_form_lower_bound(double P, double alpha, double c1, double eps1) {
    if (!(P >= 1.0)) throw DomainError("closed_form_lower_bound: P must be >= 1");
    if (!(alpha > 0.0) || !(c1 > 0.0) || !(eps1 > 0.0))
        throw DomainError("closed_form_lower_bound: alpha, c1, eps1 must be positive");
    RateResult out;
    out.constants = {{"c1", c1}, {"eps1", eps1}, {"alpha", alpha}, {"P", P}};
    if (P == 1.0) { // P^{-1/a} log^{-2/a} P = +infinity by convention
        out.value = eps1;
        out.regime = "pdim-one";
        return out;
    }
    const double rate = c1 * std::pow(P, -1.0 / alpha) * std::pow(std::log(P), -2.0 / alpha);
    out.value = std::min(eps1, rate);
    out.regime = out.value == eps1 && eps1 < rate ? "eps1-floor" : "polylog";
    return out;
}

// ------------------------------------------------------------ the inequation

std::optional<double> solve_inequation(double c, double alpha, double r, double P) {
    if (!(c > 0.0) || !(alpha > 0.0) || !(r > 0.0))
        throw DomainError("solve_inequation: c, alpha, r must be positive");
    if (!(P >= 1.0)) throw DomainError("solve_inequation: P must be >= 1");

    const auto f = [&](double x) { // x = 1/eps
        const double lg = std::log(r * P * x);
        return std::pow(x, alpha) / (lg * lg);
    };
    const double budget = c * P;
    // f decreases until exp(2/alpha)/(rP) and increases beyond; the smallest
    // solution eps = 1/x sits on the increasing branch
    const double x_valley = std::exp(2.0 / alpha) / (r * P);
    double x_left = std::max(x_valley, (1.0 + 1e-12) / r);
    if (f(x_left) > budget) return std::nullopt;

    double x_right = x_left * 2.0;
    while (f(x_right) <= budget) {
        x_right *= 2.0;
        if (!std::isfinite(x_right)) return std::nullopt;
    }
    for (int i = 0; i < 200 && x_right - x_left > x_left * 1e-15; ++i) {
        const double mid = 0.5 * (x_left + x_right);
        (f(mid) <= budget ? x_left : x_right) = mid;
    }
    const double eps = 1.0 / x_left;
    // root certificate: satisfied at eps, violated just below
    if (f(1.0 / eps) > budget * (1.0 + 1e-9))
        throw NumericError("solve_inequation: root certification failed");
    return eps;
}

// --------------------------------------------------------------- rate tables

RateResult pdim_upper_bound(double W, double L, int nu, double c1, double c2, double c3) {
    if (!(W >= 2.0)) throw DomainError("pdim_upper_bound: W must be >= 2");
    if (!(L >= 1.0)) throw DomainError("pdim_upper_bound: L must be >= 1");
    if (nu < 0) throw DomainError("pdim_upper_bound: nu must be >= 0");
    RateResult out;
    out.constants = {{"W", W}, {"L", L}, {"nu", static_cast<double>(nu)}};
    if (nu >= 2) {
        out.value = c1 * W * W;
        out.regime = "nu>=2: c1 W^2";
        out.constants["c1"] = c1;
    } else if (nu == 1) {
        out.value = c2 * L * W * std::log(W);
        out.regime = "nu=1: c2 L W log W";
        out.constants["c2"] = c2;
    } else {
        out.value = c3 * W * std::log(W);
        out.regime = "nu=0: c3 W log W";
        out.constants["c3"] = c3;
    }
    return out;
}

RateResult network_rate(double alpha, int nu, double W, double L, double c1, double c2,
                           double c3) {
    if (!(alpha > 0.0)) throw DomainError("network_rate: alpha must be positive");
    if (!(W >= 2.0)) throw DomainError("network_rate: W must be >= 2");
    if (!(L >= 1.0)) throw DomainError("network_rate: L must be >= 1");
    if (nu < 0) throw DomainError("network_rate: nu must be >= 0");
    const double lw = std::log(W);
    RateResult out;
    out.constants = {{"alpha", alpha}, {"W", W}, {"L", L}, {"nu", static_cast<double>(nu)}};
    if (nu >= 2) {
        out.value = c1 * std::pow(W, -2.0 / alpha) * std::pow(lw, -2.0 / alpha);
        out.regime = "nu>=2: c1 W^{-2/a} log^{-2/a} W";
        out.constants["c1"] = c1;
    } else if (nu == 1) {
        out.value = c2 * std::pow(L * W, -1.0 / alpha) * std::pow(lw, -3.0 / alpha);
        out.regime = "nu=1: c2 (LW)^{-1/a} log^{-3/a} W";
        out.constants["c2"] = c2;
    } else {
        out.value = c3 * std::pow(W, -1.0 / alpha) * std::pow(lw, -3.0 / alpha);
        out.regime = "nu=0: c3 W^{-1/a} log^{-3/a} W";
        out.constants["c3"] = c3;
    }
    return out;
}

double holder_packing_exponent(double s, int d) {
    if (!(s > 0.0) || d < 1) throw DomainError("holder_packing_exponent: invalid parameters");
    return static_cast<double>(d) / s;
}

double monotone_packing_exponent(int d, double p) {
    if (d < 1 || !(p >= 1.0)) throw DomainError("monotone_packing_exponent: invalid parameters");
    return std::max(static_cast<double>(d), (d - 1) * p);
}

double barron_packing_exponent(int d) {
    if (d < 1) throw DomainError("barron_packing_exponent: d must be >= 1");
    return 1.0 / (0.5 + 1.0 / d);
}

RateResult holder_rate(double s, int d, double gamma, double W, double L, double c1,
                       double depth_c) {
    if (!(s > 0.0) || d < 1) throw DomainError("holder_rate: invalid s or d");
    if (!(W >= 2.0)) throw DomainError("holder_rate: W must be >= 2");
    const double lo = s / d, hi = 2.0 * s / d;
    if (!(gamma > lo && gamma <= hi))
        throw DomainError("holder_rate: gamma must lie in (s/d, 2s/d]");
    const double depth_cap = depth_c * std::pow(W, gamma * d / s - 1.0);
    if (!(L >= 1.0 && L <= depth_cap))
        throw DomainError("holder_rate: depth must satisfy 1 <= L <= c W^{gamma d/s - 1}");
    RateResult out;
    out.value = c1 * std::pow(W, -gamma) * std::pow(std::log(W), -3.0 * s / d);
    out.regime = "holder: c1 W^{-gamma} log^{-3s/d} W";
    out.constants = {{"c1", c1}, {"s", s},         {"d", static_cast<double>(d)},
                     {"gamma", gamma}, {"W", W},   {"L", L},
                     {"alpha", holder_packing_exponent(s, d)}};
    return out;
}

RateResult monotone_lower_rate(int d, double p, int nu, double W, double L, double c1, double c2,
                               double c3) {
    if (d < 1) throw DomainError("monotone_lower_rate: d must be >= 1");
    if (!(p >= 1.0)) throw DomainError("monotone_lower_rate: p must be >= 1");
    const double alpha = monotone_packing_exponent(d, p);
    RateResult out = network_rate(alpha, nu, W, L, c1, c2, c3);
    out.regime = "monotone " + out.regime;
    return out;
}

RateResult monotone_upper_rate(int d, double p, double W, double c) {
    if (d < 2) throw DomainError("monotone_upper_rate: requires d >= 2");
    if (!(p >= 1.0)) throw DomainError("monotone_upper_rate: p must be >= 1");
    if (!(W >= 2.0)) throw DomainError("monotone_upper_rate: W must be >= 2");
    const double alpha = monotone_packing_exponent(d, p);
    RateResult out;
    out.constants = {{"c", c}, {"alpha", alpha}, {"W", W}, {"d", static_cast<double>(d)},
                     {"p", p}};
    if (p * (d - 1) == static_cast<double>(d)) {
        out.value = c * std::pow(W, -1.0 / d) * std::log(W);
        out.regime = "monotone upper: c W^{-1/d} log W (p(d-1)=d)";
    } else {
        out.value = c * std::pow(W, -1.0 / alpha);
        out.regime = "monotone upper: c W^{-1/alpha} (p(d-1)!=d)";
    }
    return out;
}

RateResult barron_rate(int d, int nu, double W, double L, double c1, double c2, double c3) {
    if (d < 1) throw DomainError("barron_rate: d must be >= 1");
    const double alpha = barron_packing_exponent(d);
    RateResult out = network_rate(alpha, nu, W, L, c1, c2, c3);
    out.regime = "barron " + out.regime;
    out.constants["packing_exponent"] = alpha;
    return out;
}

RateResult rate_table(const RateQuery& q) {
    if (q.cls == "holder") return holder_rate(q.s, q.d, q.gamma, q.W, q.L, q.c1);
    if (q.cls == "monotone_lower")
        return monotone_lower_rate(q.d, q.p, q.nu, q.W, q.L, q.c1, q.c2, q.c3);
    if (q.cls == "monotone_upper") return monotone_upper_rate(q.d, q.p, q.W, q.c1);
    if (q.cls == "barron") return barron_rate(q.d, q.nu, q.W, q.L, q.c1, q.c2, q.c3);
    throw ValidationError("rate_table: unknown class '" + q.cls + "'");
}

} // namespace lpapprox
