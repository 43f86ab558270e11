#include "lpapprox/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "lpapprox/rng.hpp"

namespace lpapprox {

namespace {

constexpr double kMonotoneSlack = 1e-12; // absorbs benign FP noise in user oracles

void require_unit_range(double v) {
    if (!(v >= -kMonotoneSlack && v <= 1.0 + kMonotoneSlack))
        throw ContractError("monotone oracle: value " + std::to_string(v) + " outside [0,1]");
}

} // namespace

void MonotoneOracle::spot_check(std::uint64_t seed, std::size_t pairs) const {
    std::vector<double> x(static_cast<std::size_t>(d)), y(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < pairs; ++i) {
        for (int j = 0; j < d; ++j) {
            const std::uint64_t k = i * static_cast<std::size_t>(2 * d) + static_cast<std::size_t>(j);
            x[static_cast<std::size_t>(j)] = rng::uniform01(seed, 2 * k);
            y[static_cast<std::size_t>(j)] =
                x[static_cast<std::size_t>(j)] +
                rng::uniform01(seed, 2 * k + 1) * (1.0 - x[static_cast<std::size_t>(j)]);
        }
        const double fx = f(x), fy = f(y);
        require_unit_range(fx);
        require_unit_range(fy);
        if (fx > fy + kMonotoneSlack)
            throw ContractError("monotone oracle: decreasing on a comparable pair (f(x)=" +
                                std::to_string(fx) + " > f(y)=" + std::to_string(fy) + ")");
    }
}

// ------------------------------------------------------- DecompositionParams

DecompositionParams::DecompositionParams(int N_, int d_, double p_) : N(N_), d(d_), p(p_) {
    if (N < 1) throw DomainError("decomposition: N must be >= 1");
    if (d < 1) throw DomainError("decomposition: d must be >= 1");
    if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("decomposition: p must be in [1,inf)");
    if (p == 1.0) {
        K_ = std::ldexp(1.0, d); // 2^d
    } else {
        beta_ = 0.5 * (d - 1 + 1.0 / (p - 1.0));
        K_ = std::pow(2.0, beta_);
    }
    // ceil with slack so exact integer ratios do not round up
    l_ = static_cast<int>(std::ceil(N * std::log(2.0) / std::log(K_) - 1e-12));
    l_ = std::max(l_, 1);
    // dyadic corner keys must pack into 64 bits at the finest grid
    if (static_cast<long long>(N + l_ + 1) * d > 62)
        throw CapacityError("decomposition: (N + l) * d too large for dyadic integer keys");
}

double DecompositionParams::threshold(int level) const {
    return std::pow(K_, level + 1) * std::ldexp(1.0, -N);
}

// --------------------------------------------------------- CubeDecomposition

std::size_t CubeDecomposition::total_cubes() const {
    std::size_t n = 0;
    for (const auto& level : levels) n += level.count();
    return n;
}

Cube CubeDecomposition::cube_at(int level, std::size_t index) const {
    const Level& lv = levels[static_cast<std::size_t>(level)];
    const int d = params.d;
    std::vector<double> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        const std::uint32_t c = lv.coords[index * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)];
        lo[static_cast<std::size_t>(j)] = std::ldexp(static_cast<double>(c), -lv.scale);
        hi[static_cast<std::size_t>(j)] = std::ldexp(static_cast<double>(c) + 1.0, -lv.scale);
    }
    return Cube::half_open(std::move(lo), std::move(hi));
}

namespace {
std::uint64_t pack_key(std::span<const std::uint32_t> coords, int bits) {
    std::uint64_t key = 0;
    for (std::uint32_t c : coords) key = (key << bits) | c;
    return key;
}
} // namespace

void CubeDecomposition::build_index() const {
    if (!index_.empty()) return;
    const int d = params.d;
    index_.resize(levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const Level& lv = levels[i];
        index_[i].reserve(lv.count() * 2);
        for (std::size_t k = 0; k < lv.count(); ++k)
            index_[i][pack_key({lv.coords.data() + k * static_cast<std::size_t>(d),
                                static_cast<std::size_t>(d)},
                               lv.scale)] = k;
    }
}

int CubeDecomposition::level_containing(std::span<const double> x) const {
    build_index();
    const int d = params.d;
    std::vector<std::uint32_t> c(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const int s = levels[i].scale;
        const double side = std::ldexp(1.0, s);
        bool in_grid = true;
        for (int j = 0; j < d; ++j) {
            const double t = std::floor(x[static_cast<std::size_t>(j)] * side);
            if (t < 0.0 || t >= side) {
                in_grid = false;
                break;
            }
            c[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(t);
        }
        if (in_grid && index_[i].count(pack_key(c, s))) return static_cast<int>(i);
    }
    return -1;
}

int CubeDecomposition::count_containing(std::span<const double> x) const {
    build_index();
    const int d = params.d;
    int hits = 0;
    std::vector<std::uint32_t> c(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const int s = levels[i].scale;
        const double side = std::ldexp(1.0, s);
        bool in_grid = true;
        for (int j = 0; j < d; ++j) {
            const double t = std::floor(x[static_cast<std::size_t>(j)] * side);
            if (t < 0.0 || t >= side) {
                in_grid = false;
                break;
            }
            c[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(t);
        }
        if (in_grid && index_[i].count(pack_key(c, s))) ++hits;
    }
    return hits;
}

// ------------------------------------------------------------------ decompose

namespace {

// Corner evaluations memoized on exact integer coordinates at the finest
// corner grid (scale N + l). The memo stops growing at `cap` entries; the
// oracle contract (at most 2 calls per examined cube) holds regardless.
class CornerCache {
public:
    CornerCache(const MonotoneOracle& f, int finest_scale, int d, std::size_t cap)
        : f_(f), finest_(finest_scale), d_(d), bits_(finest_scale + 1), cap_(cap) {
        x_.resize(static_cast<std::size_t>(d));
    }

    double at(std::span<const std::uint32_t> coords, int scale) {
        std::uint64_t key = 0;
        const int shift = finest_ - scale;
        for (int j = 0; j < d_; ++j)
            key = (key << bits_) |
                  (static_cast<std::uint64_t>(coords[static_cast<std::size_t>(j)]) << shift);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        for (int j = 0; j < d_; ++j)
            x_[static_cast<std::size_t>(j)] =
                std::ldexp(static_cast<double>(coords[static_cast<std::size_t>(j)]), -scale);
        const double v = f_(x_);
        require_unit_range(v);
        if (memo_.size() < cap_) memo_.emplace(key, v);
        return v;
    }

private:
    const MonotoneOracle& f_;
    int finest_, d_, bits_;
    std::size_t cap_;
    std::vector<double> x_;
    std::unordered_map<std::uint64_t, double> memo_;
};

} // namespace

CubeDecomposition decompose(const MonotoneOracle& f, const DecompositionParams& params,
                            const DecomposeOptions& options) {
    if (f.d != params.d) throw ValidationError("decompose: oracle dimension != params.d");
    f.spot_check(options.spot_check_seed, options.spot_check_pairs);

    const int d = params.d;
    const int N = params.N;
    const int l = params.levels();
    if (std::ldexp(1.0, N * d) > static_cast<double>(options.cube_cap))
        throw CapacityError("decompose: initial grid 2^(N d) exceeds the cube cap (" +
                            std::to_string(options.cube_cap) + ")");
    CornerCache corners(f, N + l, d, options.corner_memo_cap);

    CubeDecomposition dec(params);
    dec.levels.resize(static_cast<std::size_t>(l) + 1);
    for (int i = 0; i <= l; ++i) {
        dec.levels[static_cast<std::size_t>(i)].scale = N + i;
        dec.levels[static_cast<std::size_t>(i)].dim_ = d;
    }

    std::size_t examined = 0;
    std::vector<std::uint32_t> upper(static_cast<std::size_t>(d));
    // oscillation test; returns true when the cube is accepted at `level`
    auto accept = [&](std::span<const std::uint32_t> lo, int level) {
        if (++examined > options.cube_cap)
            throw CapacityError("decompose: cube cap exceeded (" +
                                std::to_string(options.cube_cap) + ")");
        for (int j = 0; j < d; ++j) upper[static_cast<std::size_t>(j)] = lo[static_cast<std::size_t>(j)] + 1;
        const double flo = corners.at(lo, N + level);
        const double fhi = corners.at(upper, N + level);
        if (fhi - flo < -kMonotoneSlack)
            throw ContractError("decompose: oracle decreases across a cube diagonal");
        return fhi - flo <= params.threshold(level);
    };

    // Level 0: the full 2^{Nd} grid, iterated in lexicographic order.
    std::vector<std::uint32_t> remaining; // lower corners of R_{i-1}, flat
    {
        const std::uint32_t side = static_cast<std::uint32_t>(1) << N;
        std::vector<std::uint32_t> key(static_cast<std::size_t>(d), 0);
        while (true) {
            if (accept(key, 0))
                dec.levels[0].coords.insert(dec.levels[0].coords.end(), key.begin(), key.end());
            else
                remaining.insert(remaining.end(), key.begin(), key.end());
            int axis = d - 1;
            while (axis >= 0 && ++key[static_cast<std::size_t>(axis)] == side) {
                key[static_cast<std::size_t>(axis)] = 0;
                --axis;
            }
            if (axis < 0) break;
        }
        dec.remaining.push_back(remaining.size() / static_cast<std::size_t>(d));
    }

    // Levels 1..l-1: split, test. Level l: split, accept everything.
    for (int i = 1; i <= l; ++i) {
        std::vector<std::uint32_t> next;
        std::vector<std::uint32_t> child(static_cast<std::size_t>(d));
        const std::size_t parents = remaining.size() / static_cast<std::size_t>(d);
        for (std::size_t pi = 0; pi < parents; ++pi) {
            const std::uint32_t* parent = remaining.data() + pi * static_cast<std::size_t>(d);
            for (unsigned mask = 0; mask < (1u << d); ++mask) {
                for (int j = 0; j < d; ++j)
                    child[static_cast<std::size_t>(j)] =
                        2 * parent[j] + ((mask >> (d - 1 - j)) & 1u);
                if (i == l || accept(child, i))
                    dec.levels[static_cast<std::size_t>(i)].coords.insert(
                        dec.levels[static_cast<std::size_t>(i)].coords.end(), child.begin(),
                        child.end());
                else
                    next.insert(next.end(), child.begin(), child.end());
            }
        }
        remaining = std::move(next);
        if (i < l) dec.remaining.push_back(remaining.size() / static_cast<std::size_t>(d));
    }
    return dec;
}

// ---------------------------------------------------------- DyadicApproximant

DyadicApproximant::DyadicApproximant(const CubeDecomposition& dec, const MonotoneOracle& f)
    : d_(dec.params.d) {
    std::vector<double> x(static_cast<std::size_t>(d_));
    for (const auto& lv : dec.levels) {
        // refinement emits children parent-major, which is not globally
        // key-ordered; sort pairs for the binary-search lookup
        std::vector<std::pair<std::uint64_t, double>> entries;
        entries.reserve(lv.count());
        for (std::size_t k = 0; k < lv.count(); ++k) {
            const std::uint32_t* c = lv.coords.data() + k * static_cast<std::size_t>(d_);
            for (int j = 0; j < d_; ++j)
                x[static_cast<std::size_t>(j)] = std::ldexp(static_cast<double>(c[j]), -lv.scale);
            const double v = f(x);
            require_unit_range(v);
            entries.emplace_back(pack_key({c, static_cast<std::size_t>(d_)}, lv.scale), v);
        }
        std::sort(entries.begin(), entries.end());
        Level out;
        out.scale = lv.scale;
        out.keys.reserve(entries.size());
        out.values.reserve(entries.size());
        for (const auto& [key, v] : entries) {
            out.keys.push_back(key);
            out.values.push_back(v);
        }
        levels_.push_back(std::move(out));
    }
}

double DyadicApproximant::operator()(std::span<const double> x) const {
    std::vector<std::uint32_t> c(static_cast<std::size_t>(d_));
    for (const auto& lv : levels_) {
        const double side = std::ldexp(1.0, lv.scale);
        for (int j = 0; j < d_; ++j) {
            // clamp into [0, 2^s - 1]: the top boundary of [0,1]^d extends
            // the last cube, points below 0 snap to the first
            double t = std::floor(x[static_cast<std::size_t>(j)] * side);
            t = std::max(0.0, std::min(t, side - 1.0));
            c[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(t);
        }
        const std::uint64_t key = pack_key(c, lv.scale);
        const auto it = std::lower_bound(lv.keys.begin(), lv.keys.end(), key);
        if (it != lv.keys.end() && *it == key)
            return lv.values[static_cast<std::size_t>(it - lv.keys.begin())];
    }
    return 0.0;
}

RealFn DyadicApproximant::as_fn() const {
    // the copy is shared, not duplicated per call
    auto shared = std::make_shared<DyadicApproximant>(*this);
    return [shared](std::span<const double> x) { return (*shared)(x); };
}

std::size_t DyadicApproximant::piece_count() const {
    std::size_t n = 0;
    for (const auto& lv : levels_) n += lv.keys.size();
    return n;
}

PiecewiseConstantFn DyadicApproximant::to_piecewise_constant() const {
    std::vector<Cube> cubes;
    std::vector<double> values;
    for (const auto& lv : levels_) {
        const int bits = lv.scale;
        const std::uint64_t mask = (std::uint64_t(1) << bits) - 1;
        for (std::size_t k = 0; k < lv.keys.size(); ++k) {
            const std::uint64_t key = lv.keys[k];
            std::vector<double> lo(static_cast<std::size_t>(d_)), hi(static_cast<std::size_t>(d_));
            for (int j = d_ - 1; j >= 0; --j) {
                const std::uint64_t c = (key >> (bits * (d_ - 1 - j))) & mask;
                lo[static_cast<std::size_t>(j)] = std::ldexp(static_cast<double>(c), -lv.scale);
                hi[static_cast<std::size_t>(j)] = std::ldexp(static_cast<double>(c) + 1.0, -lv.scale);
            }
            cubes.push_back(Cube::half_open(std::move(lo), std::move(hi)));
            values.push_back(lv.values[k]);
        }
    }
    return PiecewiseConstantFn(std::move(cubes), std::move(values));
}

PiecewiseConstantFn build_approximant(const CubeDecomposition& dec, const MonotoneOracle& f) {
    return DyadicApproximant(dec, f).to_piecewise_constant();
}

DyadicApproximant build_fast_approximant(const CubeDecomposition& dec, const MonotoneOracle& f) {
    return DyadicApproximant(dec, f);
}

// ------------------------------------------------------------------- bounds

long double cube_count_bound(const DecompositionParams& params, int level) {
    const long double K = params.K();
    const int exponent = level * (params.d - 1) + params.N * params.d + 1;
    return params.d * std::pow(K, static_cast<long double>(-level)) *
           std::ldexp(static_cast<long double>(1), exponent);
}

bool check_cube_count_bounds(const CubeDecomposition& dec) {
    for (std::size_t i = 0; i < dec.levels.size(); ++i)
        if (static_cast<long double>(dec.levels[i].count()) >
            cube_count_bound(dec.params, static_cast<int>(i)))
            return false;
    return true;
}

ErrorBound lp_error_bound(const DecompositionParams& params) {
    const double p = params.p, d = params.d, K = params.K(), N = params.N;
    const double Kp = std::pow(K, p);
    const double Kp1 = std::pow(K, p - 1.0);
    const double lhs = p * (d - 1.0);
    ErrorBound out{};
    if (lhs < d) {
        const double c1 = std::pow(Kp + 2.0 * Kp * d * Kp1 / (2.0 - Kp1) + 2.0 * d, 1.0 / p);
        out = {c1 * std::ldexp(1.0, -params.N), c1, "p(d-1)<d"};
    } else if (lhs > d) {
        const double c2 =
            std::pow(Kp + 2.0 * std::pow(K, 2.0 * p) * d / (Kp1 / 2.0 - 1.0) + 2.0 * d, 1.0 / p);
        out = {c2 * std::pow(2.0, -N * (1.0 + 1.0 / params.beta()) / p), c2, "p(d-1)>d"};
    } else {
        const double c3 = std::pow(Kp + 2.0 * Kp * d / (d - 1.0) + 2.0 * d, 1.0 / p);
        out = {c3 * std::pow(N, 1.0 / p) * std::ldexp(1.0, -params.N), c3, "p(d-1)=d"};
    }
    return out;
}

std::uint64_t predicted_weight_budget(const DecompositionParams& params) {
    const long double ratio = std::ldexp(static_cast<long double>(1), params.d - 1) / params.K();
    long double sum = 0, term = 1;
    for (int i = 0; i <= params.levels(); ++i, term *= ratio) sum += term;
    const long double w = std::ldexp(static_cast<long double>(params.d), params.N * params.d + 2) *
                          (params.d + 1) * (params.d + 1) * sum;
    if (!(w < 9.0e18L)) throw CapacityError("weight budget overflows 64-bit range");
    return static_cast<std::uint64_t>(std::llroundl(w));
}

double upper_rate(double W, int d, double p) {
    if (p < 1.0) throw DomainError("upper_rate: requires p >= 1");
    if (d < 2) throw DomainError("upper_rate: requires d >= 2");
    if (!(W >= 2.0)) throw DomainError("upper_rate: requires W >= 2");
    const double alpha = std::max(static_cast<double>(d), (d - 1) * p);
    if (p * (d - 1) == static_cast<double>(d)) return std::pow(W, -1.0 / d) * std::log(W);
    return std::pow(W, -1.0 / alpha);
}

// ------------------------------------------------------------------- corpus

std::vector<NamedOracle> monotone_corpus(int d, std::uint64_t seed) {
    if (d < 1) throw DomainError("monotone_corpus: d must be >= 1");
    const std::size_t du = static_cast<std::size_t>(d);
    std::vector<NamedOracle> out;

    out.push_back({"mean", {d, [du](std::span<const double> x) {
                                double s = 0;
                                for (std::size_t j = 0; j < du; ++j) s += x[j];
                                return s / static_cast<double>(du);
                            }}});
    out.push_back({"max", {d, [du](std::span<const double> x) {
                               double m = 0;
                               for (std::size_t j = 0; j < du; ++j) m = std::max(m, x[j]);
                               return m;
                           }}});
    out.push_back({"min", {d, [du](std::span<const double> x) {
                               double m = 1;
                               for (std::size_t j = 0; j < du; ++j) m = std::min(m, x[j]);
                               return m;
                           }}});
    out.push_back({"smoothstep", {d, [du](std::span<const double> x) {
                                      double q = 1;
                                      for (std::size_t j = 0; j < du; ++j) q *= 1.0 - x[j];
                                      return 1.0 - q;
                                  }}});
    out.push_back({"product", {d, [du](std::span<const double> x) {
                                   double q = 1;
                                   for (std::size_t j = 0; j < du; ++j) q *= x[j];
                                   return q;
                               }}});
    if (d >= 2) {
        out.push_back({"disk", {d, [du](std::span<const double> x) {
                                    double s = 0;
                                    for (std::size_t j = 0; j < du; ++j)
                                        s += (x[j] - 1.0) * (x[j] - 1.0);
                                    return s <= 1.0 ? 1.0 : 0.0;
                                }}});
    } else {
        out.push_back({"step", {d, [](std::span<const double> x) {
                                    return x[0] >= 0.5 ? 1.0 : 0.0;
                                }}});
    }

    // random mixture of upper-orthant indicators on a dyadic grid
    constexpr int kTerms = 8;
    std::vector<std::vector<double>> corner(kTerms, std::vector<double>(du));
    std::vector<double> weight(kTerms);
    double total = 0;
    for (int k = 0; k < kTerms; ++k) {
        for (std::size_t j = 0; j < du; ++j)
            corner[static_cast<std::size_t>(k)][j] =
                static_cast<double>(rng::below(seed, static_cast<std::uint64_t>(k) * du + j, 256)) /
                256.0;
        weight[static_cast<std::size_t>(k)] =
            0.05 + rng::uniform01(seed ^ 0xabcdULL, static_cast<std::uint64_t>(k));
        total += weight[static_cast<std::size_t>(k)];
    }
    for (double& w : weight) w /= total;
    out.push_back({"orthant_mix", {d, [corner, weight, du](std::span<const double> x) {
                                       double s = 0;
                                       for (std::size_t k = 0; k < corner.size(); ++k) {
                                           bool in = true;
                                           for (std::size_t j = 0; j < du && in; ++j)
                                               in = x[j] >= corner[k][j];
                                           if (in) s += weight[k];
                                       }
                                       return s;
                                   }}});
    return out;
}

} // namespace lpapprox
