#ifndef LPAPPROX_MONOTONE_HPP
#define LPAPPROX_MONOTONE_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "lpapprox/cubes.hpp"
#include "lpapprox/realfn.hpp"

namespace lpapprox {

/// A function [0,1]^d -> [0,1], non-decreasing along every axis-parallel
/// line. Monotonicity is the caller's promise; spot_check probes it on
/// random comparable pairs and decompose() rejects on any witnessed
/// violation.
struct MonotoneOracle {
    int d = 1;
    RealFn f;

    double operator()(std::span<const double> x) const { return f(x); }
    double operator()(const std::vector<double>& x) const { return f(std::span<const double>(x)); }

    /// Throws ContractError if a sampled comparable pair decreases or a
    /// value leaves [0,1].
    void spot_check(std::uint64_t seed, std::size_t pairs = 64) const;
};

/// Adaptive-partition parameters. K is the oscillation growth base
/// (2^d for p = 1, else 2^beta with beta = (d-1+1/(p-1))/2) and
/// l = ceil(N log2 / log K) the number of refinement rounds, so that
/// K^{-l} <= 2^{-N} < K^{-l+1}.
struct DecompositionParams {
    int N = 1;
    int d = 1;
    double p = 1.0;

    DecompositionParams(int N_, int d_, double p_);

    double beta() const { return beta_; } // meaningful for p > 1 only
    double K() const { return K_; }
    int levels() const { return l_; } // l

    /// Oscillation acceptance threshold K^{i+1} 2^{-N} at level i.
    double threshold(int level) const;

private:
    double beta_ = 0.0;
    double K_ = 2.0;
    int l_ = 1;
};

/// The S_0..S_l partition of [0,1)^d into half-open dyadic cubes of side
/// 2^{-(N+i)} at level i, plus the |R_i| trace. Cubes are stored as integer
/// lower-corner coordinates at their level's grid.
struct CubeDecomposition {
    explicit CubeDecomposition(DecompositionParams params_) : params(params_) {}

    DecompositionParams params;

    struct Level {
        int scale = 0;                       // cube side 2^{-scale}
        std::vector<std::uint32_t> coords;   // flat, d entries per cube, lex-sorted
        std::size_t count() const { return coords.empty() ? 0 : coords.size() / dim_; }
        int dim_ = 1;
    };
    std::vector<Level> levels;               // S_0..S_l
    std::vector<std::size_t> remaining;      // |R_0|..|R_{l-1}|

    std::size_t total_cubes() const;
    Cube cube_at(int level, std::size_t index) const; // half-open [a,b)

    /// Index of the unique level whose cube contains x in [0,1)^d,
    /// -1 if none (should not happen for a valid decomposition).
    int level_containing(std::span<const double> x) const;
    /// Number of cubes over all levels containing x (partition check helper).
    int count_containing(std::span<const double> x) const;

private:
    friend CubeDecomposition decompose(const MonotoneOracle&, const DecompositionParams&,
                                       const struct DecomposeOptions&);
    mutable std::vector<std::unordered_map<std::uint64_t, std::size_t>> index_; // built lazily
    void build_index() const;
};

struct DecomposeOptions {
    std::size_t cube_cap = std::size_t(1) << 24;   // cubes examined before CapacityError
    std::size_t corner_memo_cap = std::size_t(1) << 21; // memoized corner values
    std::size_t spot_check_pairs = 64;
    std::uint64_t spot_check_seed = 0x5eedULL;
};

/// The three-stage adaptive procedure: 2^{Nd} initial cubes, l-1 refinement
/// rounds accepting cubes with corner oscillation f(sup corner) - f(inf
/// corner) <= K^{i+1} 2^{-N}, and a final round accepting everything.
CubeDecomposition decompose(const MonotoneOracle& f, const DecompositionParams& params,
                            const DecomposeOptions& options = {});

/// f-tilde with fast point location: per-level hash of dyadic cube keys.
class DyadicApproximant {
public:
    DyadicApproximant(const CubeDecomposition& dec, const MonotoneOracle& f);

    double operator()(std::span<const double> x) const;
    double operator()(const std::vector<double>& x) const {
        return (*this)(std::span<const double>(x));
    }
    RealFn as_fn() const;

    int dim() const { return d_; }
    std::size_t piece_count() const;

    /// Materializes the cube list (half-open cubes, values f(inf corner)).
    PiecewiseConstantFn to_piecewise_constant() const;

private:
    int d_;
    struct Level {
        int scale;
        std::vector<std::uint64_t> keys; // sorted packed coordinates
        std::vector<double> values;      // aligned with keys
    };
    std::vector<Level> levels_; // sorted storage keeps memory flat for
                                // multi-million-cube decompositions
};

/// Spec'd form of the approximant (materialized cube list).
PiecewiseConstantFn build_approximant(const CubeDecomposition& dec, const MonotoneOracle& f);
/// Same content, hash-indexed evaluator for large decompositions.
DyadicApproximant build_fast_approximant(const CubeDecomposition& dec, const MonotoneOracle& f);

/// Per-level cap d K^{-i} 2^{i(d-1)+Nd+1} on the accepted-cube counts.
long double cube_count_bound(const DecompositionParams& params, int level);
bool check_cube_count_bounds(const CubeDecomposition& dec);

/// Case-split error bound ||f - f_tilde||_{L^p} <= value, with the explicit
/// constant from the corresponding case of the proof.
struct ErrorBound {
    double value;
    double constant;    // c1, c2 or c3
    std::string regime; // "p(d-1)<d", "p(d-1)>d", "p(d-1)=d"
};
ErrorBound lp_error_bound(const DecompositionParams& params);

/// W_N = 2^{Nd+2} d (d+1)^2 sum_{i=0..l} (2^{d-1}/K)^i, the weight budget
/// that dominates the compiled size of every decomposition at resolution N.
std::uint64_t predicted_weight_budget(const DecompositionParams& params);

/// Rate shape g(W) of the two-hidden-layer upper bound:
/// W^{-1/max(d,(d-1)p)} when p(d-1) != d, else W^{-1/d} log W.
double upper_rate(double W, int d, double p);

/// Named monotone test functions spanning smooth and discontinuous cases.
struct NamedOracle {
    std::string name;
    MonotoneOracle oracle;
};
std::vector<NamedOracle> monotone_corpus(int d, std::uint64_t seed);

} // namespace lpapprox

#endif
