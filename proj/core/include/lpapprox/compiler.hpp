#ifndef LPAPPROX_COMPILER_HPP
#define LPAPPROX_COMPILER_HPP

#include "lpapprox/cubes.hpp"
#include "lpapprox/network.hpp"

namespace lpapprox {

/// Compiles f(x) = sum_i value_i * 1_{C_i}(x) into an exactly-equivalent
/// Heaviside network with two hidden layers and 2(d+1)^2 M weights.
///
/// Layer shape is [d, 2dM, M, 1]: one perceptron per cube face (weights
/// +-e_axis and a dyadic bias, sign flipped for non-belonging faces), one
/// indicator neuron per cube with +-1 incoming edges and bias -J_i where
/// J_i counts the belonging faces, and an affine output summing the cube
/// values. The output node carries no bias slot. Face membership is
/// honored exactly: sign tests never involve rounded thresholds.
///
/// Throws ValidationError when cubes overlap (naming the pair) or when the
/// function has no pieces. `check_disjoint` may be disabled for inputs
/// that are disjoint by construction (the pairwise check is quadratic).
Network compile_cubes(const PiecewiseConstantFn& fn, bool check_disjoint = true);

/// Single-cube indicator: a Heaviside network computing 1_C(x) exactly.
Network indicator_network(const Cube& cube);

/// Weight total of the synthesized architecture, without building it.
inline std::size_t compiled_weight_count(int d, std::size_t pieces) {
    const std::size_t dd = static_cast<std::size_t>(d);
    return 2 * (dd + 1) * (dd + 1) * pieces;
}

} // namespace lpapprox

#endif
