#ifndef LPAPPROX_NETWORK_HPP
#define LPAPPROX_NETWORK_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lpapprox/errors.hpp"

namespace lpapprox {

/// Piecewise-polynomial activation on K >= 2 intervals.
///
/// Breakpoints t_1 < ... < t_{K-1} split the line into K intervals; each
/// breakpoint belongs to the interval on its right, so piece(x) counts the
/// breakpoints <= x. The built-in Heaviside therefore satisfies
/// sigma(0) = 1 and sigma(x) = 0 for x < 0.
class Activation {
public:
    Activation(std::vector<double> breakpoints,
               std::vector<std::vector<double>> piece_coeffs);

    static Activation heaviside();
    static Activation relu();

    double operator()(double x) const;

    std::size_t piece_index(double x) const;
    int max_degree() const { return max_degree_; }          // nu
    std::size_t piece_count() const { return pieces_.size(); } // K
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<std::vector<double>>& pieces() const { return pieces_; }

private:
    std::vector<double> breakpoints_;
    std::vector<std::vector<double>> pieces_; // coefficients, lowest degree first
    int max_degree_ = 0;
};

/// Feed-forward DAG architecture: d input nodes (in-degree 0), one output
/// node (out-degree 0), layers assigned by the longest-path recursion, skip
/// connections allowed. Node ids are arbitrary distinct non-negative ints.
class Architecture {
public:
    /// Derives layers from the edge list and validates every invariant.
    /// `output_bias` controls whether the output node owns a bias slot;
    /// synthesized indicator networks switch it off (see compiler.hpp).
    Architecture(int input_count,
                 std::vector<std::pair<int, int>> edges,
                 bool output_bias = true);

    /// Validates that `layers` matches the recomputation from the edges.
    Architecture(int input_count,
                 std::vector<std::vector<int>> layers,
                 std::vector<std::pair<int, int>> edges,
                 bool output_bias = true);

    int input_count() const { return d_; }
    int depth() const { return static_cast<int>(layers_.size()) - 1; } // L
    const std::vector<std::vector<int>>& layers() const { return layers_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    bool output_bias() const { return output_bias_; }
    int output_node() const { return output_node_; }

    std::size_t node_count() const;
    /// Total weight slots: one per edge plus one bias per non-input node
    /// (minus the output bias when disabled).
    std::size_t weight_count() const;

    /// Canonical slot order: edges sorted by (to, from), then biases by
    /// ascending node id. Returns the edge list in slot order.
    const std::vector<std::pair<int, int>>& canonical_edges() const { return canonical_edges_; }
    const std::vector<int>& bias_nodes() const { return bias_nodes_; }

private:
    void validate_and_index();

    int d_ = 0;
    std::vector<std::vector<int>> layers_;
    std::vector<std::pair<int, int>> edges_;
    bool output_bias_ = true;
    int output_node_ = -1;
    std::vector<std::pair<int, int>> canonical_edges_;
    std::vector<int> bias_nodes_;
};

/// Recomputes the layer partition from the edge list:
/// layer 0 = in-degree-0 nodes, every other node sits one past its deepest
/// predecessor. Throws ValidationError on cycles or degenerate shapes.
std::vector<std::vector<int>> derive_layers(int input_count,
                                            const std::vector<std::pair<int, int>>& edges);

/// An immutable network: architecture + weight vector + activation.
/// Evaluation is pure and safe to call concurrently.
class Network {
public:
    Network(Architecture arch, std::vector<double> weights, Activation activation);

    double evaluate(std::span<const double> x) const;
    double evaluate(const std::vector<double>& x) const { return evaluate(std::span<const double>(x)); }

    const Architecture& architecture() const { return arch_; }
    const std::vector<double>& weights() const { return weights_; }
    const Activation& activation() const { return activation_; }

private:
    Architecture arch_;
    std::vector<double> weights_;
    Activation activation_;

    // Evaluation plan, fixed at construction.
    struct NodePlan {
        std::vector<std::pair<std::size_t, std::size_t>> in; // (pred index, weight slot)
        std::size_t bias_slot = SIZE_MAX;                    // SIZE_MAX: no bias
        bool apply_activation = false;
    };
    std::vector<NodePlan> plan_;      // indexed by dense node index
    std::vector<std::size_t> order_;  // topological evaluation order (non-input nodes)
    std::vector<std::size_t> input_index_; // dense index of input j
    std::size_t output_index_ = 0;
};

/// Canonical JSON form, stable byte-for-byte:
/// {"d":..,"layers":[[..]],"edges":[[from,to]],"weights":[..],
///  "activation":{"breakpoints":[..],"pieces":[[..]..]}}
/// Floats are written with 17 significant digits. Networks with a bias-free
/// output additionally carry "output_bias":false.
std::string to_json(const Network& net);
Network network_from_json(const std::string& text);

} // namespace lpapprox

#endif
