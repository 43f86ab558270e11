#include "lpapprox/compiler.hpp"

#include <algorithm>
#include <tuple>

namespace lpapprox {

namespace {

// Node id blocks: inputs 0..d-1, perceptrons d..d+2dM-1 (cube-major, face
// order: lower faces by axis, then upper faces by axis), indicators next,
// output last. Lexicographic in (cube, face) for reproducible serialization.
struct Ids {
    int d;
    std::size_t m;
    int perceptron(std::size_t cube, int face) const {
        return d + static_cast<int>(cube) * 2 * d + face;
    }
    int indicator(std::size_t cube) const {
        return d + static_cast<int>(2 * static_cast<std::size_t>(d) * m + cube);
    }
    int output() const { return d + static_cast<int>((2 * static_cast<std::size_t>(d) + 1) * m); }
};

} // namespace

Network compile_cubes(const PiecewiseConstantFn& fn, bool check_disjoint) {
    if (fn.piece_count() == 0)
        throw ValidationError("compile_cubes: function has no cubes");
    if (check_disjoint) fn.require_disjoint();

    const int d = fn.dim();
    const std::size_t m = fn.piece_count();
    const Ids ids{d, m};

    // (to, from) -> weight, assembled edge by edge; biases keyed by node id.
    std::vector<std::tuple<int, int, double>> edges;
    std::vector<std::pair<int, double>> biases;
    edges.reserve(m * (2 * static_cast<std::size_t>(d) * (static_cast<std::size_t>(d) + 1) + 1));

    for (std::size_t i = 0; i < m; ++i) {
        const Cube& cube = fn.cubes[i];
        int belonging = 0;
        for (int face = 0; face < 2 * d; ++face) {
            const int axis = face % d;
            const bool lower = face < d;
            const bool belongs = cube.faces_belong[static_cast<std::size_t>(face)];
            if (belongs) ++belonging;

            // Face halfspace <w,x> + b >= 0 with w = +-e_axis:
            //   lower face: x_axis - lo >= 0, upper face: hi - x_axis >= 0.
            // Non-belonging faces flip the perceptron's sign and enter the
            // indicator sum with weight -1, realizing the strict inequality.
            double w_axis = lower ? 1.0 : -1.0;
            double b = lower ? -cube.lo[static_cast<std::size_t>(axis)]
                             : cube.hi[static_cast<std::size_t>(axis)];
            if (!belongs) {
                w_axis = -w_axis;
                b = -b;
            }
            const int node = ids.perceptron(i, face);
            for (int a = 0; a < d; ++a)
                edges.emplace_back(node, a, a == axis ? w_axis : 0.0);
            biases.emplace_back(node, b);
            edges.emplace_back(ids.indicator(i), node, belongs ? 1.0 : -1.0);
        }
        biases.emplace_back(ids.indicator(i), -static_cast<double>(belonging));
        edges.emplace_back(ids.output(), ids.indicator(i), fn.values[i]);
    }

    // Canonical slot order: edges by (to, from), then biases by node id.
    std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
        return std::get<0>(a) != std::get<0>(b) ? std::get<0>(a) < std::get<0>(b)
                                                : std::get<1>(a) < std::get<1>(b);
    });
    std::sort(biases.begin(), biases.end());

    std::vector<std::pair<int, int>> edge_list;
    std::vector<double> weights;
    edge_list.reserve(edges.size());
    weights.reserve(edges.size() + biases.size());
    for (const auto& [to, from, w] : edges) {
        edge_list.emplace_back(from, to);
        weights.push_back(w);
    }
    for (const auto& [node, b] : biases) {
        (void)node;
        weights.push_back(b);
    }

    Architecture arch(d, std::move(edge_list), /*output_bias=*/false);
    return Network(std::move(arch), std::move(weights), Activation::heaviside());
}

Network indicator_network(const Cube& cube) {
    return compile_cubes(PiecewiseConstantFn({cube}, {1.0}), false);
}

} // namespace lpapprox
