#include <doctest.h>

#include <cmath>

#include "lpapprox/network.hpp"
#include "lpapprox/rng.hpp"

using namespace lpapprox;

namespace {

// d=2, one fully connected hidden layer of 3 ReLU neurons, affine output
Network small_relu_net(std::vector<double> weights) {
    std::vector<std::pair<int, int>> edges;
    for (int in = 0; in < 2; ++in)
        for (int h = 2; h < 5; ++h) edges.emplace_back(in, h);
    for (int h = 2; h < 5; ++h) edges.emplace_back(h, 5);
    return Network(Architecture(2, std::move(edges)), std::move(weights), Activation::relu());
}

} // namespace

TEST_CASE("heaviside boundary ownership") {
    const Activation h = Activation::heaviside();
    CHECK(h(0.0) == 1.0);
    CHECK(h(-1e-300) == 0.0);
    CHECK(h(1e-300) == 1.0);
    CHECK(h(-3.0) == 0.0);
    CHECK(h(2.0) == 1.0);
    CHECK(h.max_degree() == 0);
    CHECK(h.piece_count() == 2);
}

TEST_CASE("activation pieces evaluate by Horner, breakpoints owned right") {
    // three pieces: x^2 on (-inf,0), 1+x on [0,1), 5 on [1,inf)
    const Activation a({0.0, 1.0}, {{0.0, 0.0, 1.0}, {1.0, 1.0}, {5.0}});
    CHECK(a(-2.0) == 4.0);
    CHECK(a(0.0) == 1.0);  // right piece owns the breakpoint
    CHECK(a(0.5) == 1.5);
    CHECK(a(1.0) == 5.0);
    CHECK(a.max_degree() == 2);
    CHECK_THROWS_AS(Activation({1.0, 0.0}, {{0.0}, {0.0}, {0.0}}), ValidationError);
    CHECK_THROWS_AS(Activation({}, {{1.0}}), ValidationError);
}

TEST_CASE("single heaviside neuron computes sigma(x)") {
    // input 0 -> hidden 1 -> output 2
    Network net(Architecture(1, {{0, 1}, {1, 2}}), {1.0, 1.0, 0.0, 0.0},
                Activation::heaviside());
    CHECK(net.evaluate({0.0}) == 1.0);
    CHECK(net.evaluate({-0.5}) == 0.0);
    CHECK(net.evaluate({0.5}) == 1.0);
}

TEST_CASE("all-zero weights give the zero function") {
    Network net = small_relu_net(std::vector<double>(13, 0.0));
    for (std::uint64_t i = 0; i < 20; ++i) {
        const std::vector<double> x = {rng::uniform(7, 2 * i, -3, 3),
                                       rng::uniform(7, 2 * i + 1, -3, 3)};
        CHECK(net.evaluate(x) == 0.0);
    }
}

TEST_CASE("relu net encodes max(0, x1+x2-1)") {
    // one hidden relu neuron; the other two disconnected from the result
    std::vector<double> w(13, 0.0);
    // canonical edge order: (0,2),(1,2),(0,3),(1,3),(0,4),(1,4),(2,5),(3,5),(4,5)
    w[0] = 1.0; // 0->2
    w[1] = 1.0; // 1->2
    w[6] = 1.0; // 2->5
    // biases by node id: 2,3,4,5
    w[9] = -1.0; // bias of node 2
    Network net = small_relu_net(w);
    CHECK(net.evaluate({1.0, 1.0}) == 1.0);
    CHECK(net.evaluate({0.25, 0.25}) == 0.0);
    CHECK(net.evaluate({0.75, 0.75}) == doctest::Approx(0.5));
}

TEST_CASE("weight count: fully connected one-hidden-layer example") {
    std::vector<std::pair<int, int>> edges;
    for (int in = 0; in < 2; ++in)
        for (int h = 2; h < 5; ++h) edges.emplace_back(in, h);
    for (int h = 2; h < 5; ++h) edges.emplace_back(h, 5);
    const Architecture arch(2, edges);
    CHECK(arch.weight_count() == 13); // 6 + 3 edges, 3 + 1 biases
    CHECK(arch.depth() == 2);
}

TEST_CASE("weight count: single-edge passthrough") {
    const Architecture arch(1, {{0, 1}});
    CHECK(arch.weight_count() == 2); // 1 edge + 1 bias
    CHECK(arch.depth() == 1);
}

TEST_CASE("layer recomputation reproduces stored layers on random skip DAGs") {
    for (std::uint64_t trial = 0; trial < 40; ++trial) {
        const std::uint64_t seed = 1000 + trial;
        const int d = 1 + static_cast<int>(rng::below(seed, 0, 3));
        const int hidden_layers = 1 + static_cast<int>(rng::below(seed, 1, 3));
        std::vector<std::vector<int>> layers(static_cast<std::size_t>(hidden_layers) + 2);
        int next_id = 0;
        for (int j = 0; j < d; ++j) layers[0].push_back(next_id++);
        for (int l = 1; l <= hidden_layers; ++l)
            for (std::uint64_t k = 0; k <= rng::below(seed, 100 + static_cast<std::uint64_t>(l), 3);
                 ++k)
                layers[static_cast<std::size_t>(l)].push_back(next_id++);
        layers.back().push_back(next_id++);

        std::vector<std::pair<int, int>> edges;
        std::uint64_t ctr = 1000;
        for (std::size_t l = 1; l < layers.size(); ++l)
            for (int v : layers[l]) {
                // mandatory predecessor in the previous layer
                const auto& prev = layers[l - 1];
                edges.emplace_back(prev[rng::below(seed, ctr++, prev.size())], v);
                // random extra predecessors from any earlier layer (skips)
                for (std::size_t e = 0; e < l; ++e) {
                    const auto& src = layers[e];
                    if (rng::below(seed, ctr++, 2) == 0) {
                        const int u = src[rng::below(seed, ctr++, src.size())];
                        if (std::find(edges.begin(), edges.end(), std::make_pair(u, v)) ==
                            edges.end())
                            edges.emplace_back(u, v);
                    }
                }
            }
        // every non-output node needs a successor: wire strays to the next layer
        for (std::size_t l = 0; l + 1 < layers.size(); ++l)
            for (int v : layers[l]) {
                bool has_succ = false;
                for (const auto& [from, to] : edges) has_succ |= from == v;
                if (!has_succ) {
                    const auto& next = layers[l + 1];
                    const int w = next[rng::below(seed, ctr++, next.size())];
                    if (std::find(edges.begin(), edges.end(), std::make_pair(v, w)) == edges.end())
                        edges.emplace_back(v, w);
                }
            }
        CHECK_NOTHROW(Architecture(d, layers, edges)); // validates recomputation
        CHECK(derive_layers(d, edges) == Architecture(d, edges).layers());
    }
}

TEST_CASE("serialize round-trips a 13-weight relu net byte-for-byte") {
    std::vector<double> w(13);
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] = rng::uniform(0x5e71a1ULL, i, -2.0, 2.0);
    const Network net = small_relu_net(w);
    const std::string text = to_json(net);
    const Network back = network_from_json(text);
    CHECK(to_json(back) == text);
    CHECK(back.weights() == net.weights());
    for (std::uint64_t i = 0; i < 10; ++i) {
        const std::vector<double> x = {rng::uniform(3, 2 * i, -2, 2),
                                       rng::uniform(3, 2 * i + 1, -2, 2)};
        CHECK(back.evaluate(x) == net.evaluate(x));
    }
}

TEST_CASE("deserialization rejects broken invariants") {
    SUBCASE("cycle") {
        const std::string cyclic = R"({"d":1,"layers":[[0],[1],[2]],
            "edges":[[0,1],[1,2],[2,1]],"weights":[1,1,1,0,0],
            "activation":{"breakpoints":[0],"pieces":[[0],[1]]}})";
        CHECK_THROWS_WITH_AS(static_cast<void>(network_from_json(cyclic)),
                             doctest::Contains("acyclicity"), ValidationError);
    }
    SUBCASE("two outputs") {
        const std::string two_sinks = R"({"d":1,"layers":[[0],[1,2]],
            "edges":[[0,1],[0,2]],"weights":[1,1,0,0],
            "activation":{"breakpoints":[0],"pieces":[[0],[1]]}})";
        CHECK_THROWS_WITH_AS(static_cast<void>(network_from_json(two_sinks)),
                             doctest::Contains("single output"), ValidationError);
    }
    SUBCASE("layer mismatch") {
        const std::string wrong_layers = R"({"d":1,"layers":[[0],[1,2],[3]],
            "edges":[[0,1],[0,2],[1,3],[2,3]],"weights":[1,1,1,1,0,0,0],
            "activation":{"breakpoints":[0],"pieces":[[0],[1]]}})";
        // node 2 only feeds node 3 but is declared in layer 1 together with 1;
        // recomputation agrees here, so craft a genuinely wrong assignment
        CHECK_NOTHROW(static_cast<void>(network_from_json(wrong_layers)));
        const std::string bad = R"({"d":1,"layers":[[0],[1],[2],[3]],
            "edges":[[0,1],[0,2],[1,3],[2,3]],"weights":[1,1,1,1,0,0,0],
            "activation":{"breakpoints":[0],"pieces":[[0],[1]]}})";
        CHECK_THROWS_AS(static_cast<void>(network_from_json(bad)), ValidationError);
    }
    SUBCASE("malformed json") {
        CHECK_THROWS_AS(static_cast<void>(network_from_json("{\"d\":1,")), ParseError);
    }
    SUBCASE("weight vector length must match the slot count") {
        const std::string short_weights = R"({"d":1,"layers":[[0],[1]],
            "edges":[[0,1]],"weights":[1.0],
            "activation":{"breakpoints":[0],"pieces":[[0],[1]]}})";
        CHECK_THROWS_WITH_AS(static_cast<void>(network_from_json(short_weights)),
                             doctest::Contains("weight"), ValidationError);
    }
}

TEST_CASE("evaluate rejects bad inputs") {
    Network net = small_relu_net(std::vector<double>(13, 0.5));
    CHECK_THROWS_AS(net.evaluate({1.0}), ValidationError);
    CHECK_THROWS_AS(net.evaluate({1.0, std::nan("")}), NumericError);
    std::vector<double> w(13, 0.0);
    w[3] = std::nan("");
    CHECK_THROWS_AS(small_relu_net(w), NumericError);
}
