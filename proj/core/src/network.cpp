#include "lpapprox/network.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <unordered_map>

#include <json.hpp>

namespace lpapprox {

// ---------------------------------------------------------------- Activation

Activation::Activation(std::vector<double> breakpoints,
                       std::vector<std::vector<double>> piece_coeffs)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(piece_coeffs)) {
    if (pieces_.size() < 2)
        throw ValidationError("activation: needs K >= 2 pieces");
    if (breakpoints_.size() + 1 != pieces_.size())
        throw ValidationError("activation: piece count must be breakpoint count + 1");
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
        if (!(breakpoints_[i] < breakpoints_[i + 1]))
            throw ValidationError("activation: breakpoints must be strictly increasing");
    for (double t : breakpoints_)
        if (!std::isfinite(t)) throw NumericError("activation: non-finite breakpoint");
    for (const auto& coeffs : pieces_) {
        if (coeffs.empty())
            throw ValidationError("activation: empty coefficient list");
        for (double c : coeffs)
            if (!std::isfinite(c)) throw NumericError("activation: non-finite coefficient");
        max_degree_ = std::max(max_degree_, static_cast<int>(coeffs.size()) - 1);
    }
}

Activation Activation::heaviside() {
    return Activation({0.0}, {{0.0}, {1.0}});
}

Activation Activation::relu() {
    return Activation({0.0}, {{0.0}, {0.0, 1.0}});
}

std::size_t Activation::piece_index(double x) const {
    // Breakpoints belong to their right-hand piece: count t_i <= x.
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    return static_cast<std::size_t>(it - breakpoints_.begin());
}

double Activation::operator()(double x) const {
    const auto& c = pieces_[piece_index(x)];
    double v = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) // Horner
        v = v * x + c[k];
    return v;
}

// -------------------------------------------------------------- Architecture

std::vector<std::vector<int>> derive_layers(int input_count,
                                            const std::vector<std::pair<int, int>>& edges) {
    if (input_count < 1) throw ValidationError("architecture: input count must be positive");

    std::set<int> nodes;
    std::map<int, std::vector<int>> preds;
    std::map<int, int> out_degree;
    std::set<std::pair<int, int>> seen;
    for (const auto& [from, to] : edges) {
        if (from < 0 || to < 0) throw ValidationError("architecture: negative node id");
        if (from == to) throw ValidationError("architecture: acyclicity (self-loop)");
        if (!seen.insert({from, to}).second)
            throw ValidationError("architecture: duplicate edge");
        nodes.insert(from);
        nodes.insert(to);
        preds[to].push_back(from);
        out_degree[from]++;
    }

    std::vector<int> inputs, sinks;
    for (int v : nodes) {
        if (!preds.count(v)) inputs.push_back(v);
        if (!out_degree.count(v)) sinks.push_back(v);
    }

    // layer(v) = 1 + max over predecessors; iterate in a topological order
    // obtained by Kahn's algorithm. Cycle detection comes before the
    // shape checks so cyclic inputs are reported as such.
    std::map<int, int> remaining;
    for (const auto& [v, ps] : preds) remaining[v] = static_cast<int>(ps.size());
    std::vector<int> ready = inputs;
    std::map<int, int> layer_of;
    for (int v : inputs) layer_of[v] = 0;
    std::map<int, std::vector<int>> succs;
    for (const auto& [from, to] : edges) succs[from].push_back(to);

    std::size_t processed = 0;
    while (!ready.empty()) {
        int v = ready.back();
        ready.pop_back();
        ++processed;
        for (int w : succs[v]) {
            layer_of[w] = std::max(layer_of[w], layer_of[v] + 1);
            if (--remaining[w] == 0) ready.push_back(w);
        }
    }
    if (processed != nodes.size())
        throw ValidationError("architecture: acyclicity (cycle through remaining nodes)");

    if (static_cast<int>(inputs.size()) != input_count)
        throw ValidationError("architecture: input count (expected " +
                              std::to_string(input_count) + " in-degree-0 nodes, found " +
                              std::to_string(inputs.size()) + ")");
    if (sinks.size() != 1)
        throw ValidationError("architecture: single output (found " +
                              std::to_string(sinks.size()) + " out-degree-0 nodes)");

    int depth = 0;
    for (const auto& [v, l] : layer_of) depth = std::max(depth, l);
    if (depth < 1) throw ValidationError("architecture: depth must be >= 1");

    std::vector<std::vector<int>> layers(static_cast<std::size_t>(depth) + 1);
    for (const auto& [v, l] : layer_of) layers[static_cast<std::size_t>(l)].push_back(v);
    for (auto& layer : layers) {
        if (layer.empty()) throw ValidationError("architecture: empty layer");
        std::sort(layer.begin(), layer.end());
    }
    if (layers.back().size() != 1)
        throw ValidationError("architecture: single output (last layer has " +
                              std::to_string(layers.back().size()) + " nodes)");
    return layers;
}

Architecture::Architecture(int input_count, std::vector<std::pair<int, int>> edges,
                           bool output_bias)
    : d_(input_count), edges_(std::move(edges)), output_bias_(output_bias) {
    layers_ = derive_layers(d_, edges_);
    validate_and_index();
}

Architecture::Architecture(int input_count, std::vector<std::vector<int>> layers,
                           std::vector<std::pair<int, int>> edges, bool output_bias)
    : d_(input_count), layers_(std::move(layers)), edges_(std::move(edges)),
      output_bias_(output_bias) {
    for (auto& layer : layers_) std::sort(layer.begin(), layer.end());
    auto derived = derive_layers(d_, edges_);
    if (derived != layers_)
        throw ValidationError("architecture: layer assignment does not match the recursion "
                              "recomputed from the edge list");
    validate_and_index();
}

void Architecture::validate_and_index() {
    output_node_ = layers_.back().front();
    canonical_edges_ = edges_;
    std::sort(canonical_edges_.begin(), canonical_edges_.end(),
              [](const auto& a, const auto& b) {
                  return a.second != b.second ? a.second < b.second : a.first < b.first;
              });
    bias_nodes_.clear();
    for (std::size_t l = 1; l < layers_.size(); ++l)
        for (int v : layers_[l]) bias_nodes_.push_back(v);
    std::sort(bias_nodes_.begin(), bias_nodes_.end());
    if (!output_bias_)
        bias_nodes_.erase(std::remove(bias_nodes_.begin(), bias_nodes_.end(), output_node_),
                          bias_nodes_.end());
}

std::size_t Architecture::node_count() const {
    std::size_t n = 0;
    for (const auto& layer : layers_) n += layer.size();
    return n;
}

std::size_t Architecture::weight_count() const {
    return edges_.size() + bias_nodes_.size();
}

// ------------------------------------------------------------------- Network

Network::Network(Architecture arch, std::vector<double> weights, Activation activation)
    : arch_(std::move(arch)), weights_(std::move(weights)), activation_(std::move(activation)) {
    if (weights_.size() != arch_.weight_count())
        throw ValidationError("network: weight vector length " + std::to_string(weights_.size()) +
                              " != weight slot count " + std::to_string(arch_.weight_count()));
    for (double w : weights_)
        if (!std::isfinite(w)) throw NumericError("network: non-finite weight");

    // Dense node indexing in evaluation order (layer, then id).
    std::unordered_map<int, std::size_t> index;
    std::vector<int> dense_to_id;
    for (const auto& layer : arch_.layers())
        for (int v : layer) {
            index[v] = dense_to_id.size();
            dense_to_id.push_back(v);
        }

    std::unordered_map<int, std::size_t> bias_slot;
    {
        std::size_t slot = arch_.canonical_edges().size();
        for (int v : arch_.bias_nodes()) bias_slot[v] = slot++;
    }

    plan_.assign(dense_to_id.size(), {});
    for (std::size_t slot = 0; slot < arch_.canonical_edges().size(); ++slot) {
        const auto& [from, to] = arch_.canonical_edges()[slot];
        plan_[index.at(to)].in.emplace_back(index.at(from), slot);
    }
    const int out = arch_.output_node();
    for (std::size_t l = 1; l < arch_.layers().size(); ++l)
        for (int v : arch_.layers()[l]) {
            auto& p = plan_[index.at(v)];
            if (auto it = bias_slot.find(v); it != bias_slot.end()) p.bias_slot = it->second;
            p.apply_activation = (v != out);
            order_.push_back(index.at(v));
        }

    input_index_.clear();
    for (int v : arch_.layers().front()) input_index_.push_back(index.at(v));
    output_index_ = index.at(out);
}

double Network::evaluate(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != arch_.input_count())
        throw ValidationError("evaluate: input has dimension " + std::to_string(x.size()) +
                              ", network expects " + std::to_string(arch_.input_count()));
    for (double v : x)
        if (!std::isfinite(v)) throw NumericError("evaluate: non-finite input coordinate");

    std::vector<double> value(plan_.size(), 0.0);
    for (std::size_t j = 0; j < input_index_.size(); ++j) value[input_index_[j]] = x[j];
    for (std::size_t node : order_) {
        const NodePlan& p = plan_[node];
        double acc = (p.bias_slot != SIZE_MAX) ? weights_[p.bias_slot] : 0.0;
        for (const auto& [pred, slot] : p.in) acc += weights_[slot] * value[pred];
        value[node] = p.apply_activation ? activation_(acc) : acc;
    }
    return value[output_index_];
}

// ---------------------------------------------------------------------- JSON

namespace {

void append_double(std::string& out, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

template <typename Seq, typename Emit>
void append_list(std::string& out, const Seq& seq, Emit emit) {
    out += '[';
    bool first = true;
    for (const auto& item : seq) {
        if (!first) out += ',';
        first = false;
        emit(out, item);
    }
    out += ']';
}

} // namespace

std::string to_json(const Network& net) {
    const Architecture& a = net.architecture();
    std::string out = "{\"d\":" + std::to_string(a.input_count());
    out += ",\"layers\":";
    append_list(out, a.layers(), [](std::string& o, const std::vector<int>& layer) {
        append_list(o, layer, [](std::string& oo, int v) { oo += std::to_string(v); });
    });
    out += ",\"edges\":";
    append_list(out, a.canonical_edges(), [](std::string& o, const std::pair<int, int>& e) {
        o += '[' + std::to_string(e.first) + ',' + std::to_string(e.second) + ']';
    });
    out += ",\"weights\":";
    append_list(out, net.weights(), [](std::string& o, double w) { append_double(o, w); });
    out += ",\"activation\":{\"breakpoints\":";
    append_list(out, net.activation().breakpoints(),
                [](std::string& o, double t) { append_double(o, t); });
    out += ",\"pieces\":";
    append_list(out, net.activation().pieces(), [](std::string& o, const std::vector<double>& c) {
        append_list(o, c, [](std::string& oo, double v) { append_double(oo, v); });
    });
    out += '}';
    if (!a.output_bias()) out += ",\"output_bias\":false";
    out += '}';
    return out;
}

Network network_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("network json: " + std::string(e.what()));
    }
    try {
        const int d = j.at("d").get<int>();
        auto layers = j.at("layers").get<std::vector<std::vector<int>>>();
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2)
                throw ValidationError("network json: edge must be [from,to]");
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        auto weights = j.at("weights").get<std::vector<double>>();
        const auto& act = j.at("activation");
        Activation activation(act.at("breakpoints").get<std::vector<double>>(),
                              act.at("pieces").get<std::vector<std::vector<double>>>());
        const bool output_bias = j.value("output_bias", true);
        Architecture arch(d, std::move(layers), std::move(edges), output_bias);
        return Network(std::move(arch), std::move(weights), std::move(activation));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("network json: " + std::string(e.what()));
    }
}

} // namespace lpapprox
