#include "lpapprox/dimension.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace lpapprox {

FiniteFunctionClass::FiniteFunctionClass(std::vector<std::vector<double>> rows,
                                         std::optional<std::pair<double, double>> declared_range,
                                         std::vector<std::string> labels)
    : point_labels(std::move(labels)), range(declared_range) {
    const std::size_t n = rows.empty() ? 0 : rows[0].size();
    for (const auto& row : rows) {
        if (row.size() != n)
            throw ValidationError("function class: ragged value matrix");
        for (double v : row)
            if (!std::isfinite(v)) throw NumericError("function class: non-finite value");
    }
    if (!point_labels.empty() && point_labels.size() != n)
        throw ValidationError("function class: label count != point count");
    if (range && !(range->first < range->second))
        throw ValidationError("function class: range needs a < b");
    std::set<std::vector<double>> seen;
    for (auto& row : rows) {
        if (seen.insert(row).second)
            values.push_back(std::move(row));
        else
            ++duplicates_removed;
    }
}

// ---------------------------------------------------------------------- JSON

std::string to_json(const FiniteFunctionClass& cls) {
    std::string out = "{\"points\":[";
    for (std::size_t i = 0; i < cls.n_points(); ++i) {
        if (i) out += ',';
        out += '"';
        out += cls.point_labels.empty() ? "p" + std::to_string(i) : cls.point_labels[i];
        out += '"';
    }
    out += "],\"values\":[";
    char buf[64];
    for (std::size_t i = 0; i < cls.values.size(); ++i) {
        if (i) out += ',';
        out += '[';
        for (std::size_t j = 0; j < cls.values[i].size(); ++j) {
            if (j) out += ',';
            std::snprintf(buf, sizeof buf, "%.17g", cls.values[i][j]);
            out += buf;
        }
        out += ']';
    }
    out += ']';
    if (cls.range) {
        std::snprintf(buf, sizeof buf, ",\"range\":[%.17g,%.17g]", cls.range->first,
                      cls.range->second);
        out += buf;
    }
    out += '}';
    return out;
}

FiniteFunctionClass function_class_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("function class json: " + std::string(e.what()));
    }
    try {
        std::vector<std::string> labels;
        if (j.contains("points"))
            for (const auto& p : j.at("points"))
                labels.push_back(p.is_string() ? p.get<std::string>() : p.dump());
        std::optional<std::pair<double, double>> range;
        if (j.contains("range")) {
            const auto r = j.at("range").get<std::vector<double>>();
            if (r.size() != 2) throw ValidationError("function class json: range needs [a,b]");
            range = std::make_pair(r[0], r[1]);
        }
        return FiniteFunctionClass(j.at("values").get<std::vector<std::vector<double>>>(), range,
                                   std::move(labels));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("function class json: " + std::string(e.what()));
    }
}

// ------------------------------------------------------------------- helpers

namespace {

// next k-combination of point indices; returns false when exhausted
bool next_combination(std::vector<std::size_t>& comb, std::size_t n) {
    const std::size_t k = comb.size();
    std::size_t i = k;
    while (i-- > 0) {
        if (comb[i] + (k - i) < n) {
            ++comb[i];
            for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
            return true;
        }
    }
    return false;
}

} // namespace

// --------------------------------------------------------------------- vc_dim

int vc_dim(const FiniteFunctionClass& cls, std::size_t max_points) {
    if (cls.n_points() > max_points)
        throw CapacityError("vc_dim: point set exceeds cap " + std::to_string(max_points));
    for (const auto& row : cls.values)
        for (double v : row)
            if (v != -1.0 && v != 1.0)
                throw DomainError("vc_dim: class must be {-1,+1}-valued");

    const std::size_t n = cls.n_points();
    const std::size_t fns = cls.n_functions();
    int best = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        if (fns < (std::size_t(1) << k)) break; // not enough functions for 2^k patterns
        bool found = false;
        std::vector<std::size_t> comb(k);
        for (std::size_t i = 0; i < k; ++i) comb[i] = i;
        do {
            std::unordered_set<std::uint32_t> patterns;
            for (const auto& row : cls.values) {
                std::uint32_t pat = 0;
                for (std::size_t i = 0; i < k; ++i)
                    if (row[comb[i]] > 0) pat |= (1u << i);
                patterns.insert(pat);
                if (patterns.size() == (std::size_t(1) << k)) {
                    found = true;
                    break;
                }
            }
        } while (!found && next_combination(comb, n));
        if (!found) break;
        best = static_cast<int>(k);
    }
    return best;
}

// ------------------------------------------------------ pseudo / fat search

namespace {

// Shattering test over a fixed point order. The search state is the full
// collection of pattern classes (one function set per pattern prefix):
// every point's witness level is a single global threshold splitting every
// class in the collection at once, exactly as in the definition, where one
// r serves every pattern.
class ShatterSearch {
public:
    ShatterSearch(const FiniteFunctionClass& cls, double gamma) : cls_(cls), gamma_(gamma) {}

    bool shatters(const std::vector<std::size_t>& points) {
        points_ = &points;
        memo_.assign(points.size(), {});
        cands_.clear();
        for (std::size_t pt : points) cands_.push_back(candidates(pt));
        const std::uint64_t all =
            cls_.n_functions() >= 64 ? ~std::uint64_t(0)
                                     : (std::uint64_t(1) << cls_.n_functions()) - 1;
        std::vector<std::uint64_t> collection{all};
        return rec(collection, 0);
    }

private:
    bool rec(std::vector<std::uint64_t>& collection, std::size_t depth) {
        if (depth == points_->size()) return true; // sets stay nonempty by construction
        // each pattern class must still cover 2^remaining disjoint patterns
        const std::size_t need = std::size_t(1) << (points_->size() - depth);
        for (std::uint64_t s : collection)
            if (static_cast<std::size_t>(std::popcount(s)) < need) return false;

        std::sort(collection.begin(), collection.end());
        if (auto it = memo_[depth].find(collection); it != memo_[depth].end()) return it->second;

        const std::size_t point = (*points_)[depth];
        bool ok = false;
        std::vector<std::uint64_t> next;
        for (double r : cands_[depth]) {
            next.clear();
            bool feasible = true;
            for (std::uint64_t set : collection) {
                std::uint64_t in = 0, out = 0;
                for (std::uint64_t rest = set; rest;) {
                    const int f = std::countr_zero(rest);
                    rest &= rest - 1;
                    const double v = cls_.values[static_cast<std::size_t>(f)][point];
                    if (gamma_ == 0.0) {
                        (v >= r ? in : out) |= std::uint64_t(1) << f;
                    } else {
                        if (v >= r + gamma_) in |= std::uint64_t(1) << f;
                        else if (v <= r - gamma_) out |= std::uint64_t(1) << f;
                        // values inside (r-gamma, r+gamma) serve neither side
                    }
                }
                if (!in || !out) {
                    feasible = false;
                    break;
                }
                next.push_back(in);
                next.push_back(out);
            }
            if (feasible && rec(next, depth + 1)) {
                ok = true;
                break;
            }
        }
        memo_[depth].emplace(collection, ok);
        return ok;
    }

    // Global witness candidates at a point: every achievable split of any
    // function subset is realized by a midpoint of consecutive distinct
    // values (plus guards); with a margin, by the critical levels v -+ gamma
    // and the midpoints between consecutive criticals.
    std::vector<double> candidates(std::size_t point) const {
        std::vector<double> vals;
        for (const auto& row : cls_.values) vals.push_back(row[point]);
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        std::vector<double> out;
        if (gamma_ == 0.0) {
            out.push_back(vals.front() - 1.0);
            for (std::size_t i = 0; i + 1 < vals.size(); ++i)
                out.push_back(0.5 * (vals[i] + vals[i + 1]));
            out.push_back(vals.back() + 1.0);
        } else {
            std::vector<double> crit;
            for (double v : vals) {
                crit.push_back(v - gamma_);
                crit.push_back(v + gamma_);
            }
            std::sort(crit.begin(), crit.end());
            crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
            out = crit;
            for (std::size_t i = 0; i + 1 < crit.size(); ++i)
                out.push_back(0.5 * (crit[i] + crit[i + 1]));
        }
        return out;
    }

    const FiniteFunctionClass& cls_;
    double gamma_;
    const std::vector<std::size_t>* points_ = nullptr;
    std::vector<std::vector<double>> cands_;
    std::vector<std::map<std::vector<std::uint64_t>, bool>> memo_; // per depth
};

DimResult shattering_dim(const FiniteFunctionClass& cls, double gamma, const SearchCaps& caps) {
    if (cls.n_points() > caps.max_points)
        throw CapacityError("shattering search: point set exceeds cap " +
                            std::to_string(caps.max_points));
    if (cls.n_functions() > caps.max_functions)
        throw CapacityError("shattering search: function count exceeds cap " +
                            std::to_string(caps.max_functions));
    if (cls.n_functions() == 0 || cls.n_points() == 0) return {0, true};

    ShatterSearch search(cls, gamma);
    const std::size_t n = cls.n_points();
    const int depth_cap = std::min<int>(caps.max_subset, static_cast<int>(n));
    int best = 0;
    for (int k = 1; k <= depth_cap; ++k) {
        if (cls.n_functions() < (std::size_t(1) << k)) break;
        bool found = false;
        std::vector<std::size_t> comb(static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < comb.size(); ++i) comb[i] = i;
        do {
            if (search.shatters(comb)) {
                found = true;
                break;
            }
        } while (next_combination(comb, n));
        if (!found) return {best, true};
        best = k;
    }
    // exact unless the cap was the binding limit and larger sets exist
    const bool capped = best == caps.max_subset && static_cast<std::size_t>(best) < n &&
                        cls.n_functions() >= (std::size_t(1) << (best + 1));
    return {best, !capped};
}

} // namespace

DimResult pseudo_dim(const FiniteFunctionClass& cls, const SearchCaps& caps) {
    return shattering_dim(cls, 0.0, caps);
}

DimResult fat_dim(const FiniteFunctionClass& cls, double gamma, const SearchCaps& caps) {
    if (!(gamma > 0.0)) throw DomainError("fat_dim: gamma must be positive");
    return shattering_dim(cls, gamma, caps);
}

// ------------------------------------------------------------ packing number

namespace {

// exact maximum independent set, branch and bound on <= 64 vertices
int max_independent_set(const std::vector<std::uint64_t>& adj, std::uint64_t candidates,
                        int current, int& best) {
    if (candidates == 0) return current;
    if (current + std::popcount(candidates) <= best) return 0; // bound
    const int v = std::countr_zero(candidates);
    // branch: take v
    const int with_v = max_independent_set(
        adj, candidates & ~(adj[static_cast<std::size_t>(v)] | (std::uint64_t(1) << v)),
        current + 1, best);
    best = std::max(best, with_v);
    // branch: skip v
    const int without_v =
        max_independent_set(adj, candidates & ~(std::uint64_t(1) << v), current, best);
    best = std::max(best, without_v);
    return std::max(with_v, without_v);
}

} // namespace

PackingResult packing_number(const FiniteFunctionClass& cls, double eps, double p,
                             std::vector<double> weights, std::size_t exact_cap) {
    if (!(eps > 0.0)) throw DomainError("packing_number: eps must be positive");
    if (!(p >= 1.0)) throw DomainError("packing_number: p must be >= 1");
    const std::size_t n = cls.n_functions();
    if (n == 0) return {0, true};
    const std::size_t pts = cls.n_points();
    if (weights.empty()) weights.assign(pts, 1.0 / static_cast<double>(pts));
    if (weights.size() != pts)
        throw ValidationError("packing_number: weight count != point count");
    double wsum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw ValidationError("packing_number: negative weight");
        wsum += w;
    }
    if (std::fabs(wsum - 1.0) > 1e-9)
        throw ValidationError("packing_number: weights must sum to 1");

    auto dist = [&](std::size_t i, std::size_t j) {
        long double acc = 0.0L;
        for (std::size_t k = 0; k < pts; ++k) {
            const double diff = std::fabs(cls.values[i][k] - cls.values[j][k]);
            if (diff > 0.0) acc += weights[k] * std::pow(diff, p);
        }
        return static_cast<double>(std::pow(acc, 1.0L / static_cast<long double>(p)));
    };

    if (n <= 64 && n <= exact_cap) {
        std::vector<std::uint64_t> adj(n, 0); // edge = "too close to coexist"
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (!(dist(i, j) > eps)) {
                    adj[i] |= std::uint64_t(1) << j;
                    adj[j] |= std::uint64_t(1) << i;
                }
        int best = 0;
        const std::uint64_t all = n >= 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n) - 1;
        max_independent_set(adj, all, 0, best);
        return {best, true};
    }

    // deterministic greedy in row order: a lower bound, flagged as such
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < n; ++i) {
        bool far = true;
        for (std::size_t j : kept)
            if (!(dist(i, j) > eps)) {
                far = false;
                break;
            }
        if (far) kept.push_back(i);
    }
    return {static_cast<int>(kept.size()), false};
}

// ----------------------------------------------------------------- rescaling

FiniteFunctionClass rescale_class(const FiniteFunctionClass& cls, double a, double b) {
    if (!(a < b)) throw ValidationError("rescale_class: needs a < b");
    FiniteFunctionClass out = cls;
    for (auto& row : out.values)
        for (double& v : row) v = (v - a) / (b - a);
    if (out.range) out.range = std::make_pair((out.range->first - a) / (b - a),
                                              (out.range->second - a) / (b - a));
    return out;
}

FiniteFunctionClass clip_class(const FiniteFunctionClass& cls, double a, double b) {
    if (!(a < b)) throw ValidationError("clip_class: needs a < b");
    std::vector<std::vector<double>> rows = cls.values;
    for (auto& row : rows)
        for (double& v : row) v = std::min(std::max(a, v), b);
    return FiniteFunctionClass(std::move(rows), std::make_pair(a, b), cls.point_labels);
}

FiniteFunctionClass sign_class(const FiniteFunctionClass& cls, double threshold) {
    std::vector<std::vector<double>> rows = cls.values;
    for (auto& row : rows)
        for (double& v : row) v = v >= threshold ? 1.0 : -1.0;
    return FiniteFunctionClass(std::move(rows), std::make_pair(-1.0, 1.0), cls.point_labels);
}

bool packing_scale_identity_check(const FiniteFunctionClass& cls, double u, double a, double b,
                                  double p) {
    if (!(u > 0.0)) throw DomainError("packing_scale_identity_check: u must be positive");
    const PackingResult lhs = packing_number(rescale_class(cls, a, b), u / (b - a), p);
    const PackingResult rhs = packing_number(cls, u, p);
    return lhs.size == rhs.size && lhs.exact && rhs.exact;
}

} // namespace lpapprox
