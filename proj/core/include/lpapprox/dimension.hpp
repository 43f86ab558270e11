#ifndef LPAPPROX_DIMENSION_HPP
#define LPAPPROX_DIMENSION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpapprox/errors.hpp"

namespace lpapprox {

/// A finite class of real functions observed on a finite point set: one row
/// per function. Duplicate rows are removed on construction (count kept).
struct FiniteFunctionClass {
    std::vector<std::string> point_labels;            // optional, size n_points
    std::vector<std::vector<double>> values;          // [function][point]
    std::optional<std::pair<double, double>> range;   // declared [a,b]
    std::size_t duplicates_removed = 0;

    FiniteFunctionClass() = default;
    FiniteFunctionClass(std::vector<std::vector<double>> rows,
                        std::optional<std::pair<double, double>> declared_range = std::nullopt,
                        std::vector<std::string> labels = {});

    std::size_t n_points() const { return values.empty() ? point_labels.size() : values[0].size(); }
    std::size_t n_functions() const { return values.size(); }
};

/// JSON: {"points":[...], "values":[[...]], "range":[a,b]}
std::string to_json(const FiniteFunctionClass& cls);
FiniteFunctionClass function_class_from_json(const std::string& text);

struct SearchCaps {
    std::size_t max_points = 12;
    std::size_t max_functions = 64;
    int max_subset = 6; // fat / pseudo shattering search depth
};

struct DimResult {
    int value = 0;
    bool exact = true; // false when the subset-size cap was the binding limit
};

/// VC dimension of a {-1,+1}-valued class by exhaustive subset search
/// (points capped at 20). Returns 0 when no single point is shattered.
int vc_dim(const FiniteFunctionClass& cls, std::size_t max_points = 20);

/// Pseudo-dimension: largest pseudo-shattered subset (>= r inside the
/// pattern, < r outside). Witness levels are enumerated from midpoints of
/// consecutive distinct values per point plus below/above guards, which
/// realizes every achievable threshold pattern at that point.
DimResult pseudo_dim(const FiniteFunctionClass& cls, const SearchCaps& caps = {});

/// Fat-shattering dimension at margin gamma > 0 (>= r + gamma inside,
/// <= r - gamma outside). Non-increasing in gamma, bounded by pseudo_dim.
DimResult fat_dim(const FiniteFunctionClass& cls, double gamma, const SearchCaps& caps = {});

/// Largest subset of functions pairwise more than eps apart in the
/// empirical L^p(mu_n) norm given point weights (uniform when empty).
/// Exact branch-and-bound maximum independent set for <= `exact_cap`
/// functions, deterministic greedy lower bound beyond.
struct PackingResult {
    int size = 0;
    bool exact = true;
};
PackingResult packing_number(const FiniteFunctionClass& cls, double eps, double p,
                             std::vector<double> weights = {}, std::size_t exact_cap = 25);

/// Affine range maps used by the rescaling identities.
FiniteFunctionClass rescale_class(const FiniteFunctionClass& cls, double a, double b);
FiniteFunctionClass clip_class(const FiniteFunctionClass& cls, double a, double b);
/// Sign class 1_{v >= threshold} mapped to {-1,+1}.
FiniteFunctionClass sign_class(const FiniteFunctionClass& cls, double threshold = 0.0);

/// Rescaling identity for packing numbers: M(u/(b-a), rescaled) == M(u, G).
/// Always true; returning false indicates a defect.
bool packing_scale_identity_check(const FiniteFunctionClass& cls, double u, double a, double b,
                                  double p = 2.0);

} // namespace lpapprox

#endif
