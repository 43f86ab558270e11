#ifndef LPAPPROX_CUBES_HPP
#define LPAPPROX_CUBES_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lpapprox/errors.hpp"

namespace lpapprox {

/// Axis-aligned box with per-face membership. Face j < d is the lower face
/// of axis j, face d + j the upper face of axis j; a face that "belongs"
/// includes its boundary points.
struct Cube {
    std::vector<double> lo;
    std::vector<double> hi;
    std::vector<bool> faces_belong; // size 2d: lower faces first, then upper

    Cube() = default;
    Cube(std::vector<double> lo_, std::vector<double> hi_, std::vector<bool> faces);

    /// Half-open [lo, hi): lower faces belong, upper faces do not.
    static Cube half_open(std::vector<double> lo_, std::vector<double> hi_);

    int dim() const { return static_cast<int>(lo.size()); }
    bool contains(std::span<const double> x) const;
    double volume() const;
    std::vector<double> corner(unsigned mask) const;  // bit j set -> hi on axis j
    std::vector<double> face_midpoint(int face) const;
};

/// True iff some point satisfies both cubes' membership predicates
/// (membership flags included; exact interval arithmetic, no sampling).
bool cubes_overlap(const Cube& a, const Cube& b);

/// f(x) = sum_i value_i * 1_{C_i}(x), zero outside every cube.
/// Cubes must be pairwise disjoint counting membership flags.
struct PiecewiseConstantFn {
    std::vector<Cube> cubes;
    std::vector<double> values;

    PiecewiseConstantFn() = default;
    PiecewiseConstantFn(std::vector<Cube> cubes_, std::vector<double> values_);

    int dim() const { return cubes.empty() ? 0 : cubes[0].dim(); }
    std::size_t piece_count() const { return cubes.size(); }

    double operator()(std::span<const double> x) const;
    double operator()(const std::vector<double>& x) const {
        return (*this)(std::span<const double>(x));
    }

    /// Index of the overlapping pair, if any.
    std::optional<std::pair<std::size_t, std::size_t>> find_overlap() const;
    void require_disjoint() const;
};

/// JSON form: {"d":..,"cubes":[{"lo":[..],"hi":[..],"faces_belong":[..]}],"values":[..]}
std::string to_json(const PiecewiseConstantFn& fn);
PiecewiseConstantFn piecewise_from_json(const std::string& text);

} // namespace lpapprox

#endif
