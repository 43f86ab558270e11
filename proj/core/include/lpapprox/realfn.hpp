#ifndef LPAPPROX_REALFN_HPP
#define LPAPPROX_REALFN_HPP

#include <algorithm>
#include <functional>
#include <span>

namespace lpapprox {

using RealFn = std::function<double(std::span<const double>)>;

/// Pointwise truncation of g to [a, b].
inline RealFn clip(RealFn g, double a, double b) {
    return [g = std::move(g), a, b](std::span<const double> x) {
        return std::min(std::max(a, g(x)), b);
    };
}

} // namespace lpapprox

#endif
