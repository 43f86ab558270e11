#ifndef LPAPPROX_RNG_HPP
#define LPAPPROX_RNG_HPP

#include <cstdint>
#include <span>

namespace lpapprox {

// Counter-based pseudo-random numbers: every draw is a pure function of
// (seed, index), so results do not depend on how work is partitioned
// across threads and are identical across platforms.
namespace rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::uint64_t seed, std::uint64_t index) {
    return static_cast<double>(mix(seed, index) >> 11) * 0x1.0p-53;
}

// Uniform double in [lo, hi).
inline double uniform(std::uint64_t seed, std::uint64_t index, double lo, double hi) {
    return lo + (hi - lo) * uniform01(seed, index);
}

// Uniform integer in [0, n).
inline std::uint64_t below(std::uint64_t seed, std::uint64_t index, std::uint64_t n) {
    return mix(seed, index) % n;
}

// Fills `out` with a uniform point of [0,1)^d; `index` identifies the point,
// coordinates use sub-indices so consecutive points never share draws.
inline void uniform_point(std::uint64_t seed, std::uint64_t index, std::span<double> out) {
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = uniform01(seed, index * out.size() + j);
}

} // namespace rng
} // namespace lpapprox

#endif
