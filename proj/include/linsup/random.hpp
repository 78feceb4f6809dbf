#ifndef LINSUP_RANDOM_HPP
#define LINSUP_RANDOM_HPP

#include <cstdint>
#include <random>
#include <stdexcept>

namespace linsup {

/// The one pseudorandom engine used everywhere in the library.
///
/// std::mt19937_64 has a stream fixed by the C++ standard, so seeds give the
/// same numbers on every conforming toolchain. The standard distributions do
/// not have that guarantee, which is why the samplers below map raw 64-bit
/// outputs to reals and integers by hand.
using Engine = std::mt19937_64;

/// Uniform real strictly inside (0, 1), with 53 bits of resolution.
inline double uniform_open01(Engine& rng)
{
    constexpr double scale = 1.0 / 9007199254740992.0; // 2^-53
    return (static_cast<double>(rng() >> 11) + 0.5) * scale;
}

/// Uniform real on the open interval (lo, hi).
inline double uniform_open(Engine& rng, double lo, double hi)
{
    if (!(lo < hi))
        throw std::invalid_argument("uniform_open: empty interval");
    for (;;) {
        const double v = lo + (hi - lo) * uniform_open01(rng);
        // rounding can land on an endpoint for wide ranges
        if (v > lo && v < hi)
            return v;
    }
}

/// Uniform integer on the closed interval [lo, hi], by rejection so that
/// every value is exactly equally likely.
inline std::uint64_t uniform_int(Engine& rng, std::uint64_t lo, std::uint64_t hi)
{
    if (lo > hi)
        throw std::invalid_argument("uniform_int: lo > hi");
    const std::uint64_t span = hi - lo;
    if (span == 0)
        return lo;
    if (span == UINT64_MAX)
        return rng();
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % range + 1) % range;
    for (;;) {
        const std::uint64_t r = rng();
        if (r <= limit)
            return lo + r % range;
    }
}

} // namespace linsup

#endif // LINSUP_RANDOM_HPP
