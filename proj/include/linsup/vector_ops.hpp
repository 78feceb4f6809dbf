#ifndef LINSUP_VECTOR_OPS_HPP
#define LINSUP_VECTOR_OPS_HPP

#include <cassert>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace linsup {

using Vector = std::vector<double>;

/// Dense inner product, accumulated left to right.
inline double dot(std::span<const double> a, std::span<const double> b)
{
    assert(a.size() == b.size());
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
        s += a[j] * b[j];
    return s;
}

inline double norm2(std::span<const double> a)
{
    return std::sqrt(dot(a, a));
}

inline double distance2(std::span<const double> a, std::span<const double> b)
{
    assert(a.size() == b.size());
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        s += d * d;
    }
    return std::sqrt(s);
}

// y += alpha * x
inline void axpy(double alpha, std::span<const double> x, std::span<double> y)
{
    assert(x.size() == y.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        y[j] += alpha * x[j];
}

inline bool all_finite(std::span<const double> a)
{
    for (double v : a)
        if (!std::isfinite(v))
            return false;
    return true;
}

} // namespace linsup

#endif // LINSUP_VECTOR_OPS_HPP
