#ifndef LINSUP_PROXIMITY_HPP
#define LINSUP_PROXIMITY_HPP

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <span>

#include "problem.hpp"
#include "vector_ops.hpp"

namespace linsup {

struct Evaluation {
    double proximity = 0.0;
    double objective = 0.0;
};

/// Constraint-violation measure
///   (1/2I) sum_i ((<a^i,x> - b_i)_+)^2 / |a^i|^2  +  (1/2J) sum_j ((-x_j)_+)^2.
///
/// Zero exactly on {Ax <= b, x >= 0}.
inline double proximity(std::span<const double> x, const Problem& p)
{
    assert(x.size() == p.cols());
    double rows_term = 0.0;
    for (std::size_t i = 0; i < p.rows(); ++i) {
        const double excess = std::max(dot(p.row(i), x) - p.b()[i], 0.0);
        rows_term += excess * excess / p.row_norms_sq()[i];
    }
    double orthant_term = 0.0;
    for (double v : x) {
        const double neg = std::max(-v, 0.0);
        orthant_term += neg * neg;
    }
    return rows_term / (2.0 * static_cast<double>(p.rows()))
        + orthant_term / (2.0 * static_cast<double>(p.cols()));
}

/// Gradient of proximity(); defined everywhere since the function is C^1.
inline Vector proximity_gradient(std::span<const double> x, const Problem& p)
{
    Vector g(x.size(), 0.0);
    const double inv_rows = 1.0 / static_cast<double>(p.rows());
    for (std::size_t i = 0; i < p.rows(); ++i) {
        const double excess = dot(p.row(i), x) - p.b()[i];
        if (excess > 0.0)
            axpy(inv_rows * excess / p.row_norms_sq()[i], p.row(i), g);
    }
    const double inv_cols = 1.0 / static_cast<double>(p.cols());
    for (std::size_t j = 0; j < x.size(); ++j)
        if (x[j] < 0.0)
            g[j] += inv_cols * x[j];
    return g;
}

inline double objective(std::span<const double> x, std::span<const double> c)
{
    return dot(c, x);
}

inline Evaluation evaluate(std::span<const double> x, const Problem& p)
{
    return {proximity(x, p), objective(x, p.c())};
}

} // namespace linsup

#endif // LINSUP_PROXIMITY_HPP
