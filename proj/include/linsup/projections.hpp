#ifndef LINSUP_PROJECTIONS_HPP
#define LINSUP_PROJECTIONS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "problem.hpp"
#include "vector_ops.hpp"

namespace linsup {

/// Relaxation and weights of the simultaneous projection sweep.
///
/// An empty `weights` means uniform weights 1/I.
struct CimminoConfig {
    double lambda = 1.99;
    std::optional<Vector> weights;
    double eps_low = 1e-6;
    double eps_high = 1e-6;

    void validate(std::size_t rows) const
    {
        if (!(eps_low > 0.0) || !(eps_high > 0.0))
            throw std::invalid_argument("CimminoConfig: epsilons must be positive");
        if (!(lambda >= eps_low && lambda <= 2.0 - eps_high))
            throw std::invalid_argument("CimminoConfig: lambda " + std::to_string(lambda)
                                        + " outside [eps1, 2 - eps2]");
        if (!weights)
            return;
        if (weights->size() != rows)
            throw std::invalid_argument("CimminoConfig: weights must have I entries");
        double sum = 0.0;
        for (double w : *weights) {
            if (!(w >= 0.0) || !std::isfinite(w))
                throw std::invalid_argument("CimminoConfig: weights must be nonnegative");
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("CimminoConfig: weights must sum to 1");
    }

    double weight(std::size_t i, std::size_t rows) const
    {
        return weights ? (*weights)[i] : 1.0 / static_cast<double>(rows);
    }
};

/// Orthogonal projection of z onto the half-space <a^i, x> <= b_i.
///
/// Points on the boundary take the identity branch.
inline Vector project_halfspace(std::span<const double> z, const Problem& p, std::size_t i)
{
    Vector out(z.begin(), z.end());
    const auto a = p.row(i);
    const double excess = dot(a, z) - p.b()[i];
    if (excess > 0.0)
        axpy(-excess / p.row_norms_sq()[i], a, out);
    return out;
}

/// One relaxed simultaneous projection step
///   x + lambda * sum_i w_i (P_i(x) - x).
///
/// Each displacement P_i(x) - x is a multiple of a^i, so only the scalar
/// coefficients are formed and the rows are accumulated in index order.
/// The summation order is fixed, which keeps results bitwise reproducible.
inline Vector cimmino_step(std::span<const double> x, const Problem& p, const CimminoConfig& cfg)
{
    Vector out(x.begin(), x.end());
    const std::size_t rows = p.rows();
    Vector displacement(x.size(), 0.0);
    bool moved = false;
    for (std::size_t i = 0; i < rows; ++i) {
        const auto a = p.row(i);
        const double excess = dot(a, x) - p.b()[i];
        if (excess > 0.0) {
            const double w = cfg.weight(i, rows);
            if (w == 0.0)
                continue;
            axpy(-w * excess / p.row_norms_sq()[i], a, displacement);
            moved = true;
        }
    }
    if (moved)
        axpy(cfg.lambda, displacement, out);
    return out;
}

/// Projection onto the nonnegative orthant.
inline Vector clamp_nonnegative(std::span<const double> x)
{
    Vector out(x.begin(), x.end());
    for (auto& v : out)
        v = std::max(v, 0.0);
    return out;
}

/// Basic feasibility-seeking operator: a Cimmino step followed by the
/// orthant clamp.
inline Vector feasibility_operator(std::span<const double> x, const Problem& p,
                                   const CimminoConfig& cfg)
{
    return clamp_nonnegative(cimmino_step(x, p, cfg));
}

} // namespace linsup

#endif // LINSUP_PROJECTIONS_HPP
