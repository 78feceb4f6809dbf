#ifndef LINSUP_ORACLE_HPP
#define LINSUP_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

#include "problem.hpp"
#include "vector_ops.hpp"

namespace linsup {

/// Largest I*J accepted by the least-squares oracle.
inline constexpr std::size_t oracle_max_entries = 10000;

class NonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OracleResult {
    Vector minimizer;
    double objective_value = 0.0;
    double gradient_norm = 0.0;
    std::size_t iterations = 0;
};

/// Weighted sum of squared distances to the half-spaces,
///   f(x) = sum_i w_i ((<a^i,x> - b_i)_+)^2 / |a^i|^2.
inline double weighted_ls_value(const Problem& p, std::span<const double> w,
                                std::span<const double> x)
{
    double f = 0.0;
    for (std::size_t i = 0; i < p.rows(); ++i) {
        const double e = std::max(dot(p.row(i), x) - p.b()[i], 0.0);
        f += w[i] * e * e / p.row_norms_sq()[i];
    }
    return f;
}

inline Vector weighted_ls_gradient(const Problem& p, std::span<const double> w,
                                   std::span<const double> x)
{
    Vector g(x.size(), 0.0);
    for (std::size_t i = 0; i < p.rows(); ++i) {
        const double e = dot(p.row(i), x) - p.b()[i];
        if (e > 0.0)
            axpy(2.0 * w[i] * e / p.row_norms_sq()[i], p.row(i), g);
    }
    return g;
}

inline Vector uniform_weights(std::size_t rows)
{
    return Vector(rows, 1.0 / static_cast<double>(rows));
}

/// Minimizes the weighted least-squares infeasibility of Ax <= b (no
/// orthant constraint) by Nesterov-accelerated gradient descent with
/// backtracking on the Lipschitz estimate and function-value restarts.
///
/// Stops once |grad f(x)| <= tol * (1 + |x|). Throws NonConvergence after
/// 10^6 gradient steps.
inline OracleResult least_squares_proximity_min(const Problem& p, std::span<const double> weights,
                                                Vector x0, double tol)
{
    if (p.rows() * p.cols() > oracle_max_entries)
        throw std::invalid_argument("least_squares_proximity_min: instance has "
                                    + std::to_string(p.rows() * p.cols())
                                    + " matrix entries, oracle limit is "
                                    + std::to_string(oracle_max_entries));
    if (weights.size() != p.rows())
        throw std::invalid_argument("least_squares_proximity_min: weights must have I entries");
    if (x0.size() != p.cols())
        throw std::invalid_argument("least_squares_proximity_min: x0 must have J entries");
    if (!(tol > 0.0))
        throw std::invalid_argument("least_squares_proximity_min: tol must be positive");

    constexpr std::size_t max_steps = 1000000;

    auto f = [&](std::span<const double> x) { return weighted_ls_value(p, weights, x); };
    auto grad = [&](std::span<const double> x) { return weighted_ls_gradient(p, weights, x); };

    // Hessian of f is 2 sum_i w_i a^i a^iT / |a^i|^2 on the active set, so
    // 2 sum_i w_i bounds the gradient's Lipschitz constant.
    double weight_sum = 0.0;
    for (double w : weights)
        weight_sum += w;
    const double lipschitz_max = std::max(2.0 * weight_sum, 1e-300);

    Vector x = std::move(x0);
    Vector y = x;
    double t = 1.0;
    double lipschitz = lipschitz_max / 64.0;
    const std::size_t n = x.size();
    Vector x_next(n);

    for (std::size_t it = 0; it < max_steps; ++it) {
        const Vector gx = grad(x);
        const double gnorm = norm2(gx);
        if (gnorm <= tol * (1.0 + norm2(x))) {
            const double fx = f(x);
            return {std::move(x), fx, gnorm, it};
        }

        const Vector gy = grad(y);
        const double fy = f(y);
        const double gy_sq = dot(gy, gy);
        for (;;) {
            for (std::size_t j = 0; j < n; ++j)
                x_next[j] = y[j] - gy[j] / lipschitz;
            if (lipschitz >= lipschitz_max || f(x_next) <= fy - 0.5 * gy_sq / lipschitz)
                break;
            lipschitz = std::min(2.0 * lipschitz, lipschitz_max);
        }

        // gradient restart: drop momentum when the step opposes descent
        double progress = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            progress += gy[j] * (x_next[j] - x[j]);

        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        const double mom = progress > 0.0 ? 0.0 : (t - 1.0) / t_next;
        t = progress > 0.0 ? 1.0 : t_next;
        for (std::size_t j = 0; j < n; ++j)
            y[j] = x_next[j] + mom * (x_next[j] - x[j]);
        std::swap(x, x_next);
    }
    throw NonConvergence("least_squares_proximity_min: no convergence within 10^6 steps");
}

} // namespace linsup

#endif // LINSUP_ORACLE_HPP
