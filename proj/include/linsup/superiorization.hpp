#ifndef LINSUP_SUPERIORIZATION_HPP
#define LINSUP_SUPERIORIZATION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "problem.hpp"
#include "projections.hpp"
#include "proximity.hpp"
#include "random.hpp"
#include "vector_ops.hpp"

namespace linsup {

/// Parameters of a superiorized (or baseline) run.
struct SolverConfig {
    double alpha = 0.99;               ///< kernel; step sizes are alpha^ell
    std::size_t n_perturbations = 20;  ///< objective-reduction steps per sweep
    CimminoConfig cimmino{};
    double stop_tol = 1e-4;
    std::size_t max_sweeps = 50000;
    std::optional<Vector> initial_point; ///< overrides init_scale * 1 when set
    double init_scale = 10.0;
    std::uint64_t seed = 0;             ///< drives the ell randomization only

    /// Checks everything that does not depend on the problem dimensions.
    void validate_parameters() const
    {
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::invalid_argument("SolverConfig: alpha must lie in (0, 1)");
        if (n_perturbations < 1)
            throw std::invalid_argument("SolverConfig: n_perturbations must be >= 1");
        if (!(stop_tol > 0.0) || !std::isfinite(stop_tol))
            throw std::invalid_argument("SolverConfig: stop_tol must be positive");
        if (max_sweeps < 1)
            throw std::invalid_argument("SolverConfig: max_sweeps must be >= 1");
        if (!std::isfinite(init_scale))
            throw std::invalid_argument("SolverConfig: init_scale must be finite");
        if (!(cimmino.lambda >= cimmino.eps_low && cimmino.lambda <= 2.0 - cimmino.eps_high))
            throw std::invalid_argument("SolverConfig: lambda outside [eps1, 2 - eps2]");
    }

    void validate(const Problem& p) const
    {
        validate_parameters();
        if (initial_point
            && (initial_point->size() != p.cols() || !all_finite(*initial_point)))
            throw std::invalid_argument("SolverConfig: initial point must be finite with J entries");
        cimmino.validate(p.rows());
    }

    Vector start(std::size_t cols) const
    {
        return initial_point ? *initial_point : Vector(cols, init_scale);
    }
};

struct SuperiorizationState {
    std::size_t k = 0;       ///< completed sweeps
    std::uint64_t ell = 0;   ///< step-size exponent, advanced once per perturbation
    std::uint64_t ell_start = 0; ///< exponent drawn at the start of the last sweep
    std::uint64_t ell_prev = 0; ///< exponent left over by the previous sweep
    Vector y;
    Engine rng;
    double beta_total = 0.0; ///< sum of all step sizes used so far
};

struct SweepTrace {
    std::size_t sweep = 0;
    double objective = 0.0;
    double proximity = 0.0;
    double rel_change = 0.0;
    std::uint64_t ell_start = 0;
    double beta_total = 0.0;
};

enum class Termination { Converged, SweepCapReached };

inline const char* to_string(Termination t)
{
    return t == Termination::Converged ? "Converged" : "SweepCapReached";
}

struct RunResult {
    Vector final_point;
    std::size_t sweeps_run = 0;
    Termination termination = Termination::SweepCapReached;
    std::vector<SweepTrace> trace;
    double beta_total = 0.0;
};

/// Optional observer called after every perturbation with
/// (sweep index, inner index n, beta, running sum of betas).
using PerturbationHook = std::function<void(std::size_t, std::size_t, double, double)>;

/// Starting exponent of a sweep: uniform integer between the sweep index
/// and the exponent left by the previous sweep, bounds inclusive.
inline std::uint64_t next_ell(std::uint64_t k, std::uint64_t ell_prev, Engine& rng)
{
    return uniform_int(rng, std::min(k, ell_prev), std::max(k, ell_prev));
}

/// Objective-reduction step along the normalized negative cost direction.
inline Vector perturb(std::span<const double> y, std::span<const double> c, double beta)
{
    const double cn = norm2(c);
    if (!(cn > 0.0))
        throw std::invalid_argument("perturb: objective vector is zero");
    Vector out(y.begin(), y.end());
    axpy(-beta / cn, c, out);
    return out;
}

struct StopDecision {
    bool stop = false;
    double rel_change = 0.0;
};

/// |y_curr - y_prev| / |y_curr| <= tol, falling back to the absolute change
/// when y_curr is the zero vector.
inline StopDecision stopping_check(std::span<const double> y_curr, std::span<const double> y_prev,
                                   double tol)
{
    const double diff = distance2(y_curr, y_prev);
    const double scale = norm2(y_curr);
    const double rel = scale > 0.0 ? diff / scale : diff;
    return {rel <= tol, rel};
}

inline SuperiorizationState initial_state(const Problem& p, const SolverConfig& cfg)
{
    SuperiorizationState s;
    s.y = cfg.start(p.cols());
    s.rng.seed(cfg.seed);
    return s;
}

namespace detail {

inline SuperiorizationState sweep_with(SuperiorizationState state, const Problem& p,
                                       const SolverConfig& cfg, std::size_t perturbations,
                                       const PerturbationHook& hook)
{
    state.ell = next_ell(state.k, state.ell_prev, state.rng);
    state.ell_start = state.ell;
    Vector z = std::move(state.y);
    for (std::size_t n = 0; n < perturbations; ++n) {
        const double beta = std::pow(cfg.alpha, static_cast<double>(state.ell));
        z = perturb(z, p.c(), beta);
        state.beta_total += beta;
        if (hook)
            hook(state.k, n, beta, state.beta_total);
        ++state.ell;
    }
    state.ell_prev = state.ell;
    state.y = feasibility_operator(z, p, cfg.cimmino);
    ++state.k;
    return state;
}

/// Superiorized driver with an arbitrary perturbation count; zero reduces
/// it to the plain feasibility-seeking iteration.
inline RunResult run_superiorized(const Problem& p, const SolverConfig& cfg,
                                  std::size_t perturbations, const PerturbationHook& hook = {})
{
    RunResult result;
    SuperiorizationState state = initial_state(p, cfg);
    for (std::size_t sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
        Vector prev = state.y;
        state = sweep_with(std::move(state), p, cfg, perturbations, hook);
        const StopDecision d = stopping_check(state.y, prev, cfg.stop_tol);
        const Evaluation e = evaluate(state.y, p);
        result.trace.push_back({state.k, e.objective, e.proximity, d.rel_change,
                                state.ell_start, state.beta_total});
        if (d.stop) {
            result.termination = Termination::Converged;
            break;
        }
    }
    result.final_point = std::move(state.y);
    result.sweeps_run = state.k;
    result.beta_total = state.beta_total;
    return result;
}

} // namespace detail

/// One outer iteration: draw the starting exponent, take N perturbation
/// steps with beta = alpha^ell (ell incremented after each), then apply the
/// clamped Cimmino operator.
inline SuperiorizationState linsup_sweep(SuperiorizationState state, const Problem& p,
                                         const SolverConfig& cfg)
{
    return detail::sweep_with(std::move(state), p, cfg, cfg.n_perturbations, {});
}

/// Superiorized feasibility seeking: repeats linsup_sweep from the initial
/// point until the relative change between sweeps drops to stop_tol or
/// max_sweeps is reached.
inline RunResult run_linsup(const Problem& p, const SolverConfig& cfg,
                            const PerturbationHook& hook = {})
{
    cfg.validate(p);
    if (!(norm2(p.c()) > 0.0))
        throw std::invalid_argument("run_linsup: objective vector c is zero");
    return detail::run_superiorized(p, cfg, cfg.n_perturbations, hook);
}

/// Unsuperiorized iteration of the clamped Cimmino operator under the same
/// stopping rule. alpha, n_perturbations and seed are ignored.
inline RunResult run_baseline(const Problem& p, const SolverConfig& cfg)
{
    cfg.validate(p);
    RunResult result;
    Vector y = cfg.start(p.cols());
    for (std::size_t sweep = 1; sweep <= cfg.max_sweeps; ++sweep) {
        Vector next = feasibility_operator(y, p, cfg.cimmino);
        const StopDecision d = stopping_check(next, y, cfg.stop_tol);
        y = std::move(next);
        const Evaluation e = evaluate(y, p);
        result.trace.push_back({sweep, e.objective, e.proximity, d.rel_change, 0, 0.0});
        result.sweeps_run = sweep;
        if (d.stop) {
            result.termination = Termination::Converged;
            break;
        }
    }
    result.final_point = std::move(y);
    return result;
}

/// Plain Cimmino iteration without the orthant clamp. Its limit on an
/// inconsistent system is a weighted least-squares point of the half-spaces.
inline RunResult run_unclamped_cimmino(const Problem& p, const CimminoConfig& cimmino,
                                       Vector x0, double tol, std::size_t max_sweeps)
{
    cimmino.validate(p.rows());
    RunResult result;
    Vector x = std::move(x0);
    for (std::size_t sweep = 1; sweep <= max_sweeps; ++sweep) {
        Vector next = cimmino_step(x, p, cimmino);
        const StopDecision d = stopping_check(next, x, tol);
        x = std::move(next);
        result.sweeps_run = sweep;
        if (d.stop) {
            result.termination = Termination::Converged;
            break;
        }
    }
    result.final_point = std::move(x);
    return result;
}

} // namespace linsup

#endif // LINSUP_SUPERIORIZATION_HPP
