#ifndef LINSUP_EXPERIMENT_HPP
#define LINSUP_EXPERIMENT_HPP

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <future>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "oracle.hpp"
#include "problem.hpp"
#include "superiorization.hpp"
#include "svg_plot.hpp"
#include "trace_io.hpp"
#include "version.hpp"

namespace linsup {

/// Process exit codes of the command-line front end.
enum ExitCode : int {
    exit_ok = 0,
    exit_verify_failed = 1,
    exit_validation = 2,
    exit_sweep_cap = 3,
    exit_io = 4,
};

enum class RunMode { linsup, baseline, both };

inline const char* to_string(RunMode m)
{
    switch (m) {
    case RunMode::linsup: return "linsup";
    case RunMode::baseline: return "baseline";
    default: return "both";
    }
}

/// Everything that determines the outcome of a `run`, echoed into trace
/// files as provenance.
struct ExperimentSpec {
    std::string problem_path;
    SolverConfig solver;
    RunMode mode = RunMode::both;
    bool record_negated_objective = true;
    std::string output_dir = ".";
    bool timestamp = false;
    unsigned threads = 1;

    std::vector<std::pair<std::string, std::string>> provenance(const Problem& p) const
    {
        auto r = [](double v) { return detail::real_text(v); };
        std::vector<std::pair<std::string, std::string>> out = {
            {"linsup_version", LINSUP_VERSION},
            {"problem", problem_path},
            {"rows", std::to_string(p.rows())},
            {"cols", std::to_string(p.cols())},
            {"mode", to_string(mode)},
            {"alpha", r(solver.alpha)},
            {"n_perturb", std::to_string(solver.n_perturbations)},
            {"lambda", r(solver.cimmino.lambda)},
            {"weights", solver.cimmino.weights ? "custom" : "uniform"},
            {"tol", r(solver.stop_tol)},
            {"max_sweeps", std::to_string(solver.max_sweeps)},
            {"init_scale", r(solver.init_scale)},
            {"seed", std::to_string(solver.seed)},
        };
        if (timestamp) {
            char buf[32];
            const std::time_t now = std::time(nullptr);
            std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
            out.emplace_back("timestamp", buf);
        }
        return out;
    }
};

/// Worker cap from LINSUP_THREADS (unset or invalid means 1).
inline unsigned threads_from_env()
{
    const char* v = std::getenv("LINSUP_THREADS");
    if (!v)
        return 1;
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    return (end != v && *end == '\0' && n >= 1) ? static_cast<unsigned>(n) : 1u;
}

inline int cmd_generate(const GeneratorSpec& spec, const std::string& out_path, std::ostream& log)
{
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        log << "error: " << e.what() << "\n";
        return exit_validation;
    }
    const Problem p = generate_infeasible(spec);
    try {
        save_problem(p, out_path);
    } catch (const IoError& e) {
        log << "error: " << e.what() << "\n";
        return exit_io;
    }
    const std::size_t certified = count_certified_pairs(p, spec.pair_count);
    log << "wrote " << out_path << ": I=" << p.rows() << " J=" << p.cols() << " seed=" << spec.seed
        << "\n"
        << "infeasibility certificate: " << certified << "/" << spec.pair_count
        << " row pairs sum to 0 <= -gap < 0\n";
    return exit_ok;
}

inline int cmd_run(const ExperimentSpec& spec, std::ostream& log)
{
    try {
        spec.solver.validate_parameters();
    } catch (const std::invalid_argument& e) {
        log << "error: " << e.what() << "\n";
        return exit_validation;
    }

    std::optional<Problem> loaded;
    try {
        loaded.emplace(load_problem(spec.problem_path));
    } catch (const IoError& e) {
        log << "error: " << e.what() << "\n";
        return exit_io;
    } catch (const FormatError& e) {
        log << "error: " << spec.problem_path << ": " << e.what() << "\n";
        return exit_io;
    }
    const Problem& p = *loaded;

    try {
        spec.solver.validate(p);
        if ((spec.mode != RunMode::baseline) && !(norm2(p.c()) > 0.0))
            throw std::invalid_argument("objective vector c is zero");
    } catch (const std::invalid_argument& e) {
        log << "error: " << e.what() << "\n";
        return exit_validation;
    }

    std::error_code ec;
    std::filesystem::create_directories(spec.output_dir, ec);
    if (ec) {
        log << "error: cannot create output directory '" << spec.output_dir << "'\n";
        return exit_io;
    }

    const bool want_sup = spec.mode != RunMode::baseline;
    const bool want_base = spec.mode != RunMode::linsup;
    std::optional<RunResult> sup, base;
    if (want_sup && want_base && spec.threads >= 2) {
        auto f = std::async(std::launch::async, [&] { return run_baseline(p, spec.solver); });
        sup = run_linsup(p, spec.solver);
        base = f.get();
    } else {
        if (want_sup)
            sup = run_linsup(p, spec.solver);
        if (want_base)
            base = run_baseline(p, spec.solver);
    }

    const auto prov = spec.provenance(p);
    int code = exit_ok;
    auto emit = [&](const char* name, const RunResult& r) {
        const auto path = (std::filesystem::path(spec.output_dir) / (std::string(name) + ".csv"))
                              .string();
        auto header = prov;
        header.emplace_back("trace", name);
        try {
            write_text_file(path, format_trace(header, r.trace));
        } catch (const IoError& e) {
            log << "error: " << e.what() << "\n";
            code = exit_io;
            return;
        }
        const auto& last = r.trace.back();
        log << name << ": " << to_string(r.termination) << " after " << r.sweeps_run
            << " sweeps; objective " << detail::real_text(last.objective) << ", proximity "
            << detail::real_text(last.proximity) << " -> " << path << "\n";
        if (r.termination == Termination::SweepCapReached && code == exit_ok)
            code = exit_sweep_cap;
    };
    if (sup)
        emit("linsup", *sup);
    if (base)
        emit("baseline", *base);
    return code;
}

/// Writes up to three charts into out_dir: objective.svg and proximity.svg
/// (both runs overlaid, need both traces) and objective_pair.svg (<c,x> and
/// <-c,x> along the baseline run, needs the baseline trace).
inline int cmd_plot(const std::optional<std::string>& linsup_csv,
                    const std::optional<std::string>& baseline_csv, const std::string& out_dir,
                    std::ostream& log)
{
    if (!linsup_csv && !baseline_csv) {
        log << "error: at least one trace is required\n";
        return exit_validation;
    }
    std::optional<TraceFile> sup, base;
    try {
        if (linsup_csv)
            sup = load_trace(*linsup_csv);
        if (baseline_csv)
            base = load_trace(*baseline_csv);
    } catch (const IoError& e) {
        log << "error: " << e.what() << "\n";
        return exit_io;
    } catch (const SchemaError& e) {
        log << "error: schema: " << e.what() << "\n";
        return exit_validation;
    }

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        log << "error: cannot create output directory '" << out_dir << "'\n";
        return exit_io;
    }

    auto column = [](const TraceFile& tf, auto member) {
        PlotSeries s;
        for (const auto& r : tf.rows) {
            s.x.push_back(static_cast<double>(r.sweep));
            s.y.push_back(r.*member);
        }
        return s;
    };
    auto write = [&](const std::string& name, const PlotSpec& ps,
                     const std::vector<PlotSeries>& series) {
        const auto path = (std::filesystem::path(out_dir) / name).string();
        write_text_file(path, render_line_chart(ps, series));
        log << "wrote " << path << "\n";
    };

    try {
        if (sup && base) {
            auto s1 = column(*sup, &TraceRow::objective);
            s1.label = "LinSup";
            s1.color = "#d62728";
            auto b1 = column(*base, &TraceRow::objective);
            b1.label = "Cimmino (unsuperiorized)";
            b1.color = "#1f77b4";
            write("objective.svg", {"Objective value <c,x>", "iteration sweep", "<c,x>"}, {s1, b1});

            auto s2 = column(*sup, &TraceRow::proximity);
            s2.label = "LinSup";
            s2.color = "#d62728";
            auto b2 = column(*base, &TraceRow::proximity);
            b2.label = "Cimmino (unsuperiorized)";
            b2.color = "#1f77b4";
            write("proximity.svg", {"Proximity function", "iteration sweep", "Pr(x)", true},
                  {s2, b2});
        } else {
            log << "notice: objective.svg and proximity.svg need both traces; skipped\n";
        }
        if (base) {
            auto pos = column(*base, &TraceRow::objective);
            pos.label = "<c,x>";
            pos.color = "#1f77b4";
            auto neg = column(*base, &TraceRow::neg_objective);
            neg.label = "<-c,x>";
            neg.color = "#2ca02c";
            write("objective_pair.svg",
                  {"Unsuperiorized Cimmino: <c,x> and <-c,x>", "iteration sweep", "value"},
                  {pos, neg});
        } else {
            log << "notice: objective_pair.svg needs the baseline trace; skipped\n";
        }
    } catch (const IoError& e) {
        log << "error: " << e.what() << "\n";
        return exit_io;
    }
    return exit_ok;
}

struct VerifyReport {
    double f_cimmino = 0.0;
    double f_oracle = 0.0;
    double gap = 0.0;
    double gradient_norm_cimmino = 0.0;
    std::size_t cimmino_sweeps = 0;
    bool cimmino_converged = false;
    bool within_tolerance = false;
};

/// Runs the unclamped Cimmino iteration to its limit and the independent
/// least-squares minimizer on the same instance, and compares f.
inline VerifyReport verify_cimmino_limit(const Problem& p, const CimminoConfig& cimmino,
                                         const Vector& start, double gap_tol = 1e-3,
                                         double cimmino_tol = 1e-12,
                                         std::size_t max_sweeps = 1000000,
                                         double oracle_tol = 1e-9)
{
    const Vector w = cimmino.weights ? *cimmino.weights : uniform_weights(p.rows());
    const RunResult c = run_unclamped_cimmino(p, cimmino, start, cimmino_tol, max_sweeps);
    const OracleResult o =
        least_squares_proximity_min(p, w, Vector(p.cols(), 0.0), oracle_tol);
    VerifyReport r;
    r.f_cimmino = weighted_ls_value(p, w, c.final_point);
    r.f_oracle = o.objective_value;
    r.gap = r.f_cimmino - r.f_oracle;
    r.gradient_norm_cimmino = norm2(weighted_ls_gradient(p, w, c.final_point));
    r.cimmino_sweeps = c.sweeps_run;
    r.cimmino_converged = c.termination == Termination::Converged;
    r.within_tolerance = r.gap <= gap_tol * (1.0 + r.f_oracle);
    return r;
}

inline int cmd_verify(const std::string& problem_path, const SolverConfig& solver,
                      std::size_t max_entries, std::ostream& log)
{
    std::optional<Problem> loaded;
    try {
        solver.validate_parameters();
        loaded.emplace(load_problem(problem_path));
        solver.validate(*loaded);
    } catch (const std::invalid_argument& e) {
        log << "error: " << e.what() << "\n";
        return exit_validation;
    } catch (const IoError& e) {
        log << "error: " << e.what() << "\n";
        return exit_io;
    } catch (const FormatError& e) {
        log << "error: " << problem_path << ": " << e.what() << "\n";
        return exit_io;
    }
    const Problem& p = *loaded;
    const std::size_t entries = p.rows() * p.cols();
    if (entries > std::min(max_entries, oracle_max_entries)) {
        log << "error: instance has I*J = " << entries << " matrix entries; the oracle accepts at most "
            << std::min(max_entries, oracle_max_entries)
            << ". Generate a smaller instance (e.g. --pairs 10 --cols 10).\n";
        return exit_validation;
    }
    VerifyReport r;
    try {
        r = verify_cimmino_limit(p, solver.cimmino, solver.start(p.cols()));
    } catch (const NonConvergence& e) {
        log << "error: " << e.what() << "\n";
        return exit_verify_failed;
    }
    log << "cimmino: " << (r.cimmino_converged ? "converged" : "sweep cap") << " after "
        << r.cimmino_sweeps << " sweeps, f = " << detail::real_text(r.f_cimmino)
        << ", |grad f| = " << detail::real_text(r.gradient_norm_cimmino) << "\n"
        << "oracle:  f = " << detail::real_text(r.f_oracle) << "\n"
        << "gap:     " << detail::real_text(r.gap) << " (limit 1e-3*(1+f) = "
        << detail::real_text(1e-3 * (1.0 + r.f_oracle)) << ") "
        << (r.within_tolerance ? "OK" : "FAILED") << "\n";
    return r.within_tolerance ? exit_ok : exit_verify_failed;
}

} // namespace linsup

#endif // LINSUP_EXPERIMENT_HPP
