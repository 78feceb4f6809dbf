// Command-line front end: generate instances, run the superiorized and
// baseline solvers, plot traces, and check the Cimmino limit against the
// least-squares oracle.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "linsup/linsup.hpp"

namespace {

void add_solver_options(CLI::App* cmd, linsup::SolverConfig& cfg)
{
    cmd->add_option("--seed", cfg.seed, "seed for the step-size exponent randomization");
    cmd->add_option("--tol", cfg.stop_tol, "relative-change stopping tolerance")
        ->capture_default_str();
    cmd->add_option("--alpha", cfg.alpha, "kernel of the step sizes alpha^ell, in (0,1)")
        ->capture_default_str();
    cmd->add_option("--n-perturb", cfg.n_perturbations, "perturbation steps per sweep")
        ->capture_default_str();
    cmd->add_option("--lambda", cfg.cimmino.lambda, "Cimmino relaxation parameter")
        ->capture_default_str();
    cmd->add_option("--max-sweeps", cfg.max_sweeps, "sweep cap")->capture_default_str();
    cmd->add_option("--init-scale", cfg.init_scale, "initial point is init-scale * (1,...,1)")
        ->capture_default_str();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"LinSup: linear superiorization over Cimmino feasibility seeking"};
    app.set_version_flag("--version", LINSUP_VERSION);
    app.require_subcommand(1);

    linsup::GeneratorSpec gen;
    std::string gen_out = "problem.txt";
    auto* generate = app.add_subcommand("generate", "write a random infeasible instance");
    generate->add_option("--pairs", gen.pair_count, "rows in the primal block (I = 2*pairs)")
        ->capture_default_str();
    generate->add_option("--cols", gen.cols, "number of variables J")->capture_default_str();
    generate->add_option("--seed", gen.seed, "generator seed")->capture_default_str();
    generate->add_option("--out", gen_out, "output problem file")->capture_default_str();

    linsup::ExperimentSpec exp;
    std::string mode = "both";
    auto* run = app.add_subcommand("run", "run LinSup and/or the unsuperiorized baseline");
    run->add_option("--problem", exp.problem_path, "problem file")->required();
    run->add_option("--mode", mode, "linsup | baseline | both")
        ->check(CLI::IsMember({"linsup", "baseline", "both"}))
        ->capture_default_str();
    run->add_option("--out", exp.output_dir, "output directory for trace CSVs")
        ->capture_default_str();
    run->add_flag("--timestamp", exp.timestamp, "embed a UTC timestamp in the CSV comments");
    add_solver_options(run, exp.solver);

    std::optional<std::string> plot_linsup, plot_baseline;
    std::string plot_out = ".";
    auto* plot = app.add_subcommand("plot", "render SVG charts from trace CSVs");
    plot->add_option("--linsup", plot_linsup, "LinSup trace CSV");
    plot->add_option("--baseline", plot_baseline, "baseline trace CSV");
    plot->add_option("--out", plot_out, "output directory for SVG files")->capture_default_str();

    std::string verify_problem;
    std::size_t verify_max = linsup::oracle_max_entries;
    linsup::SolverConfig verify_cfg;
    auto* verify = app.add_subcommand(
        "verify", "compare the unclamped Cimmino limit with the least-squares oracle");
    verify->add_option("--problem", verify_problem, "problem file")->required();
    verify->add_option("--max-size", verify_max, "largest accepted I*J")->capture_default_str();
    verify->add_option("--lambda", verify_cfg.cimmino.lambda, "Cimmino relaxation parameter")
        ->capture_default_str();
    verify->add_option("--init-scale", verify_cfg.init_scale, "Cimmino start is init-scale * 1")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? linsup::exit_ok : linsup::exit_validation;
    }

    if (*generate)
        return linsup::cmd_generate(gen, gen_out, std::cout);
    if (*run) {
        exp.mode = mode == "linsup"     ? linsup::RunMode::linsup
                 : mode == "baseline" ? linsup::RunMode::baseline
                                      : linsup::RunMode::both;
        exp.threads = linsup::threads_from_env();
        return linsup::cmd_run(exp, std::cout);
    }
    if (*plot)
        return linsup::cmd_plot(plot_linsup, plot_baseline, plot_out, std::cout);
    if (*verify)
        return linsup::cmd_verify(verify_problem, verify_cfg, verify_max, std::cout);
    return linsup::exit_validation;
}
