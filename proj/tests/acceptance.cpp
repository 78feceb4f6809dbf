// Acceptance suite: runs every exit criterion of the project and prints one
// PASS/FAIL line per criterion. Exit status is nonzero if any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <sstream>
#include <string>
#include <vector>

#include "linsup/linsup.hpp"

using namespace linsup;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const Outcome& o)
{
    std::printf("[%s] %d. %s: %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass)
        ++failures;
}

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Vector random_vector(Engine& rng, std::size_t n, double lo, double hi)
{
    Vector v(n);
    for (auto& x : v)
        x = uniform_open(rng, lo, hi);
    return v;
}

// ---------------------------------------------------------------------------

Outcome projection_correctness()
{
    const auto t0 = Clock::now();
    Engine rng(1001);
    int bad = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t n = 2 + uniform_int(rng, 0, 48);
        Vector a = random_vector(rng, n, -1.0, 1.0);
        const double b = uniform_open(rng, -10.0, 10.0);
        const Vector z = random_vector(rng, n, -10.0, 10.0);
        Vector c(n, 0.0);
        c[0] = 1.0;
        const Problem p(1, n, a, {b}, c);
        const Vector once = project_halfspace(z, p, 0);
        const Vector twice = project_halfspace(once, p, 0);
        const bool idempotent = distance2(once, twice) <= 1e-9 * (1.0 + norm2(once));
        const bool inside = dot(a, once) <= b + 1e-9 * (1.0 + std::abs(b));
        Vector d(n);
        for (std::size_t j = 0; j < n; ++j)
            d[j] = z[j] - once[j];
        Vector ortho = d;
        axpy(-dot(d, a) / dot(a, a), a, ortho);
        const bool parallel = norm2(ortho) <= 1e-9 * (1.0 + norm2(d));
        if (!(idempotent && inside && parallel))
            ++bad;
    }
    const double secs = seconds_since(t0);
    return {bad == 0 && secs < 5.0,
            std::to_string(bad) + " violations in 10000 pairs, " + fmt("%.2f s (limit 5 s)", secs)};
}

Outcome oracle_equivalence(std::vector<Problem>& generated)
{
    const auto t0 = Clock::now();
    Engine rng(2002);
    double worst = -1e300;
    int bad = 0;
    for (int trial = 0; trial < 20; ++trial) {
        GeneratorSpec g;
        g.pair_count = 1 + uniform_int(rng, 0, 9); // I <= 20
        g.cols = 1 + uniform_int(rng, 0, 9);       // J <= 10
        g.seed = 5000 + static_cast<std::uint64_t>(trial);
        generated.push_back(generate_infeasible(g));
        const Problem& p = generated.back();
        const VerifyReport r = verify_cimmino_limit(p, CimminoConfig{}, Vector(p.cols(), 10.0));
        const double rel = r.gap / (1.0 + r.f_oracle);
        worst = std::max(worst, rel);
        if (!r.within_tolerance)
            ++bad;
    }
    const double secs = seconds_since(t0);
    return {bad == 0 && secs < 60.0,
            std::to_string(bad) + "/20 instances outside tolerance; worst (f_cim - f_orc)/(1+f_orc) = "
                + fmt("%.3e", worst) + " (limit 1e-3); " + fmt("%.2f s (limit 60 s)", secs)};
}

struct EnsembleRun {
    std::uint64_t seed = 0;
    RunResult sup;
    RunResult base;
    double max_beta_total = 0.0;
    bool first_beta_is_one = false;
    std::size_t first_budget_breach_sweep = 0; // 0 = never
};

EnsembleRun run_member(const Problem& p, std::uint64_t seed)
{
    EnsembleRun m;
    m.seed = seed;
    SolverConfig cfg; // lambda 1.99, N 20, alpha 0.99, start 10*1, tol 1e-4, cap 50000
    cfg.seed = seed;
    const double budget = 1.0 / (1.0 - cfg.alpha);
    bool first = true;
    m.sup = run_linsup(p, cfg, [&](std::size_t k, std::size_t, double beta, double total) {
        if (first) {
            m.first_beta_is_one = beta == 1.0;
            first = false;
        }
        m.max_beta_total = std::max(m.max_beta_total, total);
        if (total > budget && m.first_budget_breach_sweep == 0)
            m.first_budget_breach_sweep = k + 1;
    });
    m.base = run_baseline(p, cfg);
    return m;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string csv_body(const std::string& csv)
{
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line))
        if (line.empty() || line[0] != '#')
            out += line + "\n";
    return out;
}

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(LINSUP_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome cli_determinism()
{
    const fs::path dir = fs::temp_directory_path() / "linsup_acceptance_determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string d = dir.string();
    if (run_cli("generate --pairs 125 --cols 200 --seed 1 --out " + d + "/p.txt") != 0)
        return {false, "generate failed"};
    const std::string run = "run --problem " + d + "/p.txt --mode both --seed 1 --tol 1e-4"
                            " --alpha 0.99 --n-perturb 20 --lambda 1.99 --max-sweeps 50000"
                            " --init-scale 10 --out ";
    const int rc1 = run_cli(run + d + "/first");
    const int rc2 = run_cli(run + d + "/second");
    bool same = true;
    std::size_t bytes = 0;
    for (const char* f : {"linsup.csv", "baseline.csv"}) {
        const std::string a = read_file(d + "/first/" + f);
        const std::string b = read_file(d + "/second/" + f);
        same = same && !a.empty() && a == b && csv_body(a) == csv_body(b);
        bytes += csv_body(a).size();
    }
    fs::remove_all(dir);
    return {rc1 == 0 && rc2 == 0 && same,
            std::string("exit codes ") + std::to_string(rc1) + "/" + std::to_string(rc2) + ", "
                + (same ? "byte-identical" : "DIFFERENT") + " CSV bodies (" + std::to_string(bytes)
                + " bytes)"};
}

Outcome proximity_gradient_check()
{
    GeneratorSpec g;
    g.pair_count = 20;
    g.cols = 15;
    g.seed = 31;
    const Problem p = generate_infeasible(g);
    Engine rng(3003);
    int checked = 0, bad = 0;
    double worst = 0.0;
    while (checked < 100) {
        const Vector x = random_vector(rng, p.cols(), -30.0, 30.0);
        bool near_kink = false;
        for (std::size_t i = 0; i < p.rows(); ++i)
            near_kink = near_kink || std::abs(dot(p.row(i), x) - p.b()[i]) < 1e-6;
        for (double v : x)
            near_kink = near_kink || std::abs(v) < 1e-6;
        if (near_kink)
            continue;
        const Vector grad = proximity_gradient(x, p);
        for (std::size_t j = 0; j < p.cols(); ++j) {
            const double h = 1e-6;
            Vector xp = x, xm = x;
            xp[j] += h;
            xm[j] -= h;
            const double fd = (proximity(xp, p) - proximity(xm, p)) / (2.0 * h);
            const double rel = std::abs(grad[j] - fd) / std::max(1.0, std::abs(fd));
            worst = std::max(worst, rel);
            if (rel > 1e-5)
                ++bad;
        }
        ++checked;
    }
    return {bad == 0, "100 points, worst relative error " + fmt("%.2e", worst) + " (limit 1e-5)"};
}

} // namespace

int main()
{
    const auto start = Clock::now();
    std::vector<Problem> generated;
    std::vector<std::size_t> generated_pairs;

    report(1, "projection correctness", projection_correctness());

    report(2, "Cimmino limit equals least-squares oracle", oracle_equivalence(generated));
    for (const auto& p : generated)
        generated_pairs.push_back(p.rows() / 2);

    // desk-scale ensemble shared by criteria 3-6
    const auto t_ens = Clock::now();
    std::vector<Problem> desk;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        GeneratorSpec g; // pairs 125, cols 200, default ranges
        g.seed = seed;
        desk.push_back(generate_infeasible(g));
        generated.push_back(desk.back());
        generated_pairs.push_back(g.pair_count);
    }
    const unsigned threads = threads_from_env();
    std::vector<EnsembleRun> runs(5);
    if (threads >= 2) {
        std::vector<std::future<EnsembleRun>> fut;
        for (std::size_t s = 0; s < 5; ++s)
            fut.push_back(std::async(std::launch::async, run_member, std::cref(desk[s]), s + 1));
        for (std::size_t s = 0; s < 5; ++s)
            runs[s] = fut[s].get();
    } else {
        for (std::size_t s = 0; s < 5; ++s)
            runs[s] = run_member(desk[s], s + 1);
    }
    const double ens_secs = seconds_since(t_ens);

    {
        bool ok = true;
        std::string detail;
        for (const auto& r : runs) {
            ok = ok && r.first_beta_is_one && r.first_budget_breach_sweep == 0;
            detail += "seed " + std::to_string(r.seed) + ": max sum beta " + fmt("%.3f", r.max_beta_total)
                + (r.first_budget_breach_sweep
                       ? " (exceeds 100 at sweep " + std::to_string(r.first_budget_breach_sweep) + ")"
                       : "")
                + (r.first_beta_is_one ? "" : " first beta != 1") + "; ";
        }
        detail += "bound 1/(1-alpha) = 100, first beta = 1 "
            + std::string(std::all_of(runs.begin(), runs.end(),
                                      [](const EnsembleRun& r) { return r.first_beta_is_one; })
                              ? "on all runs"
                              : "NOT on all runs");
        report(3, "summable step-size budget", {ok, detail});
    }

    {
        bool ok = ens_secs < 600.0;
        std::string detail;
        for (const auto& r : runs) {
            const double fs_ = r.sup.trace.back().objective;
            const double fb = r.base.trace.back().objective;
            const bool conv = r.sup.termination == Termination::Converged
                && r.base.termination == Termination::Converged && r.sup.sweeps_run <= 50000
                && r.base.sweeps_run <= 50000;
            ok = ok && conv && fs_ < fb;
            detail += "seed " + std::to_string(r.seed) + ": " + fmt("%.4f", fs_) + " vs " + fmt("%.4f", fb)
                + " (" + std::to_string(r.sup.sweeps_run) + "/" + std::to_string(r.base.sweeps_run)
                + " sweeps" + (conv ? "" : ", NOT converged") + "); ";
        }
        detail += fmt("ensemble %.1f s (limit 600 s)", ens_secs);
        report(4, "LinSup final objective below baseline", {ok, detail});
    }

    {
        bool ok = true;
        std::string detail;
        for (const auto& r : runs) {
            const double ps = r.sup.trace.back().proximity;
            const double pb = r.base.trace.back().proximity;
            ok = ok && pb <= ps;
            detail += "seed " + std::to_string(r.seed) + ": baseline " + fmt("%.4f", pb)
                + (pb <= ps ? " <= " : " > ") + "LinSup " + fmt("%.4f", ps) + "; ";
        }
        report(5, "baseline final proximity not above LinSup", {ok, detail});
    }

    {
        bool ok = true;
        std::string detail;
        for (const auto& r : runs) {
            double lo = 1e300, hi = -1e300, sum = 0.0;
            for (const auto& t : r.base.trace) {
                lo = std::min(lo, t.objective);
                hi = std::max(hi, t.objective);
                sum += t.objective;
            }
            const double mean = sum / static_cast<double>(r.base.trace.size());
            const double need = 1e-6 * (1.0 + std::abs(mean));
            ok = ok && (hi - lo) > need;
            detail += "seed " + std::to_string(r.seed) + ": range " + fmt("%.4g", hi - lo) + "; ";
        }
        report(6, "baseline objective trace crosses level sets", {ok, detail});
    }

    report(7, "run command determinism", cli_determinism());

    report(8, "proximity gradient vs finite differences", proximity_gradient_check());

    {
        bool ok = true;
        std::size_t total = 0;
        for (std::size_t k = 0; k < generated.size(); ++k) {
            const std::size_t certified = count_certified_pairs(generated[k], generated_pairs[k]);
            ok = ok && certified == generated_pairs[k];
            total += generated_pairs[k];
        }
        report(9, "infeasibility certificate",
               {ok, std::to_string(generated.size()) + " generated instances, " + std::to_string(total)
                        + " row pairs, every pair sums to 0 <= -gap < 0"});
    }

    std::printf("%d criteria failed; total %.1f s\n", failures, seconds_since(start));
    return failures == 0 ? 0 : 1;
}
