// Command-line interface: single-query solves, benchmark batches over the
// built-in problems, and 1-D solution profiles for plotting.

#include "hopflax/bench.hpp"
#include "hopflax/multistart.hpp"
#include "hopflax/picard.hpp"
#include "hopflax/problems.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using hopflax::Vector;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotConverged = 2;

std::vector<double> parse_reals(const std::string& text) {
    std::vector<double> values;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        size_t pos = 0;
        values.push_back(std::stod(item, &pos));
        if (pos != item.size()) throw std::invalid_argument("bad real '" + item + "'");
    }
    if (values.empty()) throw std::invalid_argument("empty list");
    return values;
}

std::vector<int> parse_ints(const std::string& text) {
    std::vector<int> values;
    for (double v : parse_reals(text)) values.push_back(static_cast<int>(v));
    return values;
}

std::pair<double, double> parse_range(const std::string& text) {
    const auto sep = text.find(':');
    if (sep == std::string::npos)
        throw std::invalid_argument("expected lo:hi, got '" + text + "'");
    return {std::stod(text.substr(0, sep)), std::stod(text.substr(sep + 1))};
}

std::string format_vector(const Vector& v, int max_shown = 8) {
    std::ostringstream out;
    out << '[';
    const int n = static_cast<int>(v.size());
    for (int i = 0; i < std::min(n, max_shown); ++i) {
        if (i) out << ", ";
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.12g", v[i]);
        out << buf;
    }
    if (n > max_shown) out << ", ... (" << n << " components)";
    out << ']';
    return out.str();
}

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

struct SolveArgs {
    std::string problem = "quadratic";
    int dim = 1;
    std::string x_text;
    double t = 0.0;
    int multi_init = 0;
    double alpha = 0.0;  // 0: automatic
    double tol = 1e-6;
    int max_iters = 1000;
    std::uint64_t seed = 0;
    bool json = false;
    bool origin_box = false;
};

int cmd_solve(const SolveArgs& args) {
    const hopflax::BuiltinProblem builtin =
        hopflax::make_problem(args.problem, args.dim, args.seed);

    const std::vector<double> coords = parse_reals(args.x_text);
    if (static_cast<int>(coords.size()) != args.dim)
        throw std::invalid_argument("--x has " + std::to_string(coords.size()) +
                                    " components but --dim is " + std::to_string(args.dim));
    hopflax::Query query;
    query.x = Eigen::Map<const Vector>(coords.data(), static_cast<Eigen::Index>(coords.size()));
    query.t = args.t;

    hopflax::SolverConfig config;
    config.tolerance = args.tol;
    config.max_iters = args.max_iters;
    config.multi_init_count = args.multi_init;
    config.rng_seed = args.seed;
    config.origin_centered_init_box = args.origin_box;
    if (args.alpha > 0.0) config.init_box_halfwidth = args.alpha;

    hopflax::SolveResult result;
    int fixed_point_count = -1;
    if (args.multi_init > 0) {
        const auto multi = hopflax::solve_multistart(builtin.problem, query, config);
        result = multi.best;
        fixed_point_count = static_cast<int>(multi.fixed_points.size());
    } else {
        result = hopflax::solve(builtin.problem, query, config);
    }

    const auto contraction = hopflax::contraction_info(builtin.problem, query.t);
    const auto bounds = hopflax::error_bounds(builtin.problem, query, result);

    double value_err = -1.0, grad_err = -1.0;
    if (builtin.problem.has_exact_solution()) {
        const auto exact = builtin.problem.exact_solution(query.x, query.t);
        value_err = std::abs(result.value - exact.value);
        grad_err = (result.gradient - exact.gradient).lpNorm<Eigen::Infinity>();
    }

    if (args.json) {
        nlohmann::json out{
            {"problem", args.problem},
            {"dim", args.dim},
            {"t", query.t},
            {"value", result.value},
            {"gradient", to_std(result.gradient)},
            {"control", to_std(result.control)},
            {"minimizer", to_std(result.minimizer)},
            {"iterations", result.iterations},
            {"final_residual", result.final_residual},
            {"converged", result.converged},
            {"status", result.status == hopflax::SolveStatus::converged     ? "converged"
                       : result.status == hopflax::SolveStatus::max_iterations ? "max_iterations"
                                                                             : "diverged"},
        };
        if (fixed_point_count >= 0) out["fixed_points"] = fixed_point_count;
        if (contraction.available) {
            out["contraction"] = {{"modulus", contraction.modulus},
                                  {"is_contraction", contraction.is_contraction}};
        }
        if (bounds.minimizer_valid) out["minimizer_bound"] = bounds.minimizer_bound;
        if (bounds.solution_valid) out["solution_bound"] = bounds.solution_bound;
        if (bounds.gradient_valid) out["gradient_bound"] = bounds.gradient_bound;
        if (value_err >= 0.0) {
            out["value_err"] = value_err;
            out["grad_err"] = grad_err;
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::printf("problem:    %s (d=%d)\n", args.problem.c_str(), args.dim);
        std::printf("query:      x = %s, t = %.12g\n", format_vector(query.x).c_str(), query.t);
        const char* status = result.status == hopflax::SolveStatus::converged ? "converged"
                             : result.status == hopflax::SolveStatus::max_iterations
                                 ? "stopped at max iterations"
                                 : "diverged";
        std::printf("status:     %s after %d iterations (residual %.6g)\n", status,
                    result.iterations, result.final_residual);
        if (fixed_point_count >= 0)
            std::printf("fixed pts:  %d distinct after deduplication\n", fixed_point_count);
        std::printf("value:      %.17g\n", result.value);
        std::printf("gradient:   %s\n", format_vector(result.gradient).c_str());
        std::printf("control:    %s\n", format_vector(result.control).c_str());
        std::printf("minimizer:  %s\n", format_vector(result.minimizer).c_str());
        if (contraction.available)
            std::printf("contraction: L_F = %.6g (%s)\n", contraction.modulus,
                        contraction.is_contraction ? "contraction" : "NOT a contraction");
        if (bounds.minimizer_valid) {
            std::printf("bounds:     minimizer %.6g, gradient %.6g", bounds.minimizer_bound,
                        bounds.gradient_bound);
            if (bounds.solution_valid) std::printf(", solution %.6g", bounds.solution_bound);
            std::printf("\n");
        }
        if (value_err >= 0.0)
            std::printf("vs exact:   |u - u_exact| = %.6g, |grad - grad_exact|_inf = %.6g\n",
                        value_err, grad_err);
    }

    if (!result.converged) {
        if (result.status == hopflax::SolveStatus::diverged) {
            std::fprintf(stderr, "diverged: iterate norm exceeded the guard");
            if (contraction.available && !contraction.is_contraction)
                std::fprintf(stderr, " (L_F = %.6g >= 1, outside the contraction regime)",
                             contraction.modulus);
            std::fprintf(stderr, "\n");
        } else {
            std::fprintf(stderr, "did not converge within %d iterations\n", args.max_iters);
        }
        return kExitNotConverged;
    }
    return kExitOk;
}

struct BenchArgs {
    std::string problem = "quadratic";
    std::string dims_text = "1";
    int points = 128;
    double sample_box = 1.0;
    std::string t_range = "0.1:0.4";
    std::uint64_t seed = 0;
    int multi_init = 0;
    double tol = 1e-6;
    int max_iters = 1000;
    std::string out_path;
    std::string points_out_path;
    std::string format = "csv";
    bool no_timing = false;
};

int cmd_bench(const BenchArgs& args) {
    hopflax::bench::BenchOptions options;
    options.problem_id = args.problem;
    options.dims = parse_ints(args.dims_text);
    options.points = args.points;
    options.sample_box_halfwidth = args.sample_box;
    std::tie(options.t_min, options.t_max) = parse_range(args.t_range);
    options.seed = args.seed;
    options.multi_init = args.multi_init;
    options.tolerance = args.tol;
    options.max_iters = args.max_iters;

    const auto results = hopflax::bench::run(options);

    std::vector<hopflax::BenchReport> reports;
    bool all_converged = true;
    for (const auto& r : results) {
        reports.push_back(r.report);
        all_converged = all_converged && r.all_converged;
    }

    std::ostringstream comment;
    comment << "hopflax bench problem=" << args.problem << " points=" << args.points
            << " x_box=" << args.sample_box << " t_range=" << args.t_range
            << " (capped at 0.9x the contraction limit where known)"
            << " tol=" << args.tol << " multi_init=" << args.multi_init << " seed=" << args.seed;

    std::string payload;
    if (args.format == "csv") {
        payload = hopflax::bench::reports_to_csv(reports, comment.str(), !args.no_timing);
    } else if (args.format == "json") {
        payload = hopflax::bench::reports_to_json(reports, !args.no_timing);
    } else {
        throw std::invalid_argument("--format must be csv or json");
    }

    if (args.out_path.empty())
        std::cout << payload;
    else
        hopflax::bench::write_text_atomic(args.out_path, payload);

    if (!args.points_out_path.empty())
        hopflax::bench::write_text_atomic(
            args.points_out_path, hopflax::bench::records_to_csv(results, !args.no_timing));

    if (!all_converged) {
        std::fprintf(stderr, "warning: some points did not converge\n");
        return kExitNotConverged;
    }
    return kExitOk;
}

struct ProfileArgs {
    std::string problem = "abs-quadratic";
    std::string x_range = "-2:2";
    int nx = 401;
    std::string times_text = "0,0.5,1";
    int multi_init = 100;
    std::uint64_t seed = 0;
    double tol = 1e-6;
    int max_iters = 1000;
    std::string out_path;
};

int cmd_profile(const ProfileArgs& args) {
    hopflax::bench::ProfileOptions options;
    options.problem_id = args.problem;
    std::tie(options.x_min, options.x_max) = parse_range(args.x_range);
    options.nx = args.nx;
    options.times = parse_reals(args.times_text);
    options.multi_init = args.multi_init;
    options.seed = args.seed;
    options.tolerance = args.tol;
    options.max_iters = args.max_iters;

    const std::string payload = hopflax::bench::run_profile_csv(options);
    if (args.out_path.empty())
        std::cout << payload;
    else
        hopflax::bench::write_text_atomic(args.out_path, payload);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hopf-Lax fixed-point solver for first-order Hamilton-Jacobi equations"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "Evaluate u(x,t) at a single query point");
    solve_cmd->add_option("--problem", solve_args.problem, "Problem id")->required();
    solve_cmd->add_option("--dim", solve_args.dim, "State dimension")->required();
    solve_cmd->add_option("--x", solve_args.x_text, "Comma-separated state coordinates")
        ->required();
    solve_cmd->add_option("--t", solve_args.t, "Time, >= 0")->required();
    solve_cmd->add_option("--multi-init", solve_args.multi_init,
                          "Number of random starts (0: single start at x)");
    solve_cmd->add_option("--alpha", solve_args.alpha, "Init sampling box halfwidth");
    solve_cmd->add_option("--tol", solve_args.tol, "Residual tolerance");
    solve_cmd->add_option("--max-iters", solve_args.max_iters, "Iteration budget");
    solve_cmd->add_option("--seed", solve_args.seed, "RNG seed");
    solve_cmd->add_flag("--json", solve_args.json, "Emit JSON instead of text");
    solve_cmd->add_flag("--origin-init-box", solve_args.origin_box,
                        "Sample starts from [-a,a]^d instead of x + [-a,a]^d");

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark batch and write a report");
    bench_cmd->add_option("--problem", bench_args.problem, "Problem id")->required();
    bench_cmd->add_option("--dims", bench_args.dims_text, "Comma-separated dimensions")
        ->required();
    bench_cmd->add_option("--points", bench_args.points, "Queries per dimension");
    bench_cmd->add_option("--sample-box", bench_args.sample_box, "x sampled from [-h,h]^d");
    bench_cmd->add_option("--t-range", bench_args.t_range, "Time range lo:hi");
    bench_cmd->add_option("--seed", bench_args.seed, "RNG seed");
    bench_cmd->add_option("--multi-init", bench_args.multi_init, "Random starts per point");
    bench_cmd->add_option("--tol", bench_args.tol, "Residual tolerance");
    bench_cmd->add_option("--max-iters", bench_args.max_iters, "Iteration budget");
    bench_cmd->add_option("--out", bench_args.out_path, "Report path (stdout when omitted)");
    bench_cmd->add_option("--points-out", bench_args.points_out_path,
                          "Optional per-point record CSV path");
    bench_cmd->add_option("--format", bench_args.format, "csv or json");
    bench_cmd->add_flag("--no-timing", bench_args.no_timing,
                        "Write 0 in timing columns so repeated runs are byte-identical");

    ProfileArgs profile_args;
    auto* profile_cmd =
        app.add_subcommand("profile", "Emit a 1-D solution profile CSV for plotting");
    profile_cmd->add_option("--problem", profile_args.problem,
                            "abs-quadratic | log-quadratic | steady-kink | unsteady-kink")
        ->required();
    profile_cmd->add_option("--x-range", profile_args.x_range, "x grid range lo:hi");
    profile_cmd->add_option("--nx", profile_args.nx, "Grid points");
    profile_cmd->add_option("--times", profile_args.times_text, "Comma-separated times");
    profile_cmd->add_option("--multi-init", profile_args.multi_init,
                            "Random starts per point (kinks need several)");
    profile_cmd->add_option("--seed", profile_args.seed, "RNG seed");
    profile_cmd->add_option("--tol", profile_args.tol, "Residual tolerance");
    profile_cmd->add_option("--max-iters", profile_args.max_iters, "Iteration budget");
    profile_cmd->add_option("--out", profile_args.out_path, "CSV path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (solve_cmd->parsed()) return cmd_solve(solve_args);
        if (bench_cmd->parsed()) return cmd_bench(bench_args);
        if (profile_cmd->parsed()) return cmd_profile(profile_args);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
