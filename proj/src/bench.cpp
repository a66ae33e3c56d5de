#include "hopflax/bench.hpp"

#include "hopflax/multistart.hpp"
#include "hopflax/oracle.hpp"
#include "hopflax/parallel.hpp"
#include "hopflax/picard.hpp"
#include "hopflax/random.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hopflax::bench {

namespace {

constexpr const char* kReportHeader =
    "problem,dim,n_points,l2_u,linf_u,l2_grad,linf_grad,time_s,mean_iters,seed";

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) fields.push_back(field);
    return fields;
}

}  // namespace

DimResult run_dim(const BenchOptions& options, int dim) {
    if (options.points < 1) throw std::invalid_argument("points must be >= 1");
    if (!(options.sample_box_halfwidth > 0.0))
        throw std::invalid_argument("sample box halfwidth must be > 0");
    if (!(options.t_min > 0.0) || !(options.t_max >= options.t_min))
        throw std::invalid_argument("t range must satisfy 0 < t_min <= t_max");

    const BuiltinProblem builtin = make_problem(options.problem_id, dim, options.seed);
    const ProblemDef& problem = builtin.problem;

    // Stay inside the provable-convergence window when one is known.
    double t_hi = options.t_max;
    if (builtin.contraction_time_limit)
        t_hi = std::min(t_hi, 0.9 * *builtin.contraction_time_limit);
    const double t_lo = std::min(options.t_min, t_hi);

    const bool use_oracle = !problem.has_exact_solution();
    if (use_oracle && dim > 2)
        throw std::invalid_argument("problem '" + options.problem_id +
                                    "' has no exact solution; the oracle reference only covers "
                                    "dim <= 2");

    const std::uint64_t sub_seed = mix_seed(options.seed, static_cast<std::uint64_t>(dim));
    Rng rng(sub_seed);
    std::vector<Query> queries;
    queries.reserve(static_cast<std::size_t>(options.points));
    for (int i = 0; i < options.points; ++i) {
        Query q;
        q.x = rng.uniform_box(Vector::Zero(dim), options.sample_box_halfwidth);
        q.t = rng.uniform(t_lo, t_hi);
        queries.push_back(std::move(q));
    }

    SolverConfig config;
    config.tolerance = options.tolerance;
    config.max_iters = options.max_iters;
    config.multi_init_count = options.multi_init;

    DimResult result;
    result.records.resize(queries.size());

    parallel_for(queries.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const Query& query = queries[i];
            SolverConfig point_config = config;
            point_config.rng_seed = mix_seed(sub_seed, i);

            const auto start = std::chrono::steady_clock::now();
            SolveResult solved = options.multi_init > 0
                                     ? solve_multistart(problem, query, point_config).best
                                     : solve(problem, query, point_config);
            const double wall = elapsed_seconds(start);

            ExactSolution reference;
            if (use_oracle) {
                const OracleResult oracle = grid_minimize(problem, query, 101, 3);
                reference.value = oracle.value;
                reference.gradient = problem.initial_grad(oracle.minimizer);
            } else {
                reference = problem.exact_solution(query.x, query.t);
            }

            PointRecord& rec = result.records[i];
            rec.query = query;
            rec.value_err = std::abs(solved.value - reference.value);
            rec.grad_err = (solved.gradient - reference.gradient).lpNorm<Eigen::Infinity>();
            rec.iterations = solved.iterations;
            rec.wall_time = wall;
            rec.converged = solved.converged;
        }
    });

    for (const PointRecord& rec : result.records)
        if (!rec.converged) result.all_converged = false;

    result.report = aggregate(result.records);
    result.report.problem_id = options.problem_id;
    result.report.dim = dim;
    result.report.seed = options.seed;
    return result;
}

std::vector<DimResult> run(const BenchOptions& options) {
    std::vector<DimResult> results;
    results.reserve(options.dims.size());
    for (int dim : options.dims) results.push_back(run_dim(options, dim));
    return results;
}

std::string reports_to_csv(const std::vector<BenchReport>& reports,
                           const std::string& header_comment, bool include_timing) {
    std::ostringstream out;
    if (!header_comment.empty()) out << "# " << header_comment << "\n";
    out << kReportHeader << "\n";
    for (const BenchReport& r : reports) {
        out << r.problem_id << ',' << r.dim << ',' << r.n_points << ','
            << format_real(r.l2_value_err) << ',' << format_real(r.linf_value_err) << ','
            << format_real(r.l2_grad_err) << ',' << format_real(r.linf_grad_err) << ','
            << format_real(include_timing ? r.total_time : 0.0) << ','
            << format_real(r.mean_iterations) << ',' << r.seed << "\n";
    }
    return out.str();
}

std::vector<BenchReport> parse_reports_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    std::vector<BenchReport> reports;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != kReportHeader)
                throw std::runtime_error("unexpected bench CSV header: " + line);
            header_seen = true;
            continue;
        }
        const auto fields = split(line, ',');
        if (fields.size() != 10)
            throw std::runtime_error("malformed bench CSV row: " + line);
        BenchReport r;
        r.problem_id = fields[0];
        r.dim = std::stoi(fields[1]);
        r.n_points = std::stoi(fields[2]);
        r.l2_value_err = std::stod(fields[3]);
        r.linf_value_err = std::stod(fields[4]);
        r.l2_grad_err = std::stod(fields[5]);
        r.linf_grad_err = std::stod(fields[6]);
        r.total_time = std::stod(fields[7]);
        r.mean_iterations = std::stod(fields[8]);
        r.seed = std::stoull(fields[9]);
        reports.push_back(std::move(r));
    }
    if (!header_seen) throw std::runtime_error("bench CSV is missing its header row");
    return reports;
}

std::string reports_to_json(const std::vector<BenchReport>& reports, bool include_timing) {
    nlohmann::json rows = nlohmann::json::array();
    for (const BenchReport& r : reports) {
        rows.push_back({{"problem", r.problem_id},
                        {"dim", r.dim},
                        {"n_points", r.n_points},
                        {"l2_u", r.l2_value_err},
                        {"linf_u", r.linf_value_err},
                        {"l2_grad", r.l2_grad_err},
                        {"linf_grad", r.linf_grad_err},
                        {"time_s", include_timing ? r.total_time : 0.0},
                        {"mean_iters", r.mean_iterations},
                        {"seed", r.seed}});
    }
    return rows.dump(2) + "\n";
}

std::string records_to_csv(const std::vector<DimResult>& results, bool include_timing) {
    std::ostringstream out;
    out << "dim,index,t,value_err,grad_err,iterations,converged,time_s\n";
    for (const DimResult& dr : results) {
        for (std::size_t i = 0; i < dr.records.size(); ++i) {
            const PointRecord& rec = dr.records[i];
            out << dr.report.dim << ',' << i << ',' << format_real(rec.query.t) << ','
                << format_real(rec.value_err) << ',' << format_real(rec.grad_err) << ','
                << rec.iterations << ',' << (rec.converged ? 1 : 0) << ','
                << format_real(include_timing ? rec.wall_time : 0.0) << "\n";
        }
    }
    return out.str();
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        out << content;
        if (!out) throw std::runtime_error("failed writing '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, target);
}

std::string run_profile_csv(const ProfileOptions& options) {
    static const std::vector<std::string> allowed = {"abs-quadratic", "log-quadratic",
                                                     "steady-kink", "unsteady-kink"};
    if (std::find(allowed.begin(), allowed.end(), options.problem_id) == allowed.end())
        throw std::invalid_argument("profile supports the 1-D non-smooth problems only "
                                    "(abs-quadratic, log-quadratic, steady-kink, unsteady-kink)");
    if (options.nx < 2) throw std::invalid_argument("nx must be >= 2");
    if (!(options.x_max > options.x_min))
        throw std::invalid_argument("x range must satisfy x_min < x_max");
    if (options.times.empty()) throw std::invalid_argument("at least one time is required");
    for (double t : options.times)
        if (!(t >= 0.0)) throw std::invalid_argument("profile times must be >= 0");

    const BuiltinProblem builtin = make_problem(options.problem_id, 1, options.seed);
    const ProblemDef& problem = builtin.problem;

    const double dx = (options.x_max - options.x_min) / (options.nx - 1);

    struct Row {
        double x, t, u, grad;
    };
    std::vector<Row> rows(options.times.size() * static_cast<std::size_t>(options.nx));

    SolverConfig config;
    config.tolerance = options.tolerance;
    config.max_iters = options.max_iters;
    config.multi_init_count = options.multi_init;

    for (std::size_t ti = 0; ti < options.times.size(); ++ti) {
        const double t = options.times[ti];
        parallel_for(static_cast<std::size_t>(options.nx), [&](std::size_t begin,
                                                               std::size_t end) {
            for (std::size_t ix = begin; ix < end; ++ix) {
                Query query;
                query.x = Vector::Constant(1, options.x_min + static_cast<double>(ix) * dx);
                query.t = t;

                Row& row = rows[ti * static_cast<std::size_t>(options.nx) + ix];
                row.x = query.x[0];
                row.t = t;
                if (t == 0.0) {
                    row.u = problem.initial_value(query.x);
                    row.grad = problem.initial_grad(query.x)[0];
                    continue;
                }
                SolverConfig point_config = config;
                point_config.rng_seed = mix_seed(options.seed, ti * 1000003 + ix);
                const SolveResult solved =
                    options.multi_init > 0 ? solve_multistart(problem, query, point_config).best
                                           : solve(problem, query, point_config);
                row.u = solved.value;
                row.grad = solved.gradient[0];
            }
        });
    }

    std::ostringstream out;
    out << "x,t,u,grad_u\n";
    for (const Row& row : rows)
        out << format_real(row.x) << ',' << format_real(row.t) << ',' << format_real(row.u) << ','
            << format_real(row.grad) << "\n";
    return out.str();
}

}  // namespace hopflax::bench
