#include "hopflax/multistart.hpp"

#include "hopflax/parallel.hpp"
#include "hopflax/random.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hopflax {

namespace {

double default_box_halfwidth(const Query& query) {
    return 2.0 * (1.0 + query.x.lpNorm<Eigen::Infinity>() + query.t);
}

}  // namespace

MultiStartResult solve_multistart(const ProblemDef& problem, const Query& query,
                                  const SolverConfig& config) {
    require_valid(config);
    require_finite(query.x, "query state");
    if (config.multi_init_count < 1)
        throw std::invalid_argument("solve_multistart requires multi_init_count >= 1");
    if (!(query.t >= 0.0)) throw std::invalid_argument("query time must be >= 0");

    MultiStartResult out;
    if (query.t == 0.0) {
        out.best = solve(problem, query, config, query.x);
        return out;
    }

    const int n = config.multi_init_count;
    const double alpha = config.init_box_halfwidth.value_or(default_box_halfwidth(query));
    const Vector center =
        config.origin_centered_init_box ? Vector(Vector::Zero(problem.dim)) : query.x;

    // Starts are drawn up front from one seeded stream; the parallel phase
    // only reads them, so the worker count cannot change the outcome.
    std::vector<Vector> starts;
    starts.reserve(static_cast<std::size_t>(n));
    Rng rng(config.rng_seed);
    for (int i = 0; i < n; ++i) starts.push_back(rng.uniform_box(center, alpha));

    std::vector<SolveResult> runs(static_cast<std::size_t>(n));
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            runs[i] = solve(problem, query, config, starts[i]);
    });

    out.attempted = n;

    // Cluster converged minimizers in sampling order; the first member of a
    // cluster is its representative.
    std::vector<std::size_t> representative_run;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        if (!runs[i].converged) continue;
        ++out.converged_count;
        bool merged = false;
        for (std::size_t c = 0; c < out.fixed_points.size(); ++c) {
            if ((runs[i].minimizer - out.fixed_points[c].minimizer).norm() <=
                config.dedup_tolerance) {
                ++out.fixed_points[c].multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) {
            FixedPointCandidate candidate;
            candidate.minimizer = runs[i].minimizer;
            candidate.energy = runs[i].value;  // solve() evaluates the energy at the minimizer
            candidate.multiplicity = 1;
            out.fixed_points.push_back(std::move(candidate));
            representative_run.push_back(i);
        }
    }

    if (!out.fixed_points.empty()) {
        std::size_t best_cluster = 0;
        for (std::size_t c = 1; c < out.fixed_points.size(); ++c)
            if (out.fixed_points[c].energy < out.fixed_points[best_cluster].energy)
                best_cluster = c;
        out.best = runs[representative_run[best_cluster]];
        return out;
    }

    // Nothing converged: fall back to the lowest-energy final iterate.
    out.all_diverged = true;
    std::size_t best_run = 0;
    double best_energy = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < runs.size(); ++i) {
        if (runs[i].status != SolveStatus::diverged) out.all_diverged = false;
        const double energy = runs[i].value;
        if (std::isfinite(energy) && energy < best_energy) {
            best_energy = energy;
            best_run = i;
        }
    }
    out.best = runs[best_run];
    return out;
}

}  // namespace hopflax
