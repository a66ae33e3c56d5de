#include "hopflax/picard.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace hopflax {

namespace {

// Fills value/gradient/control for the final iterate. A diverged iterate may
// sit so far out that the energy overflows; report that as +inf instead of
// failing, so callers can still rank the run.
void finalize(const ProblemDef& problem, const Query& query, SolveResult& result) {
    const bool diverged = result.status == SolveStatus::diverged;
    try {
        result.value = hopf_lax_energy(problem, query, result.minimizer);
        result.gradient = problem.initial_grad(result.minimizer);
        if (!is_finite(result.gradient)) throw EvaluationError("initial_grad");
    } catch (const EvaluationError&) {
        if (!diverged) throw;
        result.value = std::numeric_limits<double>::infinity();
        result.gradient = Vector::Constant(query.x.size(), std::numeric_limits<double>::quiet_NaN());
    }
    result.control = (query.x - result.minimizer) / query.t;
}

SolveResult degenerate_time_result(const ProblemDef& problem, const Query& query) {
    SolveResult result;
    result.minimizer = query.x;
    result.value = problem.initial_value(query.x);
    if (!is_finite(result.value)) throw EvaluationError("initial_value");
    result.gradient = problem.initial_grad(query.x);
    if (!is_finite(result.gradient)) throw EvaluationError("initial_grad");
    result.control = Vector::Zero(query.x.size());
    result.iterations = 0;
    result.final_residual = 0.0;
    result.converged = true;
    result.status = SolveStatus::converged;
    return result;
}

}  // namespace

SolveResult solve(const ProblemDef& problem, const Query& query, const SolverConfig& config,
                  const Vector& y0) {
    require_valid(config);
    require_finite(query.x, "query state");
    require_finite(y0, "initial iterate");
    if (query.x.size() != problem.dim)
        throw std::invalid_argument("query state does not match the problem dimension");
    if (y0.size() != problem.dim)
        throw std::invalid_argument("initial iterate does not match the problem dimension");
    if (!(query.t >= 0.0)) throw std::invalid_argument("query time must be >= 0");

    if (query.t == 0.0) return degenerate_time_result(problem, query);

    SolveResult result;
    result.residual_history.reserve(64);

    Vector y = y0;
    for (int k = 0; k < config.max_iters; ++k) {
        Vector y_next = fixed_point_map(problem, query, y);
        const double residual = (y_next - y).norm();
        result.residual_history.push_back(residual);
        y = std::move(y_next);

        if (residual < config.tolerance) {
            result.minimizer = std::move(y);
            result.iterations = k;
            result.final_residual = residual;
            result.converged = true;
            result.status = SolveStatus::converged;
            finalize(problem, query, result);
            return result;
        }
        if (y.norm() > config.divergence_guard) {
            result.minimizer = std::move(y);
            result.iterations = static_cast<int>(result.residual_history.size());
            result.final_residual = residual;
            result.converged = false;
            result.status = SolveStatus::diverged;
            finalize(problem, query, result);
            return result;
        }
    }

    result.minimizer = std::move(y);
    result.iterations = config.max_iters;
    result.final_residual = result.residual_history.back();
    result.converged = false;
    result.status = SolveStatus::max_iterations;
    finalize(problem, query, result);
    return result;
}

SolveResult solve(const ProblemDef& problem, const Query& query, const SolverConfig& config) {
    return solve(problem, query, config, query.x);
}

ContractionInfo contraction_info(const ProblemDef& problem, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("time must be >= 0");
    ContractionInfo info;
    info.available = problem.lipschitz_H.has_value() && problem.lipschitz_g.has_value();
    if (info.available) {
        info.modulus = t * (*problem.lipschitz_H) * (*problem.lipschitz_g);
        info.is_contraction = info.modulus < 1.0;
    }
    return info;
}

ErrorBounds error_bounds(const ProblemDef& problem, const Query& query,
                         const SolveResult& result) {
    ErrorBounds bounds;
    const double residual = result.final_residual;
    if (!is_finite(residual)) return bounds;

    const ContractionInfo contraction = contraction_info(problem, query.t);
    if (contraction.available && contraction.is_contraction) {
        const double damping = 1.0 - contraction.modulus;
        bounds.minimizer_bound = residual / damping;
        bounds.minimizer_valid = true;
        bounds.gradient_bound = *problem.lipschitz_g * residual;
        bounds.gradient_valid = true;
        if (problem.lipschitz_H_conj && query.t > 0.0) {
            bounds.solution_bound =
                (*problem.lipschitz_H_conj / query.t + *problem.lipschitz_g) / damping * residual;
            bounds.solution_valid = true;
        }
    }
    bounds.valid = bounds.minimizer_valid && bounds.solution_valid && bounds.gradient_valid;
    return bounds;
}

int predicted_iterations(double contraction_modulus, double initial_distance, double epsilon) {
    if (!(contraction_modulus > 0.0) || !(contraction_modulus < 1.0))
        throw std::invalid_argument("contraction modulus must lie in (0, 1)");
    if (!(initial_distance >= 0.0)) throw std::invalid_argument("initial distance must be >= 0");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");

    if (initial_distance == 0.0) return 0;
    const double bound = std::log((1.0 + contraction_modulus) * initial_distance / epsilon) /
                         -std::log(contraction_modulus);
    if (bound <= 0.0) return 0;
    return static_cast<int>(std::ceil(bound));
}

}  // namespace hopflax
