#pragma once

#include "hopflax/problem.hpp"
#include "hopflax/types.hpp"

namespace hopflax {

/// Contraction diagnostics for the minimizer map at a given time.
struct ContractionInfo {
    double modulus = 0.0;         ///< L_F = t * L_H * L_g
    bool is_contraction = false;  ///< available && modulus < 1
    bool available = false;       ///< both L_H and L_g present
};

/// A-posteriori bounds computed from the final residual. Each bound is only
/// meaningful when its flag is set; `valid` requires all three.
struct ErrorBounds {
    double minimizer_bound = 0.0;  ///< |y - y*|     <= r / (1 - L_F)
    double solution_bound = 0.0;   ///< |u - u_k|    <= (L_{H*}/t + L_g) / (1 - L_F) * r
    double gradient_bound = 0.0;   ///< |du - du_k|  <= L_g * r
    bool minimizer_valid = false;
    bool solution_valid = false;
    bool gradient_valid = false;
    bool valid = false;
};

/// Picard iteration y^{k+1} = F(y^k) from start y0, stopping when the step
/// norm drops below config.tolerance or the budget runs out. The returned
/// minimizer is the last computed iterate; value, gradient and control are
/// evaluated at it. t = 0 short-circuits to (x, g(x), grad g(x), 0) without
/// iterating. Iterates whose norm exceeds config.divergence_guard terminate
/// the run with SolveStatus::diverged.
SolveResult solve(const ProblemDef& problem, const Query& query, const SolverConfig& config,
                  const Vector& y0);

/// Same, starting from y0 = x.
SolveResult solve(const ProblemDef& problem, const Query& query, const SolverConfig& config);

/// L_F = t * L_H * L_g when both constants are present.
ContractionInfo contraction_info(const ProblemDef& problem, double t);

/// Residual-based bounds for a finished solve. Invalid bounds are flagged,
/// never thrown.
ErrorBounds error_bounds(const ProblemDef& problem, const Query& query, const SolveResult& result);

/// Smallest iteration count guaranteed to reach residual <= epsilon from the
/// given starting distance under contraction modulus 0 < L_F < 1:
/// ceil(log((1 + L_F) * distance / epsilon) / -log(L_F)), clamped at 0.
int predicted_iterations(double contraction_modulus, double initial_distance, double epsilon);

}  // namespace hopflax
