#pragma once

#include "hopflax/problem.hpp"

namespace hopflax {

/// Outcome of a brute-force energy minimization.
struct OracleResult {
    Vector minimizer;
    double value = 0.0;
    int grid_points_per_axis = 0;
    double box_halfwidth = 0.0;  ///< halfwidth of the final (most refined) box
    int refinement_levels = 0;
    double resolution = 0.0;  ///< 2 * box_halfwidth / (grid_points_per_axis - 1)
};

/// Exhaustive minimization of the Hopf-Lax energy over a uniform grid on
/// x + [-h, h]^d, followed by refinement_levels recentered passes. Each pass
/// shrinks the box halfwidth to one grid spacing of the previous pass, which
/// keeps the minimizer of a convex energy inside the refined box. The best
/// value ever seen is tracked across passes, so the result is monotone in the
/// refinement level. Grid ties are broken by the lowest lexicographic index
/// (axis 0 most significant); evaluation parallelizes over grid chunks
/// without affecting the result.
///
/// Deliberately derivative-free so it shares no machinery with the solver it
/// verifies. Cost is points_per_axis^dim per pass; dim is capped at 3.
OracleResult grid_minimize(const ProblemDef& problem, const Query& query, double box_halfwidth,
                           int points_per_axis, int refinement_levels);

/// Same with the covering-box heuristic h = |x|_inf + t * (1 + |grad g(x)|).
OracleResult grid_minimize(const ProblemDef& problem, const Query& query, int points_per_axis,
                           int refinement_levels);

}  // namespace hopflax
