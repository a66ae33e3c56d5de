#include "hopflax/oracle.hpp"

#include "hopflax/parallel.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <stdexcept>

namespace hopflax {

namespace {

Vector grid_point(const Vector& center, double halfwidth, double spacing, int points_per_axis,
                  std::size_t flat_index) {
    const int dim = static_cast<int>(center.size());
    Vector y(dim);
    std::size_t rest = flat_index;
    for (int axis = dim - 1; axis >= 0; --axis) {
        const std::size_t digit = rest % static_cast<std::size_t>(points_per_axis);
        rest /= static_cast<std::size_t>(points_per_axis);
        y[axis] = center[axis] - halfwidth + static_cast<double>(digit) * spacing;
    }
    return y;
}

}  // namespace

OracleResult grid_minimize(const ProblemDef& problem, const Query& query, double box_halfwidth,
                           int points_per_axis, int refinement_levels) {
    if (problem.dim > 3)
        throw std::invalid_argument("grid oracle is restricted to dim <= 3");
    if (!(query.t > 0.0)) throw std::invalid_argument("grid oracle requires t > 0");
    if (points_per_axis < 3) throw std::invalid_argument("points_per_axis must be >= 3");
    if (!(box_halfwidth > 0.0)) throw std::invalid_argument("box_halfwidth must be > 0");
    if (refinement_levels < 0) throw std::invalid_argument("refinement_levels must be >= 0");
    require_finite(query.x, "query state");

    const int dim = problem.dim;
    std::size_t total = 1;
    for (int i = 0; i < dim; ++i) total *= static_cast<std::size_t>(points_per_axis);

    Vector center = query.x;
    double halfwidth = box_halfwidth;

    double best_value = std::numeric_limits<double>::infinity();
    Vector best_point = center;

    for (int level = 0; level <= refinement_levels; ++level) {
        const double spacing = 2.0 * halfwidth / (points_per_axis - 1);

        double pass_value = std::numeric_limits<double>::infinity();
        std::size_t pass_index = std::numeric_limits<std::size_t>::max();
        std::mutex merge_mutex;

        parallel_for(total, [&](std::size_t begin, std::size_t end) {
            double local_value = std::numeric_limits<double>::infinity();
            std::size_t local_index = std::numeric_limits<std::size_t>::max();
            for (std::size_t idx = begin; idx < end; ++idx) {
                const Vector y = grid_point(center, halfwidth, spacing, points_per_axis, idx);
                const double value = hopf_lax_energy(problem, query, y);
                if (value < local_value) {  // strict: keeps the lowest index
                    local_value = value;
                    local_index = idx;
                }
            }
            std::lock_guard<std::mutex> lock(merge_mutex);
            if (local_value < pass_value ||
                (local_value == pass_value && local_index < pass_index)) {
                pass_value = local_value;
                pass_index = local_index;
            }
        });

        const Vector pass_point =
            grid_point(center, halfwidth, spacing, points_per_axis, pass_index);
        if (pass_value < best_value) {
            best_value = pass_value;
            best_point = pass_point;
        }

        if (level == refinement_levels) break;
        // Shrink to one grid spacing around the best point seen so far; a
        // convex energy's minimizer lies within one spacing of the grid
        // argmin, so the refined box still contains it.
        center = best_point;
        halfwidth = spacing;
    }

    OracleResult result;
    result.minimizer = best_point;
    result.value = best_value;
    result.grid_points_per_axis = points_per_axis;
    result.box_halfwidth = halfwidth;
    result.refinement_levels = refinement_levels;
    result.resolution = 2.0 * halfwidth / (points_per_axis - 1);
    return result;
}

OracleResult grid_minimize(const ProblemDef& problem, const Query& query, int points_per_axis,
                           int refinement_levels) {
    const double grad_norm = problem.initial_grad(query.x).norm();
    const double halfwidth = query.x.lpNorm<Eigen::Infinity>() + query.t * (1.0 + grad_norm);
    return grid_minimize(problem, query, halfwidth, points_per_axis, refinement_levels);
}

}  // namespace hopflax
