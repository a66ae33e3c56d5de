#pragma once

#include "hopflax/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hopflax {

/// One benchmark point: errors against the reference, iteration count and
/// solve wall time.
struct PointRecord {
    Query query;
    double value_err = 0.0;  ///< |u - u_ref|
    double grad_err = 0.0;   ///< |grad u - grad u_ref|_inf
    int iterations = 0;
    double wall_time = 0.0;  ///< seconds around the solve call only
    bool converged = false;
};

/// Aggregate row for one (problem, dim) batch. The l2 fields are mean squared
/// errors, not root-mean-square; linf fields are maxima.
struct BenchReport {
    std::string problem_id;
    int dim = 0;
    int n_points = 0;
    double l2_value_err = 0.0;
    double linf_value_err = 0.0;
    double l2_grad_err = 0.0;
    double linf_grad_err = 0.0;
    double total_time = 0.0;  ///< seconds, summed over point solve times
    double mean_iterations = 0.0;
    std::uint64_t seed = 0;
};

/// Numeric aggregation of a nonempty record batch; identity fields
/// (problem_id, dim, seed) are left for the caller. Throws
/// std::invalid_argument on empty input.
BenchReport aggregate(const std::vector<PointRecord>& records);

}  // namespace hopflax
