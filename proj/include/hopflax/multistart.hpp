#pragma once

#include "hopflax/picard.hpp"

#include <vector>

namespace hopflax {

/// A deduplicated converged fixed point with its energy and cluster size.
struct FixedPointCandidate {
    Vector minimizer;
    double energy = 0.0;
    int multiplicity = 0;
};

struct MultiStartResult {
    SolveResult best;  ///< energy-minimizing fixed point (or fallback iterate)
    std::vector<FixedPointCandidate> fixed_points;  ///< in discovery order
    int attempted = 0;
    int converged_count = 0;
    bool all_diverged = false;  ///< every run hit the divergence guard
};

/// Reasonable start count for interactive use; benchmarks on kinked problems
/// scale it as 100 * dim instead.
inline constexpr int kDefaultMultiInitCount = 32;

/// Runs config.multi_init_count Picard solves from starts drawn uniformly
/// from a box of halfwidth alpha (config.init_box_halfwidth, defaulting to
/// 2 * (1 + |x|_inf + t)) centered at x, or at the origin when
/// config.origin_centered_init_box is set. Starts are pre-generated from
/// config.rng_seed, so results do not depend on the worker count. Converged
/// minimizers are clustered within config.dedup_tolerance (representative =
/// first found), ranked by Hopf-Lax energy, and the lowest-energy
/// representative's result is returned. Ties keep the earliest
/// representative in sampling order. If nothing converges, the lowest-energy
/// final iterate is returned with converged = false.
MultiStartResult solve_multistart(const ProblemDef& problem, const Query& query,
                                  const SolverConfig& config);

}  // namespace hopflax
