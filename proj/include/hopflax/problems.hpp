#pragma once

#include "hopflax/problem.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace hopflax {

/// Cost matrices for the linear-quadratic control benchmark. Both must be
/// symmetric positive definite.
struct LqrSpec {
    Eigen::MatrixXd Q;
    Eigen::MatrixXd R;
    double scale_q = 1.0;
    double scale_r = 1.0;
    std::uint64_t seed = 0;

    /// Q = scale_q * (A^T A + I), R = scale_r * (B^T B + I) with A then B
    /// drawn entrywise standard normal (row-major) from one seeded stream.
    static LqrSpec random(int dim, double scale_q, double scale_r, std::uint64_t seed);
};

/// H = (1/2)|p|^2, g = (1/2)|x|^2. Exact: u = |x|^2 / (2(1+t)).
ProblemDef quadratic_problem(int dim);

/// H(p) = (1/2) p^T R^{-1} p, g(y) = (1/2) y^T Q y. Lipschitz constants are
/// the extreme eigenvalues computed by power iteration; the closed-form
/// solution is y* = (I + t R^{-1} Q)^{-1} x, u = (1/2) y*^T Q x.
/// Throws std::invalid_argument when Q or R is not symmetric positive
/// definite.
ProblemDef lqr_problem(const LqrSpec& spec);

/// Spectral norm |R^{-1} Q|_2; the map converges for t < 1 / |R^{-1} Q|_2.
double lqr_map_spectral_norm(const LqrSpec& spec);

/// H = (1/3)|p|^3, g = |x|^3, H* = (2/3)|q|^{3/2}. No global Lipschitz
/// constants and no closed form; verification goes through the grid oracle.
ProblemDef cubic_problem(int dim);

/// H = (1/2)|p|^2, g = -|x|_1 (subgradient selection sign(0) = 0).
/// Exact: u = -|x|_1 - d t / 2, with a steady kink at x = 0.
ProblemDef steady_kink_problem(int dim);

/// H = (1/2)|p|^2, g = sum_i min(x_i, 0). Exact: u = sum_{x_i < t/2} (x_i - t/2),
/// with a kink moving at x = t / 2.
ProblemDef unsteady_kink_problem(int dim);

/// d = 1, H = (1/2)p^2, g = x|x|. Non-convex g; kinks form for t >= 1/2.
ProblemDef abs_quadratic_problem();

/// d = 1, H = (1/2)p^2, g = x^2 log(2 + |x|).
ProblemDef log_quadratic_problem();

/// A registry entry: the problem plus the largest time for which the
/// fixed-point map is provably convergent, when known (sharp |R^{-1}Q|_2
/// bound for "lqr", 1 / (L_H L_g) where both constants exist).
struct BuiltinProblem {
    std::string id;
    ProblemDef problem;
    std::optional<double> contraction_time_limit;
};

/// Problems addressable by id: "quadratic", "lqr", "cubic", "steady-kink",
/// "unsteady-kink", "abs-quadratic", "log-quadratic". The seed only affects
/// "lqr" (matrix realization, scales fixed at 1/dim). Throws
/// std::invalid_argument for unknown ids or unsupported dimensions.
BuiltinProblem make_problem(const std::string& id, int dim, std::uint64_t seed = 0);

const std::vector<std::string>& problem_ids();

}  // namespace hopflax
