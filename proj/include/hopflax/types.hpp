#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopflax {

/// Dense state vector in R^d. All public entry points validate finiteness.
using Vector = Eigen::VectorXd;

/// Evaluation point: state x and time t >= 0.
struct Query {
    Vector x;
    double t = 0.0;
};

enum class SolveStatus {
    converged,       ///< residual fell below tolerance
    max_iterations,  ///< iteration budget exhausted
    diverged,        ///< iterate norm exceeded the divergence guard
};

/// Tuning knobs for the fixed-point solver and the multi-start driver.
struct SolverConfig {
    int max_iters = 1000;
    double tolerance = 1e-6;

    /// Number of random initializations; 0 means a single start at y0 = x.
    int multi_init_count = 0;
    /// Halfwidth of the sampling box. Unset: 2 * (1 + |x|_inf + t).
    std::optional<double> init_box_halfwidth;
    /// Sample starts from [-a, a]^d instead of x + [-a, a]^d.
    bool origin_centered_init_box = false;
    /// Cluster radius when merging converged fixed points.
    double dedup_tolerance = 1e-6;
    std::uint64_t rng_seed = 0;

    /// Iterate norm past which the run is declared diverged.
    double divergence_guard = 1e12;
};

/// Outcome of a single fixed-point solve at one query point.
struct SolveResult {
    Vector minimizer;  ///< y*
    double value = 0.0;  ///< u(x,t), the energy at the minimizer
    Vector gradient;  ///< grad u(x,t) = grad g(y*)
    Vector control;   ///< q* = (x - y*) / t, zero when t = 0
    /// Iteration index at stop: residual_history.size() - 1 when converged,
    /// residual_history.size() otherwise.
    int iterations = 0;
    double final_residual = 0.0;
    bool converged = false;
    SolveStatus status = SolveStatus::max_iterations;
    /// |y^{k+1} - y^k| for every step taken.
    std::vector<double> residual_history;
};

/// Thrown when a user-supplied evaluator produces NaN or Inf.
class EvaluationError : public std::runtime_error {
public:
    explicit EvaluationError(const std::string& evaluator)
        : std::runtime_error("evaluator '" + evaluator + "' returned a non-finite value"),
          evaluator_(evaluator) {}

    const std::string& evaluator() const { return evaluator_; }

private:
    std::string evaluator_;
};

inline bool is_finite(double v) { return std::isfinite(v); }
inline bool is_finite(const Vector& v) { return v.allFinite(); }

/// Throws std::invalid_argument unless v is finite and non-empty.
inline void require_finite(const Vector& v, const char* what) {
    if (v.size() < 1) throw std::invalid_argument(std::string(what) + " must have dimension >= 1");
    if (!v.allFinite()) throw std::invalid_argument(std::string(what) + " has non-finite components");
}

inline void require_valid(const SolverConfig& config) {
    if (config.max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
    if (!(config.tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
    if (!(config.dedup_tolerance > 0.0)) throw std::invalid_argument("dedup_tolerance must be > 0");
    if (config.init_box_halfwidth && !(*config.init_box_halfwidth > 0.0))
        throw std::invalid_argument("init_box_halfwidth must be > 0");
    if (config.multi_init_count < 0) throw std::invalid_argument("multi_init_count must be >= 0");
}

}  // namespace hopflax
