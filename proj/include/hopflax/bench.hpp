#pragma once

#include "hopflax/metrics.hpp"
#include "hopflax/problems.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hopflax::bench {

/// Batch-run configuration shared by the CLI and the test suites.
struct BenchOptions {
    std::string problem_id = "quadratic";
    std::vector<int> dims = {1};
    int points = 128;
    double sample_box_halfwidth = 1.0;  ///< x uniform in [-h, h]^d
    double t_min = 0.1;
    double t_max = 0.4;
    std::uint64_t seed = 0;
    int multi_init = 0;  ///< 0: single start at y0 = x
    double tolerance = 1e-6;
    int max_iters = 1000;
};

struct DimResult {
    BenchReport report;
    std::vector<PointRecord> records;
    bool all_converged = true;
};

/// Samples `points` queries (x uniform in the box, t uniform in the range,
/// capped at 0.9x the problem's contraction time limit when one is known),
/// solves them in parallel, and aggregates errors against the problem's exact
/// solution. Problems without one fall back to the grid oracle for dim <= 2
/// and are rejected above that. Queries are pre-sampled from a sub-seed mixed
/// from (seed, dim), so output is deterministic for fixed options.
DimResult run_dim(const BenchOptions& options, int dim);

std::vector<DimResult> run(const BenchOptions& options);

/// CSV with one row per report. header_comment, when nonempty, is emitted
/// first as a '#' line. include_timing=false writes 0 in the time_s column so
/// repeated runs are byte-identical. Reals carry 17 significant digits.
std::string reports_to_csv(const std::vector<BenchReport>& reports,
                           const std::string& header_comment, bool include_timing);

/// Parses reports_to_csv output ('#' lines skipped). Throws
/// std::runtime_error on malformed input.
std::vector<BenchReport> parse_reports_csv(const std::string& text);

std::string reports_to_json(const std::vector<BenchReport>& reports, bool include_timing);

/// Per-point companion table (dim, index, t, errors, iterations, ...).
std::string records_to_csv(const std::vector<DimResult>& results, bool include_timing);

/// Writes content to path via a temp file and atomic rename.
void write_text_atomic(const std::string& path, const std::string& content);

/// 1-D solution profile u(x, t) over an x grid for a list of times, for
/// external plotting.
struct ProfileOptions {
    std::string problem_id = "abs-quadratic";
    double x_min = -2.0;
    double x_max = 2.0;
    int nx = 401;
    std::vector<double> times = {0.0, 0.5, 1.0};
    int multi_init = 100;  ///< kinked solutions need multiple starts
    std::uint64_t seed = 0;
    double tolerance = 1e-6;
    int max_iters = 1000;
};

/// CSV with columns x,t,u,grad_u; t = 0 rows evaluate g and grad g directly.
/// Only 1-D problems are accepted.
std::string run_profile_csv(const ProfileOptions& options);

}  // namespace hopflax::bench
