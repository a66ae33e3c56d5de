#include "hopflax/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace hopflax {

BenchReport aggregate(const std::vector<PointRecord>& records) {
    if (records.empty()) throw std::invalid_argument("aggregate requires at least one record");

    BenchReport report;
    report.n_points = static_cast<int>(records.size());

    double sum_sq_value = 0.0, sum_sq_grad = 0.0, sum_iters = 0.0;
    for (const PointRecord& rec : records) {
        if (!is_finite(rec.value_err) || !is_finite(rec.grad_err) || rec.value_err < 0.0 ||
            rec.grad_err < 0.0)
            throw std::invalid_argument("point errors must be finite and nonnegative");
        sum_sq_value += rec.value_err * rec.value_err;
        sum_sq_grad += rec.grad_err * rec.grad_err;
        sum_iters += rec.iterations;
        report.total_time += rec.wall_time;
        report.linf_value_err = std::max(report.linf_value_err, rec.value_err);
        report.linf_grad_err = std::max(report.linf_grad_err, rec.grad_err);
    }
    const double n = static_cast<double>(records.size());
    report.l2_value_err = sum_sq_value / n;  // mean of squares by convention
    report.l2_grad_err = sum_sq_grad / n;
    report.mean_iterations = sum_iters / n;
    return report;
}

}  // namespace hopflax
