#pragma once

#include "hopflax/problem.hpp"
#include "hopflax/random.hpp"

#include <functional>

namespace testutil {

using hopflax::Vector;

inline Vector random_vector(hopflax::Rng& rng, int dim, double halfwidth) {
    return rng.uniform_box(Vector::Zero(dim), halfwidth);
}

/// Central finite-difference gradient of a scalar function.
inline Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& at,
                          double step = 1e-5) {
    Vector grad(at.size());
    for (Eigen::Index i = 0; i < at.size(); ++i) {
        Vector hi = at, lo = at;
        hi[i] += step;
        lo[i] -= step;
        grad[i] = (f(hi) - f(lo)) / (2.0 * step);
    }
    return grad;
}

inline Vector single(double v) { return Vector::Constant(1, v); }

}  // namespace testutil
