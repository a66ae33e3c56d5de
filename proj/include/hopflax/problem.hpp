#pragma once

#include "hopflax/types.hpp"

#include <functional>

namespace hopflax {

/// Reference value and spatial gradient of a known solution at one query.
struct ExactSolution {
    double value = 0.0;
    Vector gradient;
};

using ScalarFn = std::function<double(const Vector&)>;
using VectorFn = std::function<Vector(const Vector&)>;
using ExactFn = std::function<ExactSolution(const Vector&, double)>;

/// A first-order problem u_t + H(grad u) = 0, u(x,0) = g(x), described by the
/// evaluators the solver needs. Evaluators must be pure and thread-safe; where
/// g is non-smooth, initial_grad must return a single-valued subgradient
/// selection. Lipschitz constants are optional metadata used for contraction
/// diagnostics and error bounds.
struct ProblemDef {
    int dim = 0;
    VectorFn hamiltonian_grad;       ///< grad H
    ScalarFn hamiltonian_conjugate;  ///< H*, the Legendre transform of H
    ScalarFn initial_value;          ///< g
    VectorFn initial_grad;           ///< grad g (subgradient selection at kinks)
    std::optional<double> lipschitz_H;       ///< L_H for grad H
    std::optional<double> lipschitz_g;       ///< L_g for grad g
    std::optional<double> lipschitz_H_conj;  ///< L_{H*} for H* on the working domain
    ExactFn exact_solution;  ///< empty when no closed form is known

    bool has_exact_solution() const { return static_cast<bool>(exact_solution); }
};

/// Variational energy t * H*((x - y) / t) + g(y). Requires query.t > 0; the
/// t = 0 limit is the initial condition and must be special-cased by callers.
double hopf_lax_energy(const ProblemDef& problem, const Query& query, const Vector& y);

/// One application of the minimizer map F(y) = x - t * grad H(grad g(y)).
/// Returns x when t = 0. Throws EvaluationError if an evaluator produces a
/// non-finite value.
Vector fixed_point_map(const ProblemDef& problem, const Query& query, const Vector& y);

}  // namespace hopflax
