#include "hopflax/problem.hpp"

#include <stdexcept>
#include <string>

namespace hopflax {

namespace {

void check_shapes(const ProblemDef& problem, const Query& query, const Vector& y) {
    if (problem.dim < 1) throw std::invalid_argument("problem dimension must be >= 1");
    if (query.x.size() != problem.dim)
        throw std::invalid_argument("query state has dimension " + std::to_string(query.x.size()) +
                                    ", problem expects " + std::to_string(problem.dim));
    if (y.size() != problem.dim)
        throw std::invalid_argument("candidate point has dimension " + std::to_string(y.size()) +
                                    ", problem expects " + std::to_string(problem.dim));
    if (!(query.t >= 0.0)) throw std::invalid_argument("query time must be >= 0");
}

}  // namespace

double hopf_lax_energy(const ProblemDef& problem, const Query& query, const Vector& y) {
    check_shapes(problem, query, y);
    if (!(query.t > 0.0))
        throw std::invalid_argument("hopf_lax_energy requires t > 0; at t = 0 the value is g(x)");

    const Vector velocity = (query.x - y) / query.t;
    const double conjugate = problem.hamiltonian_conjugate(velocity);
    if (!is_finite(conjugate)) throw EvaluationError("hamiltonian_conjugate");
    const double initial = problem.initial_value(y);
    if (!is_finite(initial)) throw EvaluationError("initial_value");
    return query.t * conjugate + initial;
}

Vector fixed_point_map(const ProblemDef& problem, const Query& query, const Vector& y) {
    check_shapes(problem, query, y);
    if (query.t == 0.0) return query.x;

    const Vector grad_g = problem.initial_grad(y);
    if (grad_g.size() != problem.dim || !is_finite(grad_g)) throw EvaluationError("initial_grad");
    const Vector grad_h = problem.hamiltonian_grad(grad_g);
    if (grad_h.size() != problem.dim || !is_finite(grad_h))
        throw EvaluationError("hamiltonian_grad");
    return query.x - query.t * grad_h;
}

}  // namespace hopflax
