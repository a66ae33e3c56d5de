#include "hopflax/problems.hpp"

#include "hopflax/random.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <memory>
#include <stdexcept>

namespace hopflax {

namespace {

double sign_or_zero(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// Largest eigenvalue of an SPD operator, by power iteration on a fixed
// deterministic start vector. `tol` is relative on the Rayleigh quotient.
double power_iteration(int dim, const std::function<Vector(const Vector&)>& apply,
                       double tol = 1e-10, int max_iters = 20000) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = 1.0 + static_cast<double>(i) / (2.0 * dim);
    v.normalize();

    double eigenvalue = 0.0;
    for (int k = 0; k < max_iters; ++k) {
        Vector w = apply(v);
        const double rayleigh = v.dot(w);
        const double norm = w.norm();
        if (norm == 0.0) return 0.0;
        v = w / norm;
        if (std::abs(rayleigh - eigenvalue) <= tol * std::max(1.0, std::abs(rayleigh))) {
            return rayleigh;
        }
        eigenvalue = rayleigh;
    }
    return eigenvalue;
}

struct LqrData {
    Eigen::MatrixXd Q;
    Eigen::MatrixXd R;
    Eigen::LLT<Eigen::MatrixXd> R_llt;  // precomputed, shared read-only
};

void require_spd(const Eigen::MatrixXd& m, const char* name) {
    if (m.rows() != m.cols() || m.rows() < 1)
        throw std::invalid_argument(std::string(name) + " must be square and non-empty");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument(std::string(name) + " is not symmetric");
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument(std::string(name) + " is not positive definite");
}

}  // namespace

LqrSpec LqrSpec::random(int dim, double scale_q, double scale_r, std::uint64_t seed) {
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
    if (!(scale_q > 0.0) || !(scale_r > 0.0))
        throw std::invalid_argument("scale factors must be > 0");

    Rng rng(seed);
    Eigen::MatrixXd a(dim, dim);
    Eigen::MatrixXd b(dim, dim);
    // A is filled completely (row-major) before B so one seed pins both.
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = rng.normal();
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) b(i, j) = rng.normal();

    LqrSpec spec;
    spec.Q = scale_q * (a.transpose() * a + Eigen::MatrixXd::Identity(dim, dim));
    spec.R = scale_r * (b.transpose() * b + Eigen::MatrixXd::Identity(dim, dim));
    spec.scale_q = scale_q;
    spec.scale_r = scale_r;
    spec.seed = seed;
    return spec;
}

ProblemDef quadratic_problem(int dim) {
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
    ProblemDef p;
    p.dim = dim;
    p.hamiltonian_grad = [](const Vector& v) { return v; };
    p.hamiltonian_conjugate = [](const Vector& q) { return 0.5 * q.squaredNorm(); };
    p.initial_value = [](const Vector& y) { return 0.5 * y.squaredNorm(); };
    p.initial_grad = [](const Vector& y) { return y; };
    p.lipschitz_H = 1.0;
    p.lipschitz_g = 1.0;
    p.lipschitz_H_conj = 1.0;
    p.exact_solution = [](const Vector& x, double t) {
        ExactSolution sol;
        sol.value = x.squaredNorm() / (2.0 * (1.0 + t));
        sol.gradient = x / (1.0 + t);
        return sol;
    };
    return p;
}

ProblemDef lqr_problem(const LqrSpec& spec) {
    require_spd(spec.Q, "Q");
    require_spd(spec.R, "R");

    auto data = std::make_shared<LqrData>();
    data->Q = spec.Q;
    data->R = spec.R;
    data->R_llt.compute(spec.R);

    const int dim = static_cast<int>(spec.Q.rows());

    ProblemDef p;
    p.dim = dim;
    p.hamiltonian_grad = [data](const Vector& v) -> Vector { return data->R_llt.solve(v); };
    p.hamiltonian_conjugate = [data](const Vector& q) { return 0.5 * q.dot(data->R * q); };
    p.initial_value = [data](const Vector& y) { return 0.5 * y.dot(data->Q * y); };
    p.initial_grad = [data](const Vector& y) -> Vector { return data->Q * y; };

    // Extreme eigenvalues by power iteration: L_H = lambda_max(R^{-1}),
    // L_g = lambda_max(Q), L_{H*} = lambda_max(R).
    p.lipschitz_H = power_iteration(
        dim, [&](const Vector& v) -> Vector { return data->R_llt.solve(v); });
    p.lipschitz_g = power_iteration(dim, [&](const Vector& v) -> Vector { return data->Q * v; });
    p.lipschitz_H_conj =
        power_iteration(dim, [&](const Vector& v) -> Vector { return data->R * v; });

    // y* solves (R + t Q) y = R x, the SPD form of (I + t R^{-1} Q) y = x.
    p.exact_solution = [data](const Vector& x, double t) {
        Eigen::LLT<Eigen::MatrixXd> system(data->R + t * data->Q);
        const Vector minimizer = system.solve(data->R * x);
        ExactSolution sol;
        sol.gradient = data->Q * minimizer;
        sol.value = 0.5 * sol.gradient.dot(x);
        return sol;
    };
    return p;
}

double lqr_map_spectral_norm(const LqrSpec& spec) {
    require_spd(spec.Q, "Q");
    require_spd(spec.R, "R");
    Eigen::LLT<Eigen::MatrixXd> r_llt(spec.R);
    const int dim = static_cast<int>(spec.Q.rows());
    // |R^{-1} Q|_2^2 = lambda_max(Q R^{-1} R^{-1} Q).
    const double lambda = power_iteration(dim, [&](const Vector& v) -> Vector {
        return spec.Q * r_llt.solve(r_llt.solve(spec.Q * v));
    });
    return std::sqrt(std::max(0.0, lambda));
}

ProblemDef cubic_problem(int dim) {
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
    ProblemDef p;
    p.dim = dim;
    p.hamiltonian_grad = [](const Vector& v) -> Vector { return v.norm() * v; };
    p.hamiltonian_conjugate = [](const Vector& q) {
        return (2.0 / 3.0) * std::pow(q.norm(), 1.5);
    };
    p.initial_value = [](const Vector& y) { return std::pow(y.norm(), 3.0); };
    p.initial_grad = [](const Vector& y) -> Vector { return 3.0 * y.norm() * y; };
    return p;
}

ProblemDef steady_kink_problem(int dim) {
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
    ProblemDef p;
    p.dim = dim;
    p.hamiltonian_grad = [](const Vector& v) { return v; };
    p.hamiltonian_conjugate = [](const Vector& q) { return 0.5 * q.squaredNorm(); };
    p.initial_value = [](const Vector& y) { return -y.lpNorm<1>(); };
    p.initial_grad = [](const Vector& y) -> Vector {
        return -y.unaryExpr([](double v) { return sign_or_zero(v); });
    };
    p.lipschitz_H = 1.0;  // grad g is discontinuous, so no L_g
    p.lipschitz_H_conj = 1.0;
    p.exact_solution = [dim](const Vector& x, double t) {
        ExactSolution sol;
        sol.value = -x.lpNorm<1>() - dim * t / 2.0;
        sol.gradient = -x.unaryExpr([](double v) { return sign_or_zero(v); });
        return sol;
    };
    return p;
}

ProblemDef unsteady_kink_problem(int dim) {
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
    ProblemDef p;
    p.dim = dim;
    p.hamiltonian_grad = [](const Vector& v) { return v; };
    p.hamiltonian_conjugate = [](const Vector& q) { return 0.5 * q.squaredNorm(); };
    p.initial_value = [](const Vector& y) {
        double sum = 0.0;
        for (Eigen::Index i = 0; i < y.size(); ++i) sum += std::min(y[i], 0.0);
        return sum;
    };
    p.initial_grad = [](const Vector& y) -> Vector {
        return y.unaryExpr([](double v) { return v < 0.0 ? 1.0 : 0.0; });
    };
    p.lipschitz_H = 1.0;
    p.lipschitz_H_conj = 1.0;
    p.exact_solution = [](const Vector& x, double t) {
        ExactSolution sol;
        sol.value = 0.0;
        sol.gradient = Vector::Zero(x.size());
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            if (x[i] < t / 2.0) {
                sol.value += x[i] - t / 2.0;
                sol.gradient[i] = 1.0;
            }
        }
        return sol;
    };
    return p;
}

ProblemDef abs_quadratic_problem() {
    ProblemDef p;
    p.dim = 1;
    p.hamiltonian_grad = [](const Vector& v) { return v; };
    p.hamiltonian_conjugate = [](const Vector& q) { return 0.5 * q.squaredNorm(); };
    p.initial_value = [](const Vector& y) { return y[0] * std::abs(y[0]); };
    p.initial_grad = [](const Vector& y) {
        Vector g(1);
        g[0] = 2.0 * std::abs(y[0]);
        return g;
    };
    p.lipschitz_H = 1.0;
    p.lipschitz_g = 2.0;
    p.lipschitz_H_conj = 1.0;
    return p;
}

ProblemDef log_quadratic_problem() {
    ProblemDef p;
    p.dim = 1;
    p.hamiltonian_grad = [](const Vector& v) { return v; };
    p.hamiltonian_conjugate = [](const Vector& q) { return 0.5 * q.squaredNorm(); };
    p.initial_value = [](const Vector& y) {
        return y[0] * y[0] * std::log(2.0 + std::abs(y[0]));
    };
    p.initial_grad = [](const Vector& y) {
        const double v = y[0];
        Vector g(1);
        g[0] = 2.0 * v * std::log(2.0 + std::abs(v)) + v * v * sign_or_zero(v) / (2.0 + std::abs(v));
        return g;
    };
    p.lipschitz_H = 1.0;
    p.lipschitz_H_conj = 1.0;
    return p;
}

BuiltinProblem make_problem(const std::string& id, int dim, std::uint64_t seed) {
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");

    BuiltinProblem entry;
    entry.id = id;
    if (id == "quadratic") {
        entry.problem = quadratic_problem(dim);
        entry.contraction_time_limit = 1.0;
    } else if (id == "lqr") {
        const double scale = 1.0 / dim;
        const LqrSpec spec = LqrSpec::random(dim, scale, scale, seed);
        entry.problem = lqr_problem(spec);
        entry.contraction_time_limit = 1.0 / lqr_map_spectral_norm(spec);
    } else if (id == "cubic") {
        entry.problem = cubic_problem(dim);
    } else if (id == "steady-kink") {
        entry.problem = steady_kink_problem(dim);
    } else if (id == "unsteady-kink") {
        entry.problem = unsteady_kink_problem(dim);
    } else if (id == "abs-quadratic") {
        if (dim != 1) throw std::invalid_argument("abs-quadratic is a 1-D problem");
        entry.problem = abs_quadratic_problem();
        entry.contraction_time_limit = 0.5;
    } else if (id == "log-quadratic") {
        if (dim != 1) throw std::invalid_argument("log-quadratic is a 1-D problem");
        entry.problem = log_quadratic_problem();
    } else {
        throw std::invalid_argument("unknown problem id '" + id + "'");
    }
    return entry;
}

const std::vector<std::string>& problem_ids() {
    static const std::vector<std::string> ids = {
        "quadratic",     "lqr",           "cubic",        "steady-kink",
        "unsteady-kink", "abs-quadratic", "log-quadratic"};
    return ids;
}

}  // namespace hopflax
