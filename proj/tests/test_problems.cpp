#include "hopflax/oracle.hpp"
#include "hopflax/picard.hpp"
#include "hopflax/problems.hpp"

#include <doctest.h>

#include "test_util.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>

using namespace hopflax;
using testutil::single;

TEST_CASE("quadratic problem closed form") {
    const ProblemDef p1 = quadratic_problem(1);
    const ExactSolution at_two = p1.exact_solution(single(2.0), 1.0);
    CHECK(at_two.value == doctest::Approx(1.0));
    CHECK(at_two.gradient[0] == doctest::Approx(1.0));

    const ProblemDef p3 = quadratic_problem(3);
    CHECK(p3.exact_solution(Vector::Zero(3), 0.7).value == 0.0);

    const ProblemDef p100 = quadratic_problem(100);
    const Vector ones = Vector::Ones(100);
    CHECK(p100.exact_solution(ones, 0.5).value == doctest::Approx(100.0 / 3.0));

    SolverConfig config;
    const SolveResult solved = solve(p100, {ones, 0.5}, config);
    REQUIRE(solved.converged);
    CHECK(std::abs(solved.value - 100.0 / 3.0) <= 1e-6);
}

TEST_CASE("scalar LQR closed form") {
    LqrSpec spec;
    spec.Q = Eigen::MatrixXd::Constant(1, 1, 2.0);
    spec.R = Eigen::MatrixXd::Constant(1, 1, 1.0);
    const ProblemDef problem = lqr_problem(spec);

    const ExactSolution sol = problem.exact_solution(single(1.0), 0.25);
    CHECK(sol.value == doctest::Approx(2.0 / 3.0));
    CHECK(sol.gradient[0] == doctest::Approx(2.0 * 2.0 / 3.0));  // Q y*

    CHECK(problem.exact_solution(single(0.0), 0.8).value == 0.0);

    const ExactSolution at_zero_t = problem.exact_solution(single(3.0), 0.0);
    CHECK(at_zero_t.value == doctest::Approx(0.5 * 2.0 * 9.0));

    CHECK(*problem.lipschitz_H == doctest::Approx(1.0));
    CHECK(*problem.lipschitz_g == doctest::Approx(2.0));
    CHECK(*problem.lipschitz_H_conj == doctest::Approx(1.0));
}

TEST_CASE("LQR rejects non-SPD input") {
    LqrSpec bad;
    bad.Q = Eigen::MatrixXd::Zero(2, 2);
    bad.Q << 1.0, 0.5, -0.5, 1.0;  // not symmetric
    bad.R = Eigen::MatrixXd::Identity(2, 2);
    CHECK_THROWS_AS(lqr_problem(bad), std::invalid_argument);

    LqrSpec indefinite;
    indefinite.Q = Eigen::MatrixXd::Identity(2, 2);
    indefinite.Q(1, 1) = -1.0;
    indefinite.R = Eigen::MatrixXd::Identity(2, 2);
    CHECK_THROWS_AS(lqr_problem(indefinite), std::invalid_argument);
}

TEST_CASE("random LQR matrices are SPD and reproducible") {
    const LqrSpec a = LqrSpec::random(6, 1.0 / 6.0, 1.0 / 6.0, 42);
    const LqrSpec b = LqrSpec::random(6, 1.0 / 6.0, 1.0 / 6.0, 42);
    CHECK(a.Q == b.Q);
    CHECK(a.R == b.R);
    CHECK((a.Q - a.Q.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((a.R - a.R.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(Eigen::LLT<Eigen::MatrixXd>(a.Q).info() == Eigen::Success);
    CHECK(Eigen::LLT<Eigen::MatrixXd>(a.R).info() == Eigen::Success);

    const LqrSpec c = LqrSpec::random(6, 1.0 / 6.0, 1.0 / 6.0, 43);
    CHECK(a.Q != c.Q);
}

TEST_CASE("power-iteration constants match a dense eigensolver") {
    const LqrSpec spec = LqrSpec::random(12, 1.0 / 12.0, 1.0 / 12.0, 8);
    const ProblemDef problem = lqr_problem(spec);

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig_q(spec.Q);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig_r(spec.R);
    CHECK(*problem.lipschitz_g ==
          doctest::Approx(eig_q.eigenvalues().maxCoeff()).epsilon(1e-8));
    CHECK(*problem.lipschitz_H_conj ==
          doctest::Approx(eig_r.eigenvalues().maxCoeff()).epsilon(1e-8));
    CHECK(*problem.lipschitz_H ==
          doctest::Approx(1.0 / eig_r.eigenvalues().minCoeff()).epsilon(1e-8));

    const Eigen::MatrixXd map = spec.R.inverse() * spec.Q;
    const double reference_norm = map.jacobiSvd().singularValues().maxCoeff();
    CHECK(lqr_map_spectral_norm(spec) == doctest::Approx(reference_norm).epsilon(1e-8));
}

TEST_CASE("LQR closed form satisfies the fixed-point relation") {
    Rng rng(101);
    const LqrSpec spec = LqrSpec::random(10, 0.1, 0.1, 77);
    const double t_limit = 1.0 / lqr_map_spectral_norm(spec);
    Eigen::LLT<Eigen::MatrixXd> r_llt(spec.R);

    for (int trial = 0; trial < 100; ++trial) {
        const Vector x = testutil::random_vector(rng, 10, 1.0);
        const double t = rng.uniform(0.0, 0.95) * t_limit;
        const Vector y_star = Eigen::LLT<Eigen::MatrixXd>(spec.R + t * spec.Q).solve(spec.R * x);
        const Vector mapped = x - t * r_llt.solve(spec.Q * y_star).eval();
        CHECK((y_star - mapped).norm() <= 1e-10);
    }
}

TEST_CASE("cubic problem evaluators") {
    const ProblemDef p2 = cubic_problem(2);
    CHECK(p2.hamiltonian_grad(Vector::Zero(2)).isZero(0.0));
    Vector e1(2);
    e1 << 1.0, 0.0;
    const Vector grad = p2.initial_grad(e1);
    CHECK(grad[0] == doctest::Approx(3.0));
    CHECK(grad[1] == 0.0);
    CHECK(p2.hamiltonian_conjugate(4.0 * e1) ==
          doctest::Approx((2.0 / 3.0) * std::pow(4.0, 1.5)));
    CHECK_FALSE(p2.lipschitz_H.has_value());
    CHECK_FALSE(p2.has_exact_solution());

    // In 1-D the composed map collapses to F(y) = x - 9 t |y|^3 y.
    const ProblemDef p1 = cubic_problem(1);
    Rng rng(2);
    for (int i = 0; i < 20; ++i) {
        const double x = rng.uniform(-2.0, 2.0), t = rng.uniform(0.0, 0.1);
        const double y = rng.uniform(-2.0, 2.0);
        const double expected = x - 9.0 * t * std::abs(y) * std::abs(y) * std::abs(y) * y;
        CHECK(fixed_point_map(p1, {single(x), t}, single(y))[0] ==
              doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("steady kink exact solution and off-kink fixed point") {
    const ProblemDef p2 = steady_kink_problem(2);
    Vector x(2);
    x << 1.0, -1.0;
    CHECK(p2.exact_solution(x, 1.0).value == doctest::Approx(-3.0));

    const ProblemDef p1 = steady_kink_problem(1);
    CHECK(p1.exact_solution(single(0.0), 1.0).value == doctest::Approx(-0.5));

    // Far from the kink there is a single fixed point y = x + t.
    const Query query{single(5.0), 0.1};
    const SolveResult solved = solve(p1, query, SolverConfig{});
    REQUIRE(solved.converged);
    CHECK(solved.minimizer[0] == doctest::Approx(5.1));
    CHECK(solved.value == doctest::Approx(-5.05));
}

TEST_CASE("unsteady kink exact solution") {
    const ProblemDef p1 = unsteady_kink_problem(1);
    CHECK(p1.exact_solution(single(0.0), 1.0).value == doctest::Approx(-0.5));

    const ProblemDef p3 = unsteady_kink_problem(3);
    CHECK(p3.exact_solution(Vector::Ones(3), 1.0).value == 0.0);

    const ProblemDef p2 = unsteady_kink_problem(2);
    Vector x(2);
    x << 0.0, 1.0;
    CHECK(p2.exact_solution(x, 1.0).value == doctest::Approx(-0.5));
}

TEST_CASE("abs-quadratic derivatives and oracle agreement") {
    const ProblemDef problem = abs_quadratic_problem();
    CHECK(problem.initial_value(single(-2.0)) == doctest::Approx(-4.0));
    CHECK(problem.initial_grad(single(-2.0))[0] == doctest::Approx(4.0));

    SolverConfig config;
    config.tolerance = 1e-10;
    const Query query{single(0.5), 0.2};
    const SolveResult solved = solve(problem, query, config);
    REQUIRE(solved.converged);
    const OracleResult oracle = grid_minimize(problem, query, 201, 3);
    CHECK(std::abs(solved.value - oracle.value) <= 1e-4);
}

TEST_CASE("log-quadratic derivatives and oracle agreement") {
    const ProblemDef problem = log_quadratic_problem();
    CHECK(problem.initial_value(single(0.0)) == 0.0);
    CHECK(problem.initial_grad(single(0.0))[0] == 0.0);
    CHECK(problem.initial_value(single(1.0)) == doctest::Approx(std::log(3.0)));

    SolverConfig config;
    config.tolerance = 1e-10;
    const Query query{single(1.0), 0.1};
    const SolveResult solved = solve(problem, query, config);
    REQUIRE(solved.converged);
    const OracleResult oracle = grid_minimize(problem, query, 201, 3);
    CHECK(std::abs(solved.value - oracle.value) <= 1e-4);
}

TEST_CASE("exact solutions lie below the Hopf-Lax energy") {
    Rng rng(113);
    const LqrSpec spec = LqrSpec::random(3, 1.0 / 3.0, 1.0 / 3.0, 4);
    const ProblemDef problems[] = {quadratic_problem(3), lqr_problem(spec),
                                   steady_kink_problem(3), unsteady_kink_problem(3)};
    for (const ProblemDef& problem : problems) {
        REQUIRE(problem.has_exact_solution());
        for (int trial = 0; trial < 50; ++trial) {
            const Query query{testutil::random_vector(rng, 3, 1.5), rng.uniform(0.05, 1.5)};
            const Vector y = testutil::random_vector(rng, 3, 3.0);
            const double exact = problem.exact_solution(query.x, query.t).value;
            CHECK(exact <= hopf_lax_energy(problem, query, y) + 1e-9);
        }
    }
}

TEST_CASE("smooth exact solutions satisfy the PDE residual") {
    Rng rng(127);
    const LqrSpec spec = LqrSpec::random(3, 1.0 / 3.0, 1.0 / 3.0, 16);
    Eigen::LLT<Eigen::MatrixXd> r_llt(spec.R);

    // H evaluated independently of ProblemDef, which stores only grad H.
    const auto quad_h = [](const Vector& p) { return 0.5 * p.squaredNorm(); };
    const auto lqr_h = [&](const Vector& p) { return 0.5 * p.dot(r_llt.solve(p)); };

    const ProblemDef quad = quadratic_problem(3);
    const ProblemDef lqr = lqr_problem(spec);

    for (int trial = 0; trial < 40; ++trial) {
        const Vector x = testutil::random_vector(rng, 3, 1.0);
        const double t = rng.uniform(0.1, 1.0);
        const double step = 1e-5;
        {
            const double u_t = (quad.exact_solution(x, t + step).value -
                                quad.exact_solution(x, t - step).value) /
                               (2.0 * step);
            CHECK(std::abs(u_t + quad_h(quad.exact_solution(x, t).gradient)) <= 1e-5);
        }
        {
            const double u_t = (lqr.exact_solution(x, t + step).value -
                                lqr.exact_solution(x, t - step).value) /
                               (2.0 * step);
            CHECK(std::abs(u_t + lqr_h(lqr.exact_solution(x, t).gradient)) <= 1e-5);
        }
    }
}

TEST_CASE("initial gradients match finite differences away from kinks") {
    Rng rng(131);
    const LqrSpec spec = LqrSpec::random(2, 0.5, 0.5, 23);
    const ProblemDef problems[] = {
        quadratic_problem(2), lqr_problem(spec),      cubic_problem(2),
        steady_kink_problem(2), unsteady_kink_problem(2), abs_quadratic_problem(),
        log_quadratic_problem()};
    for (const ProblemDef& problem : problems) {
        for (int trial = 0; trial < 20; ++trial) {
            Vector y = testutil::random_vector(rng, problem.dim, 2.0);
            for (Eigen::Index i = 0; i < y.size(); ++i)
                if (std::abs(y[i]) < 0.05) y[i] += 0.1;  // keep clear of kinks
            const Vector fd = testutil::fd_gradient(problem.initial_value, y, 1e-6);
            CHECK((problem.initial_grad(y) - fd).lpNorm<Eigen::Infinity>() <= 1e-6);
        }
    }
}

TEST_CASE("problem registry") {
    CHECK(problem_ids().size() == 7);
    for (const std::string& id : problem_ids()) {
        const int dim = (id == "abs-quadratic" || id == "log-quadratic") ? 1 : 3;
        const BuiltinProblem built = make_problem(id, dim, 5);
        CHECK(built.problem.dim == dim);
        CHECK(built.id == id);
    }
    CHECK_THROWS_AS(make_problem("unknown", 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_problem("abs-quadratic", 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_problem("quadratic", 0, 0), std::invalid_argument);

    const BuiltinProblem lqr = make_problem("lqr", 4, 9);
    REQUIRE(lqr.contraction_time_limit.has_value());
    const LqrSpec spec = LqrSpec::random(4, 0.25, 0.25, 9);
    CHECK(*lqr.contraction_time_limit ==
          doctest::Approx(1.0 / lqr_map_spectral_norm(spec)).epsilon(1e-9));

    const BuiltinProblem quad = make_problem("quadratic", 2, 0);
    CHECK(*quad.contraction_time_limit == doctest::Approx(1.0));
}
