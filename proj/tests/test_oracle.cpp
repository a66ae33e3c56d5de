#include "hopflax/oracle.hpp"
#include "hopflax/problems.hpp"

#include <doctest.h>

#include "test_util.hpp"

#include <cmath>

using namespace hopflax;
using testutil::single;

TEST_CASE("oracle recovers the quadratic closed form") {
    const ProblemDef problem = quadratic_problem(1);
    const Query query{single(1.0), 1.0};
    const OracleResult result = grid_minimize(problem, query, 3.0, 201, 4);

    CHECK(std::abs(result.value - 0.25) <= result.resolution);
    CHECK(result.value >= 0.25 - 1e-15);  // grid values cannot undercut the infimum
    // Near the minimum the energy varies by ~E''/2 * delta^2; once that drops
    // below one ulp of E the grid argmin location saturates around
    // sqrt(eps * E / E'') ~ 5e-9, regardless of the grid spacing.
    CHECK(std::abs(result.minimizer[0] - 0.5) <= std::max(result.resolution, 1e-8));
    CHECK(result.value == hopf_lax_energy(problem, query, result.minimizer));
    CHECK(result.grid_points_per_axis == 201);
    CHECK(result.refinement_levels == 4);
    CHECK(result.resolution ==
          doctest::Approx(2.0 * result.box_halfwidth / 200.0).epsilon(1e-15));

    // At a depth where spacing stays above that saturation scale, the
    // minimizer itself lands within one resolution of the analytic answer.
    const OracleResult coarse = grid_minimize(problem, query, 3.0, 201, 3);
    CHECK(std::abs(coarse.minimizer[0] - 0.5) <= coarse.resolution);
}

TEST_CASE("oracle finds a steady-kink basin at the origin") {
    const ProblemDef problem = steady_kink_problem(1);
    const OracleResult result = grid_minimize(problem, {single(0.0), 1.0}, 3.0, 201, 3);
    CHECK(result.value == doctest::Approx(-0.5).epsilon(1e-9));
    CHECK(std::abs(std::abs(result.minimizer[0]) - 1.0) <= 1e-6);
}

TEST_CASE("refinement levels never increase the value") {
    const ProblemDef problem = cubic_problem(2);
    Rng rng(7);
    const Query query{testutil::random_vector(rng, 2, 1.0), 0.005};
    double previous = std::numeric_limits<double>::infinity();
    for (int levels = 0; levels <= 4; ++levels) {
        const OracleResult result = grid_minimize(problem, query, 2.0, 41, levels);
        CHECK(result.value <= previous + 1e-15);
        previous = result.value;
    }
}

TEST_CASE("oracle value sandwiches the exact solution") {
    Rng rng(19);
    const LqrSpec spec = LqrSpec::random(2, 0.5, 0.5, 3);
    const ProblemDef problems[] = {quadratic_problem(2), lqr_problem(spec)};
    for (const ProblemDef& problem : problems) {
        for (int trial = 0; trial < 8; ++trial) {
            const Query query{testutil::random_vector(rng, 2, 1.0), rng.uniform(0.1, 0.3)};
            const OracleResult result = grid_minimize(problem, query, 2.0 + 2.5 * query.x.norm(),
                                                      81, 3);
            const double exact = problem.exact_solution(query.x, query.t).value;
            CHECK(result.value >= exact - 1e-12);

            // Local slope of the energy near the oracle minimizer, sampled at
            // the resolution scale, bounds the one-cell value error.
            double slope = 0.0;
            const double delta = 4.0 * result.resolution;
            for (int probe = 0; probe < 8; ++probe) {
                Vector direction = testutil::random_vector(rng, 2, 1.0);
                direction.normalize();
                const double perturbed = hopf_lax_energy(
                    problem, query, (result.minimizer + delta * direction).eval());
                slope = std::max(slope, std::abs(perturbed - result.value) / delta);
            }
            CHECK(result.value <= exact + slope * result.resolution + 1e-12);
        }
    }
}

TEST_CASE("oracle preconditions") {
    const ProblemDef big = quadratic_problem(4);
    CHECK_THROWS_AS(grid_minimize(big, {Vector::Zero(4), 1.0}, 1.0, 11, 1),
                    std::invalid_argument);
    const ProblemDef p = quadratic_problem(1);
    CHECK_THROWS_AS(grid_minimize(p, {single(0.0), 0.0}, 1.0, 11, 1), std::invalid_argument);
    CHECK_THROWS_AS(grid_minimize(p, {single(0.0), 1.0}, 1.0, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(grid_minimize(p, {single(0.0), 1.0}, -1.0, 11, 1), std::invalid_argument);
}

TEST_CASE("non-finite energies propagate out of the oracle") {
    ProblemDef problem = quadratic_problem(1);
    problem.initial_value = [](const Vector& y) {
        return y[0] > 0.5 ? std::numeric_limits<double>::infinity() : 0.0;
    };
    CHECK_THROWS_AS(grid_minimize(problem, {single(0.0), 1.0}, 2.0, 11, 0), EvaluationError);
}
