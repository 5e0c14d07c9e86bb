#include "doctest.h"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spikewalk/dtmc/sampler.hpp"
#include "spikewalk/error.hpp"
#include "spikewalk/fk/estimators.hpp"
#include "spikewalk/problems/problems.hpp"

using namespace spikewalk;
using namespace spikewalk::fk;

namespace {

const TimeStateFn kZero = [](double, int) { return 0.0; };

dtmc::TransitionModel hop_then_stop(double dt) {
    // 0 -> 1 with certainty; 1 is absorbing.
    dtmc::TransitionModel m;
    m.dt = dt;
    Eigen::MatrixXd p(2, 2);
    p << 0.0, 1.0, 0.0, 1.0;
    m.steps = {p};
    m.absorbing = 1;
    return m;
}

dtmc::TransitionModel leaky_three_state() {
    // Two transient states draining into an absorbing third.
    dtmc::TransitionModel m;
    m.dt = 0.1;
    Eigen::MatrixXd p(3, 3);
    p << 0.3, 0.2, 0.5, //
        0.0, 0.5, 0.5,  //
        0.0, 0.0, 1.0;
    m.steps = {p};
    m.absorbing = 2;
    return m;
}

} // namespace

TEST_CASE("initial-value estimate at time zero is exactly the payoff mean") {
    const problems::Problem prob = problems::make_boltzmann_problem();
    const dtmc::PathEnsemble paths = dtmc::sample_paths(prob.chain, 0, 500, 20, 11);

    const Estimate e = estimate_initial_value(paths, prob.g_fn(), kZero, kZero, 0);
    CHECK(e.value == 5.0); // every path starts in state 0
    CHECK(e.sample_count == 500);
    CHECK(e.t == 0.0);
    REQUIRE(e.standard_error.has_value());
    CHECK(*e.standard_error == 0.0);
}

TEST_CASE("velocity-flip estimate matches its closed form within sampling error") {
    const problems::Problem prob = problems::make_boltzmann_problem();
    REQUIRE(prob.oracle);
    const int steps = 100; // t = 1 at dt = 0.01
    const dtmc::PathEnsemble paths = dtmc::sample_paths(prob.chain, 0, 20000, steps, 2025);

    const TimeStateFn c = [&](double, int) { return prob.c_const; };
    const Estimate e = estimate_initial_value(paths, prob.g_fn(), c, kZero, steps);
    REQUIRE(e.standard_error.has_value());

    const double truth = prob.oracle(1.0, 0);
    CHECK(truth == doctest::Approx(2.430209410288997).epsilon(1e-12));
    CHECK(std::abs(e.value - truth) <= 4.0 * *e.standard_error);
    CHECK(e.t == doctest::Approx(1.0));
}

TEST_CASE("path and density estimators agree for constant reaction rates") {
    const problems::Problem prob = problems::make_boltzmann_problem();
    const dtmc::PathEnsemble paths = dtmc::sample_paths(prob.chain, 1, 3000, 50, 5);
    const DensitySeries density = dtmc::to_density(paths);

    const TimeStateFn c = [&](double, int) { return prob.c_const; };
    for (int k : {0, 7, 50}) {
        const Estimate from_paths = estimate_initial_value(paths, prob.g_fn(), c, kZero, k);
        const Estimate from_density = estimate_from_density(density, prob.g_fn(), prob.c_const, k);
        CHECK(std::abs(from_paths.value - from_density.value) <=
              1e-12 * std::max(1.0, std::abs(from_paths.value)));
        CHECK(from_density.sample_count == 3000);
    }

    // The guarded overload accepts a c that is constant over the support...
    const Estimate guarded = estimate_from_density(density, prob.g_fn(), c, 50);
    CHECK(guarded.value ==
          doctest::Approx(estimate_from_density(density, prob.g_fn(), prob.c_const, 50).value)
              .epsilon(1e-15));
    // ...and refuses one that varies by state.
    const TimeStateFn varying = [](double, int s) { return 0.1 * s; };
    CHECK_THROWS_AS(estimate_from_density(density, prob.g_fn(), varying, 50), Error);
}

TEST_CASE("running-source accumulation uses left endpoints") {
    // One self-looping state isolates the time integral of f.
    dtmc::TransitionModel m;
    m.dt = 0.25;
    m.steps = {Eigen::MatrixXd::Ones(1, 1)};
    const dtmc::PathEnsemble paths = dtmc::sample_paths(m, 0, 4, 6, 1);

    const StateFn zero_g = [](int) { return 0.0; };
    const double c = 0.8;
    const TimeStateFn c_fn = [&](double, int) { return c; };
    const TimeStateFn f_one = [](double, int) { return 1.0; };

    const Estimate e = estimate_initial_value(paths, zero_g, c_fn, f_one, 6);
    double expected = 0.0;
    for (int k = 0; k < 6; ++k) expected += std::exp(c * k * m.dt) * m.dt;
    CHECK(e.value == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("payoff linearity is exact") {
    const problems::Problem prob = problems::make_boltzmann_problem();
    const dtmc::PathEnsemble paths = dtmc::sample_paths(prob.chain, 0, 1000, 30, 9);
    const TimeStateFn c = [&](double, int) { return prob.c_const; };

    const StateFn g = prob.g_fn();
    const StateFn doubled = [&](int s) { return 2.0 * g(s); };
    const Estimate e1 = estimate_initial_value(paths, g, c, kZero, 30);
    const Estimate e2 = estimate_initial_value(paths, doubled, c, kZero, 30);
    CHECK(e2.value == 2.0 * e1.value);
}

TEST_CASE("stopped estimator on a deterministic absorbing hop") {
    const dtmc::TransitionModel m = hop_then_stop(0.5);
    const dtmc::PathEnsemble paths = dtmc::sample_paths(m, 0, 16, 8, 3);

    const StateFn g_boundary = [](int s) { return s == 1 ? 1.5 : 0.0; };
    const StateFn f = [](int s) { return s == 0 ? 2.0 : 0.0; };

    const Estimate bare = estimate_stopped(paths, g_boundary, [](int) { return 0.0; });
    CHECK(bare.value == 1.5);
    REQUIRE(bare.standard_error.has_value());
    CHECK(*bare.standard_error == 0.0);

    // One step spent at state 0 before stopping: payoff 1.5 + 3 * 2 * dt.
    const Estimate sourced = estimate_stopped(paths, g_boundary, f, 3.0);
    CHECK(sourced.value == doctest::Approx(4.5).epsilon(1e-15));
}

TEST_CASE("density collapse of the stopped estimator matches the path form") {
    const dtmc::TransitionModel m = leaky_three_state();
    const dtmc::PathEnsemble paths = dtmc::sample_paths(m, 0, 500, 400, 77);
    for (size_t p = 0; p < paths.paths.size(); ++p) REQUIRE(paths.stopped(p));

    const StateFn zero_g = [](int) { return 0.0; };
    const StateFn f = [](int s) { return s == 0 ? 1.0 : (s == 1 ? 0.7 : 0.0); };

    const Estimate from_paths = estimate_stopped(paths, zero_g, f, 2.0);
    const Estimate from_density = estimate_stopped(dtmc::to_density(paths), 2, f, 2.0);
    CHECK(std::abs(from_paths.value - from_density.value) <=
          1e-12 * std::max(1.0, std::abs(from_paths.value)));

    // Walkers still in transit invalidate the collapse.
    const dtmc::PathEnsemble young = dtmc::sample_paths(m, 0, 500, 2, 77);
    CHECK_THROWS_AS(estimate_stopped(dtmc::to_density(young), 2, f, 2.0), Error);
}

TEST_CASE("standard error of a two-point sample") {
    CHECK(standard_error({0.0, 2.0}) == 1.0);
    CHECK_THROWS_AS(standard_error({1.0}), Error);
    CHECK_THROWS_AS(standard_error({}), Error);
}

TEST_CASE("density estimator rejects out-of-range time indices") {
    const problems::Problem prob = problems::make_boltzmann_problem();
    const DensitySeries density =
        dtmc::to_density(dtmc::sample_paths(prob.chain, 0, 100, 10, 4));
    CHECK_THROWS_AS(estimate_from_density(density, prob.g_fn(), 0.0, 11), Error);
    CHECK_THROWS_AS(estimate_from_density(density, prob.g_fn(), 0.0, -1), Error);
}

TEST_CASE("solution table serializes one row per state") {
    Eigen::MatrixXd positions(2, 1);
    positions << -1.0, 1.0;
    std::vector<Estimate> per_state(2);
    per_state[0].value = 0.5;
    per_state[0].standard_error = 0.01;
    per_state[1].value = -0.25;

    std::ostringstream os;
    write_solution_csv(os, positions, per_state);
    std::istringstream is(os.str());
    std::string line;
    int rows = 0, header = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const long commas = std::count(line.begin(), line.end(), ',');
        CHECK(commas >= 3); // state, position, value, stderr
        if (std::isalpha(static_cast<unsigned char>(line[0])))
            ++header;
        else
            ++rows;
    }
    CHECK(rows == 2);
    CHECK(header <= 1);

    std::ostringstream js;
    per_state[0].sample_count = 12;
    per_state[0].t = 0.5;
    per_state[0].write_json(js);
    CHECK(js.str().find("\"value\"") != std::string::npos);
    CHECK(js.str().find("\"stderr\"") != std::string::npos);
}
