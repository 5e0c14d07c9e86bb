#include "spikewalk/problems/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spikewalk/error.hpp"
#include "spikewalk/geom/surface_chains.hpp"
#include "spikewalk/problems/harmonics.hpp"

namespace spikewalk::problems {

fk::StateFn Problem::g_fn() const {
    return [values = g](int s) {
        return s >= 0 && s < static_cast<int>(values.size()) ? values[s] : 0.0;
    };
}

fk::StateFn Problem::f_fn() const {
    if (f.empty()) return [](int) { return 0.0; };
    return [values = f](int s) {
        return s >= 0 && s < static_cast<int>(values.size()) ? values[s] : 0.0;
    };
}

Problem make_boltzmann_problem() {
    Problem p;
    p.name = "boltzmann";
    const double dt = 0.01;
    const double flip = 0.05 * std::exp(-0.05) / 2.0;
    Eigen::MatrixXd step(2, 2);
    step << 1.0 - flip, flip, flip, 1.0 - flip;
    p.chain.dt = dt;
    p.chain.steps = {step};
    p.chain.positions = Eigen::MatrixXd(2, 1);
    p.chain.positions << 1.0, -1.0;
    p.chain.validate();
    p.g = {5.0, 3.0};
    p.c_const = -0.5;
    p.oracle = [](double t, int s) {
        const double sign = s == 0 ? 1.0 : -1.0;
        return std::exp(-0.5 * t) * (4.0 + sign * std::exp(-5.0 * t));
    };
    p.estimator = EstimatorKind::kInitialValue;
    p.default_steps = 200;
    p.default_walkers = 10000;
    p.starts = {0, 1};
    return p;
}

Problem make_fluence_problem() {
    Problem p;
    p.name = "fluence";
    constexpr int cells = 30;
    constexpr int n = cells * cells;  // transient states
    constexpr int absorbing = n;      // exit state
    const double dt = 0.01;
    const double scatter = 0.3 * std::exp(-0.3); // per-step interaction prob.
    Eigen::MatrixXd step = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int i = 1; i <= cells; ++i) {
        for (int j = 1; j <= cells; ++j) {
            const int s = (i - 1) * cells + (j - 1);
            const int k = i - (2 * j - 31); // cell reached after free flight
            if (k < 1 || k > cells) {
                step(s, absorbing) = 1.0;
                continue;
            }
            for (int l = 1; l <= cells; ++l) {
                double prob = scatter / cells;
                if (l == j) prob += 1.0 - scatter;
                step(s, (k - 1) * cells + (l - 1)) = prob;
            }
            dtmc::repair_row_sum(step.row(s));
        }
    }
    step(absorbing, absorbing) = 1.0;
    p.chain.dt = dt;
    p.chain.steps = {step};
    p.chain.absorbing = absorbing;
    p.chain.validate();
    p.g.assign(n + 1, 0.0);
    p.f.assign(n + 1, 0.0);
    for (int i = 1; i <= cells; ++i) {
        const double x = (2.0 * i - 31.0) / 30.0;
        if (std::abs(x) < 0.5)
            for (int j = 1; j <= cells; ++j)
                p.f[(i - 1) * cells + (j - 1)] = 0.015;
    }
    p.estimator = EstimatorKind::kStopped;
    p.speed_scale = 200.0;
    p.default_steps = 2000;
    p.default_walkers = 6250;
    p.starts.resize(n);
    std::iota(p.starts.begin(), p.starts.end(), 0);
    return p;
}

Problem make_sphere_problem() {
    Problem p;
    p.name = "sphere";
    p.mesh = geom::build_geodesic_sphere(2);
    const double alpha = 1.0 / 42.0;
    const double dt = 0.1;
    p.chain = geom::sphere_transition_matrix(*p.mesh, alpha, dt);
    const int n = p.chain.n_states();
    p.g.resize(n);
    const double mix = std::sqrt(14.0 / 11.0);
    for (int s = 0; s < n; ++s) {
        const Eigen::Vector3d c = p.mesh->states.row(s);
        const double theta = std::acos(std::clamp(c.z(), -1.0, 1.0));
        const double phi = std::atan2(c.y(), c.x());
        p.g[s] = eval_real_spherical_harmonic(6, 0, theta, phi) +
                 mix * eval_real_spherical_harmonic(6, 5, theta, phi);
    }
    // g is a Laplace-Beltrami eigenfunction with eigenvalue l(l+1) = 42, so
    // with diffusivity 1/42 the solution decays at unit rate.
    p.oracle = [g = p.g](double t, int s) { return std::exp(-t) * g[s]; };
    p.estimator = EstimatorKind::kInitialValue;
    p.default_steps = 30;
    p.default_walkers = 3000;
    p.starts.resize(n);
    std::iota(p.starts.begin(), p.starts.end(), 0);
    return p;
}

Problem make_barbell_problem() {
    Problem p;
    p.name = "barbell";
    p.mesh = geom::build_barbell_mesh();
    const double alpha = 0.5;
    const double dt = 0.005;
    p.chain = geom::barbell_transition_matrix(*p.mesh, alpha, dt);
    const int n = p.chain.n_states();
    p.g.resize(n);
    for (int s = 0; s < n; ++s) {
        const double y = p.mesh->states(s, 1);
        if (y >= 2.5)
            p.g[s] = 20.0;
        else if (y >= 1.0)
            p.g[s] = 7.0;
        else if (y >= 0.0)
            p.g[s] = 5.0;
        else if (y >= -1.0)
            p.g[s] = 3.0;
        else
            p.g[s] = 1.0;
    }
    p.c_const = -0.05;
    p.estimator = EstimatorKind::kInitialValue;
    p.default_steps = 200;
    p.default_walkers = 200;
    p.starts.resize(n);
    std::iota(p.starts.begin(), p.starts.end(), 0);
    return p;
}

Problem make_torus_problem(int n) {
    if (n < 2) raise(ErrorKind::domain, "torus problem requires n >= 2");
    Problem p;
    p.name = "torus";
    p.mesh = geom::build_torus_mesh(n);
    const int states = n * n;
    Eigen::MatrixXd step = Eigen::MatrixXd::Zero(states, states);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int s = i * n + j;
            const int moves[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
            for (const auto& m : moves) {
                const int ti = (i + m[0] + n) % n;
                const int tj = (j + m[1] + n) % n;
                step(s, ti * n + tj) += 0.25;
            }
        }
    }
    p.chain.dt = 1.0;
    p.chain.steps = {step};
    p.chain.positions = p.mesh->states;
    p.chain.validate();
    p.g.assign(states, 1.0);
    p.estimator = EstimatorKind::kInitialValue;
    p.default_steps = 1000;
    p.default_walkers = 1000;
    p.starts = {(n / 2) * n + n / 2};
    return p;
}

Problem make_problem(const std::string& name) {
    if (name == "boltzmann") return make_boltzmann_problem();
    if (name == "fluence") return make_fluence_problem();
    if (name == "sphere") return make_sphere_problem();
    if (name == "barbell") return make_barbell_problem();
    if (name == "torus") return make_torus_problem();
    std::string list;
    for (const auto& known : problem_names()) {
        if (!list.empty()) list += ", ";
        list += known;
    }
    raise(ErrorKind::config, "unknown problem '" + name + "'; available: " + list);
}

std::vector<std::string> problem_names() {
    return {"boltzmann", "fluence", "sphere", "barbell", "torus"};
}

} // namespace spikewalk::problems
