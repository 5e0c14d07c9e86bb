#pragma once

// Bundled benchmark problems: each pairs a discrete-time Markov chain with the
// payoff, source, and reaction data needed by the Feynman-Kac estimators,
// plus sensible default run sizes and (where available) a closed-form
// reference solution.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spikewalk/dtmc/transition_model.hpp"
#include "spikewalk/fk/estimators.hpp"
#include "spikewalk/geom/surface_mesh.hpp"

namespace spikewalk::problems {

enum class EstimatorKind {
    kInitialValue, // fixed-horizon estimate of u(t, start)
    kStopped,      // run-to-absorption accumulation of the source term
};

struct Problem {
    std::string name;
    dtmc::TransitionModel chain;
    std::vector<double> g;  // payoff / initial condition per state
    double c_const = 0.0;   // constant reaction (killing/growth) rate
    std::vector<double> f;  // source term per state (empty means zero)
    std::function<double(double, int)> oracle; // closed form u(t, state), or null
    EstimatorKind estimator = EstimatorKind::kInitialValue;
    double speed_scale = 1.0; // multiplies the accumulated source integral
    int default_steps = 0;
    std::int64_t default_walkers = 0;
    std::vector<int> starts; // states to launch walker ensembles from
    std::optional<geom::SurfaceMesh> mesh;

    fk::StateFn g_fn() const;
    fk::StateFn f_fn() const;
};

// Two-state velocity-flip chain with a decaying two-mode closed form.
Problem make_boltzmann_problem();

// 30x30 position-direction transport lattice with an absorbing exit; the
// stopped estimator integrates the interior source along each walk.
Problem make_fluence_problem();

// Heat flow on a 320-triangle geodesic sphere; the initial condition is a
// degree-6 spherical-harmonic eigenfunction, so the solution decays as e^-t.
Problem make_sphere_problem();

// Diffusion with uniform decay on the two-sphere barbell surface.
Problem make_barbell_problem();

// Symmetric nearest-neighbor walk on an n x n periodic grid, started from the
// center cell. Every transition probability is exactly 1/4.
Problem make_torus_problem(int n = 21);

// Look up a problem by name ("boltzmann", "fluence", "sphere", "barbell",
// "torus"). Unknown names raise a config error listing the registry.
Problem make_problem(const std::string& name);

std::vector<std::string> problem_names();

} // namespace spikewalk::problems
