#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "spikewalk/dtmc/transition_model.hpp"

namespace spikewalk::dtmc {

// One atom of the jump-size distribution: the jump displaces the state by
// `displacement(t, x)` and is drawn with probability `weight` given that a
// jump occurs. Weights must be non-negative and sum to 1.
struct Mark {
    double weight = 0.0;
    std::function<double(double, double)> displacement;
};

// Local characteristics of a scalar jump-diffusion
//   dX = b(t,X) dt + sigma(t,X) dW + jumps(rate lambda(t,X), marks).
// `variance_rate` is a = sigma^2. Null functions mean identically zero.
struct SdeCoefficients {
    std::function<double(double, double)> drift;
    std::function<double(double, double)> variance_rate;
    std::function<double(double, double)> jump_rate;
    std::vector<Mark> marks;

    double b(double t, double x) const { return drift ? drift(t, x) : 0.0; }
    double a(double t, double x) const { return variance_rate ? variance_rate(t, x) : 0.0; }
    double lambda(double t, double x) const { return jump_rate ? jump_rate(t, x) : 0.0; }
    void validate() const;
};

// Uniform 1-D grid of cell centers x_i = x0 + i*dx with half-open cells
// [x_i - dx/2, x_i + dx/2). The first and last cells extend to -inf/+inf so
// the grid tiles the whole line. A step from state i may target any state
// within `window` grid units.
struct GridSpace {
    double x0 = 0.0;
    double dx = 1.0;
    int n = 0;
    int window = 1;

    double position(int i) const { return x0 + i * dx; }
    Eigen::VectorXd positions() const;
    void validate() const;
};

// How to conserve the row mass that the neighbor window would let escape.
//  - kTailToEdge: the outermost window cells of each row absorb the full
//    Gaussian tails (their cell boundaries are pushed to +-inf);
//  - kNormalizeRow: rescale the raw row to sum 1;
//  - kAddToSelf: add the defect to the diagonal entry.
enum class ConservationPolicy { kTailToEdge, kNormalizeRow, kAddToSelf };

// P(no jump), P(exactly one), P(two or more) for a Poisson count with mean
// `lambda_dt`.
struct JumpWindow {
    double none = 1.0;
    double one = 0.0;
    double more = 0.0;
};
JumpWindow jump_window_probabilities(double lambda_dt);

// Mass of N(mean, variance) on [lo, hi); zero-variance degenerates to a point
// mass located by the same half-open convention. Infinite bounds are allowed.
double gaussian_interval_mass(double mean, double variance, double lo, double hi);

// Raw one-step mass from state i into cell j over time step dt, before any
// conservation policy: a mixture of the diffusion kernel (weight 1 - P(one
// jump)) and one diffusion kernel per mark shifted by its displacement
// (weight P(one jump) * mark weight). Multi-jump probability is folded into
// the no-jump component; the dt selection keeps it small.
double local_transition_prob(const SdeCoefficients& sde, const GridSpace& grid,
                             int i, int j, double t, double dt);

struct DtCheck {
    bool ok = false;
    double worst_multi_jump = 0.0; // max P(>=2 jumps) over sampled (t, x)
    double worst_escape = 0.0;     // max raw mass escaping the neighbor window
};

// Evaluates both step-size constraints at t = k*dt for k < t_samples and at
// every grid state: multi-jump probability and window-escaping mass must stay
// below `threshold`.
DtCheck check_dt(const SdeCoefficients& sde, const GridSpace& grid, double dt,
                 double threshold = 0.05, int t_samples = 16);

// Walks the ladder 1, 0.5, 0.2, 0.1, ... and returns the first step size that
// satisfies check_dt; raises a constraint error below 1e-9.
double select_dt(const SdeCoefficients& sde, const GridSpace& grid, double threshold = 0.05);

// Builds the one-step transition matrix (time_steps == 0, coefficients
// evaluated at t = 0) or a time-indexed tensor with one layer per step
// (layer k evaluated at t = k*dt). Rows are policy-conserved and repaired to
// sum to exactly 1.
TransitionModel assemble_chain(const SdeCoefficients& sde, const GridSpace& grid, double dt,
                               ConservationPolicy policy, int time_steps = 0);

// Rewrites a time-indexed chain as a time-homogeneous chain on the layered
// state space (layer k, state s): layer k steps to layer k+1 through matrix
// k, and the final layer self-loops. Time-homogeneous inputs pass through
// unchanged. Positions gain a leading time coordinate; the absorbing marker
// does not survive (only final-layer states are absorbing in the layered
// chain).
TransitionModel collapse_time_tensor(const TransitionModel& model);

// Restricts a chain with scalar positions to states in [lo, hi]; column mass
// toward dropped states is folded onto the nearest surviving boundary state.
TransitionModel truncate_to_finite(const TransitionModel& model, double lo, double hi);

} // namespace spikewalk::dtmc
