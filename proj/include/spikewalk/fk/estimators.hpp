#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <ostream>
#include <vector>

#include "spikewalk/density_series.hpp"
#include "spikewalk/dtmc/sampler.hpp"

namespace spikewalk::fk {

struct Estimate {
    double value = 0.0;
    std::optional<double> standard_error; // absent when sample_count == 1
    int64_t sample_count = 0;
    double t = 0.0;

    void write_json(std::ostream& os) const; // {"value","stderr","M","t"}
};

using StateFn = std::function<double(int)>;
using TimeStateFn = std::function<double(double, int)>;

// Unbiased sample standard deviation over sqrt(n); requires >= 2 samples.
double standard_error(const std::vector<double>& samples);

// Time-dependent estimator: per-path payoff
//   g(X_i) * exp(sum_{k<i} c(t_k, X_k) dt)
//   + sum_{k<i} f(t_k, X_k) * exp(sum_{s<k} c(t_s, X_s) dt) * dt,
// averaged over paths. Weights use left endpoints, so the t = 0 estimate is
// exactly the sample mean of g.
Estimate estimate_initial_value(const dtmc::PathEnsemble& paths, const StateFn& g,
                                const TimeStateFn& c, const TimeStateFn& f,
                                int t_index);

// Boundary-value estimator: per-path payoff
//   g_boundary(X_T) + speed_scale * sum_{k<T} f(X_k) dt
// where T is the path's absorption step. Every path must stop.
Estimate estimate_stopped(const dtmc::PathEnsemble& paths,
                          const StateFn& g_boundary, const StateFn& f,
                          double speed_scale = 1.0);

// Density collapse of the stopped estimator, valid for f-only payoffs:
// sums f over transient occupancy counts. Agrees exactly with the path
// form. Transient mass remaining in the final snapshot is an error.
Estimate estimate_stopped(const DensitySeries& density, int absorbing,
                          const StateFn& f, double speed_scale = 1.0);

// Density form of the time-dependent estimator, valid only for constant c
// and f == 0: e^(c t) * sum_s g(s) density(t,s) / M.
Estimate estimate_from_density(const DensitySeries& density, const StateFn& g,
                               double c_const, int t_index);

// Guarded overload: probes c over the density's support and refuses
// non-constant c instead of silently approximating.
Estimate estimate_from_density(const DensitySeries& density, const StateFn& g,
                               const TimeStateFn& c, int t_index);

// CSV rows (state_id, position..., value, stderr); positions may be 0x0.
void write_solution_csv(std::ostream& os, const Eigen::MatrixXd& positions,
                        const std::vector<Estimate>& per_state);

} // namespace spikewalk::fk
