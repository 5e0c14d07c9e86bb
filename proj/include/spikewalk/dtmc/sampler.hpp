#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spikewalk/density_series.hpp"
#include "spikewalk/dtmc/transition_model.hpp"

namespace spikewalk::dtmc {

// A batch of sampled trajectories. Path p records states at steps 0..len-1;
// recording stops at first entry into the absorbing state, which the walker
// then occupies forever (state_at extends the implied tail).
struct PathEnsemble {
    double dt = 0.0;
    int n_states = 0;
    int horizon = 0; // requested number of steps
    std::optional<int> absorbing;
    std::vector<std::vector<int32_t>> paths;

    int32_t state_at(size_t p, int k) const {
        const auto& path = paths[p];
        return k < static_cast<int>(path.size()) ? path[static_cast<size_t>(k)] : path.back();
    }
    bool stopped(size_t p) const { return absorbing && paths[p].back() == *absorbing; }
    // Step at which path p entered the absorbing state, or the horizon if it
    // never did.
    int stop_step(size_t p) const {
        return stopped(p) ? static_cast<int>(paths[p].size()) - 1 : horizon;
    }
};

// Draws `walkers` independent trajectories of `steps` transitions starting
// from `start`. Draw k of path p consumes the keyed uniform (seed, p, k), so
// the ensemble is reproducible and independent of batching.
PathEnsemble sample_paths(const TransitionModel& model, int start, int64_t walkers, int steps,
                          uint64_t seed);

// Occupancy-count view of an ensemble; absorbed walkers keep counting at the
// absorbing state, so each row sums to the walker count.
DensitySeries to_density(const PathEnsemble& ensemble);

} // namespace spikewalk::dtmc
