#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

namespace spikewalk {

// Per-step walker occupancy. Row k holds the counts after k walk steps
// (row 0 is the initial placement). Absorbed walkers keep occupying the
// absorbing state, so every row of a conservative run sums to the same total.
struct DensitySeries {
    double dt = 0.0;
    Eigen::Matrix<int64_t, Eigen::Dynamic, Eigen::Dynamic> counts; // (steps+1) x states
    std::vector<int64_t> ticks_per_step; // emulator timing metadata; may be empty

    int steps() const { return static_cast<int>(counts.rows()) - 1; }
    int n_states() const { return static_cast<int>(counts.cols()); }
    int64_t total(int step) const { return counts.row(step).sum(); }

    // CSV rows (step, state_id, count), zero counts omitted.
    void write_csv(std::ostream& os) const;
    static DensitySeries read_csv(std::istream& is, int n_states, double dt);
};

} // namespace spikewalk
