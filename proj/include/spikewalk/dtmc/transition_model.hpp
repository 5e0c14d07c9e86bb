#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace spikewalk::dtmc {

// A discrete-time Markov chain over a finite state set. `steps` holds one
// stochastic matrix for a time-homogeneous chain, or one matrix per walk step
// for a time-indexed chain (matrix k governs the transition from step k to
// k+1). `positions` optionally anchors each state to a coordinate (states x
// dims); chains without geometry leave it empty.
struct TransitionModel {
    double dt = 1.0;
    Eigen::MatrixXd positions; // n_states x dims, or 0x0
    std::vector<Eigen::MatrixXd> steps;
    std::optional<int> absorbing;

    int n_states() const { return steps.empty() ? 0 : static_cast<int>(steps.front().rows()); }
    bool time_indexed() const { return steps.size() > 1; }

    // Matrix governing the k-th step; time-homogeneous chains ignore k, and a
    // time-indexed chain clamps past its horizon (the final layer is required
    // to be absorbing/idempotent by construction, so clamping is exact).
    const Eigen::MatrixXd& matrix(int k = 0) const;

    // Structural checks: square matrices of equal size, entries in [0,1],
    // every row summing to 1 within `tol`, absorbing index in range and truly
    // absorbing in every layer.
    void validate(double tol = 1e-9) const;

    void write_json(std::ostream& os) const;
    static TransitionModel read_json(std::istream& is);
};

// Drives the floating-point row sum to exactly 1.0 whenever the summation's
// rounding grid allows it (bulk defect correction, then ulp stepping), and
// always to within 4 ulps of 1. The perturbation is bounded by a few ulps of
// the adjusted entry. Accepts strided rows (matrix.row(i)).
using RowRef = Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>>;
void repair_row_sum(RowRef row);

} // namespace spikewalk::dtmc
