#include "spikewalk/dtmc/sampler.hpp"

#include <algorithm>

#include "spikewalk/error.hpp"
#include "spikewalk/rng.hpp"

namespace spikewalk::dtmc {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Row-wise cumulative sums, stored row-major so each row is contiguous for
// binary search.
RowMajor cumulative(const Eigen::MatrixXd& m) {
    RowMajor c = m;
    for (Eigen::Index i = 0; i < c.rows(); ++i) {
        double run = 0.0;
        for (Eigen::Index j = 0; j < c.cols(); ++j) {
            run += c(i, j);
            c(i, j) = run;
        }
    }
    return c;
}

int32_t pick(const RowMajor& cum, int32_t row, double u) {
    const int n = static_cast<int>(cum.cols());
    const double* rb = cum.data() + static_cast<ptrdiff_t>(row) * n;
    int j = static_cast<int>(std::upper_bound(rb, rb + n, u) - rb);
    if (j >= n) j = n - 1; // guard: u landed past the (==1.0) final cumulative
    return static_cast<int32_t>(j);
}

} // namespace

PathEnsemble sample_paths(const TransitionModel& model, int start, int64_t walkers, int steps,
                          uint64_t seed) {
    model.validate();
    if (start < 0 || start >= model.n_states()) {
        raise(ErrorKind::domain, "start state out of range");
    }
    if (walkers < 0) raise(ErrorKind::domain, "walker count must be non-negative");
    if (steps < 0) raise(ErrorKind::domain, "step count must be non-negative");

    const int layers = static_cast<int>(model.steps.size());
    std::vector<RowMajor> cums;
    cums.reserve(static_cast<size_t>(layers));
    for (const Eigen::MatrixXd& m : model.steps) cums.push_back(cumulative(m));

    PathEnsemble out;
    out.dt = model.dt;
    out.n_states = model.n_states();
    out.horizon = steps;
    out.absorbing = model.absorbing;
    out.paths.resize(static_cast<size_t>(walkers));
    for (int64_t p = 0; p < walkers; ++p) {
        auto& path = out.paths[static_cast<size_t>(p)];
        int32_t s = static_cast<int32_t>(start);
        path.push_back(s);
        for (int k = 0; k < steps; ++k) {
            if (model.absorbing && s == *model.absorbing) break;
            const double u =
                rng::draw_unit(seed, static_cast<uint64_t>(p), static_cast<uint64_t>(k));
            s = pick(cums[static_cast<size_t>(std::min(k, layers - 1))], s, u);
            path.push_back(s);
        }
    }
    return out;
}

DensitySeries to_density(const PathEnsemble& ensemble) {
    DensitySeries d;
    d.dt = ensemble.dt;
    d.counts.setZero(ensemble.horizon + 1, ensemble.n_states);
    for (size_t p = 0; p < ensemble.paths.size(); ++p) {
        for (int k = 0; k <= ensemble.horizon; ++k) {
            d.counts(k, ensemble.state_at(p, k)) += 1;
        }
    }
    return d;
}

} // namespace spikewalk::dtmc
