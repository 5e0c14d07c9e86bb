#include "spikewalk/dtmc/builder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spikewalk/error.hpp"

namespace spikewalk::dtmc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Cell boundaries of grid state j, with the physical ends open to infinity.
void cell_bounds(const GridSpace& grid, int j, double& lo, double& hi) {
    lo = (j == 0) ? -kInf : grid.position(j) - 0.5 * grid.dx;
    hi = (j == grid.n - 1) ? kInf : grid.position(j) + 0.5 * grid.dx;
}

// Mixture components of the one-step kernel from (t, x): Gaussian means and
// weights. Weight of the no-jump diffusion component is 1 - P(one jump).
struct Kernel {
    double variance;
    std::vector<std::pair<double, double>> components; // (weight, mean)
};

Kernel step_kernel(const SdeCoefficients& sde, double t, double x, double dt) {
    const double lam = sde.lambda(t, x);
    if (lam < 0.0) raise(ErrorKind::domain, "jump rate must be non-negative");
    const double a = sde.a(t, x);
    if (a < 0.0) raise(ErrorKind::domain, "variance rate must be non-negative");
    const JumpWindow jw = jump_window_probabilities(lam * dt);
    Kernel k;
    k.variance = a * dt;
    const double mean0 = x + sde.b(t, x) * dt;
    k.components.emplace_back(1.0 - jw.one, mean0);
    for (const Mark& m : sde.marks) {
        if (m.weight == 0.0) continue;
        k.components.emplace_back(jw.one * m.weight, mean0 + m.displacement(t, x));
    }
    return k;
}

double kernel_mass(const Kernel& k, double lo, double hi) {
    double mass = 0.0;
    for (const auto& [w, mean] : k.components) {
        mass += w * gaussian_interval_mass(mean, k.variance, lo, hi);
    }
    return mass;
}

Eigen::RowVectorXd raw_row(const SdeCoefficients& sde, const GridSpace& grid, int i, double t,
                           double dt, ConservationPolicy policy, bool apply_policy) {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(grid.n);
    const Kernel k = step_kernel(sde, t, grid.position(i), dt);
    const int jlo = std::max(0, i - grid.window);
    const int jhi = std::min(grid.n - 1, i + grid.window);
    for (int j = jlo; j <= jhi; ++j) {
        double lo, hi;
        cell_bounds(grid, j, lo, hi);
        if (apply_policy && policy == ConservationPolicy::kTailToEdge) {
            if (j == jlo) lo = -kInf;
            if (j == jhi) hi = kInf;
        }
        row[j] = kernel_mass(k, lo, hi);
    }
    if (apply_policy) {
        const double s = row.sum();
        switch (policy) {
            case ConservationPolicy::kTailToEdge:
                break; // rows already integrate the full kernel
            case ConservationPolicy::kNormalizeRow:
                if (s <= 0.0) raise(ErrorKind::structural, "cannot normalize a zero row");
                row /= s;
                break;
            case ConservationPolicy::kAddToSelf:
                row[i] += 1.0 - s;
                if (row[i] < 0.0) {
                    raise(ErrorKind::structural, "self-correction drove a diagonal negative");
                }
                break;
        }
        repair_row_sum(row);
    }
    return row;
}

} // namespace

void SdeCoefficients::validate() const {
    double total = 0.0;
    for (const Mark& m : marks) {
        if (m.weight < 0.0) raise(ErrorKind::domain, "mark weights must be non-negative");
        if (!m.displacement) raise(ErrorKind::config, "mark lacks a displacement function");
        total += m.weight;
    }
    if (!marks.empty() && std::abs(total - 1.0) > 1e-9) {
        raise(ErrorKind::domain, "mark weights must sum to 1");
    }
    if (jump_rate && marks.empty()) {
        raise(ErrorKind::config, "jump rate given without a mark distribution");
    }
}

Eigen::VectorXd GridSpace::positions() const {
    Eigen::VectorXd p(n);
    for (int i = 0; i < n; ++i) p[i] = position(i);
    return p;
}

void GridSpace::validate() const {
    if (n <= 0) raise(ErrorKind::domain, "grid needs at least one state");
    if (dx <= 0.0) raise(ErrorKind::domain, "grid spacing must be positive");
    if (window < 1) raise(ErrorKind::domain, "neighbor window must be at least 1");
}

JumpWindow jump_window_probabilities(double lambda_dt) {
    if (lambda_dt < 0.0) raise(ErrorKind::domain, "jump intensity must be non-negative");
    JumpWindow jw;
    jw.none = std::exp(-lambda_dt);
    jw.one = lambda_dt * jw.none;
    jw.more = 1.0 - jw.none - jw.one;
    if (jw.more < 0.0) jw.more = 0.0; // rounding guard near lambda_dt = 0
    return jw;
}

double gaussian_interval_mass(double mean, double variance, double lo, double hi) {
    if (variance < 0.0) raise(ErrorKind::domain, "variance must be non-negative");
    if (!(lo <= hi)) raise(ErrorKind::domain, "interval bounds out of order");
    if (variance == 0.0) {
        return (mean >= lo && mean < hi) ? 1.0 : 0.0;
    }
    const double inv = 1.0 / std::sqrt(2.0 * variance);
    // CDF(u) = erfc((mean - u) * inv) / 2, monotone and stable in both tails.
    const double upper = std::isinf(hi) ? (hi > 0 ? 2.0 : 0.0) : std::erfc((mean - hi) * inv);
    const double lower = std::isinf(lo) ? (lo > 0 ? 2.0 : 0.0) : std::erfc((mean - lo) * inv);
    return std::max(0.0, 0.5 * (upper - lower));
}

double local_transition_prob(const SdeCoefficients& sde, const GridSpace& grid,
                             int i, int j, double t, double dt) {
    grid.validate();
    if (i < 0 || i >= grid.n || j < 0 || j >= grid.n) {
        raise(ErrorKind::domain, "state index out of range");
    }
    if (dt <= 0.0) raise(ErrorKind::domain, "time step must be positive");
    if (std::abs(i - j) > grid.window) return 0.0;
    double lo, hi;
    cell_bounds(grid, j, lo, hi);
    return kernel_mass(step_kernel(sde, t, grid.position(i), dt), lo, hi);
}

DtCheck check_dt(const SdeCoefficients& sde, const GridSpace& grid, double dt,
                 double threshold, int t_samples) {
    sde.validate();
    grid.validate();
    if (dt <= 0.0) raise(ErrorKind::domain, "time step must be positive");
    if (t_samples < 1) raise(ErrorKind::domain, "need at least one time sample");
    DtCheck out;
    for (int k = 0; k < t_samples; ++k) {
        const double t = k * dt;
        for (int i = 0; i < grid.n; ++i) {
            const double lam = sde.lambda(t, grid.position(i));
            out.worst_multi_jump =
                std::max(out.worst_multi_jump, jump_window_probabilities(lam * dt).more);
            const double kept =
                raw_row(sde, grid, i, t, dt, ConservationPolicy::kTailToEdge, false).sum();
            out.worst_escape = std::max(out.worst_escape, 1.0 - kept);
        }
    }
    out.ok = out.worst_multi_jump < threshold && out.worst_escape < threshold;
    return out;
}

double select_dt(const SdeCoefficients& sde, const GridSpace& grid, double threshold) {
    // 1, 0.5, 0.2 scaled by successive powers of ten.
    static constexpr double kMantissas[] = {1.0, 0.5, 0.2};
    for (double decade = 1.0; decade >= 1e-9; decade *= 0.1) {
        for (double m : kMantissas) {
            const double dt = m * decade;
            if (dt < 1e-9) break;
            if (check_dt(sde, grid, dt, threshold).ok) return dt;
        }
    }
    raise(ErrorKind::constraint, "no admissible time step above 1e-9");
}

TransitionModel assemble_chain(const SdeCoefficients& sde, const GridSpace& grid, double dt,
                               ConservationPolicy policy, int time_steps) {
    sde.validate();
    grid.validate();
    if (dt <= 0.0) raise(ErrorKind::domain, "time step must be positive");
    if (time_steps < 0) raise(ErrorKind::domain, "time step count must be non-negative");
    TransitionModel model;
    model.dt = dt;
    model.positions = grid.positions();
    const int layers = std::max(1, time_steps);
    for (int k = 0; k < layers; ++k) {
        const double t = (time_steps == 0) ? 0.0 : k * dt;
        Eigen::MatrixXd m(grid.n, grid.n);
        for (int i = 0; i < grid.n; ++i) {
            m.row(i) = raw_row(sde, grid, i, t, dt, policy, true);
        }
        model.steps.push_back(std::move(m));
    }
    model.validate();
    return model;
}

TransitionModel collapse_time_tensor(const TransitionModel& model) {
    model.validate();
    if (!model.time_indexed()) return model;
    const int s = model.n_states();
    const int layers = static_cast<int>(model.steps.size());
    const int total = (layers + 1) * s;
    TransitionModel out;
    out.dt = model.dt;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(total, total);
    for (int k = 0; k < layers; ++k) {
        m.block(k * s, (k + 1) * s, s, s) = model.steps[k];
    }
    m.block(layers * s, layers * s, s, s).setIdentity();
    out.steps.push_back(std::move(m));
    if (model.positions.size() != 0) {
        out.positions.resize(total, model.positions.cols() + 1);
        for (int k = 0; k <= layers; ++k) {
            for (int i = 0; i < s; ++i) {
                out.positions(k * s + i, 0) = k * model.dt;
                out.positions.row(k * s + i).tail(model.positions.cols()) = model.positions.row(i);
            }
        }
    }
    out.validate();
    return out;
}

TransitionModel truncate_to_finite(const TransitionModel& model, double lo, double hi) {
    model.validate();
    if (model.positions.cols() != 1) {
        raise(ErrorKind::domain, "truncation requires scalar state positions");
    }
    if (!(lo < hi)) raise(ErrorKind::domain, "truncation bounds out of order");
    const int n = model.n_states();
    std::vector<int> keep;
    std::vector<int> old_to_new(n, -1);
    int low_state = -1, high_state = -1;
    for (int i = 0; i < n; ++i) {
        const double x = model.positions(i, 0);
        if (x < lo || x > hi) continue;
        old_to_new[i] = static_cast<int>(keep.size());
        keep.push_back(i);
        if (low_state < 0 || x < model.positions(low_state, 0)) low_state = i;
        if (high_state < 0 || x > model.positions(high_state, 0)) high_state = i;
    }
    if (keep.empty()) raise(ErrorKind::domain, "truncation removes every state");
    TransitionModel out;
    out.dt = model.dt;
    const int m = static_cast<int>(keep.size());
    out.positions.resize(m, 1);
    for (int i = 0; i < m; ++i) out.positions(i, 0) = model.positions(keep[i], 0);
    for (const Eigen::MatrixXd& layer : model.steps) {
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(m);
            for (int j = 0; j < n; ++j) {
                const double p = layer(keep[i], j);
                if (p == 0.0) continue;
                int target = old_to_new[j];
                if (target < 0) {
                    target = old_to_new[model.positions(j, 0) < lo ? low_state : high_state];
                }
                row[target] += p;
            }
            repair_row_sum(row);
            t.row(i) = row;
        }
        out.steps.push_back(std::move(t));
    }
    if (model.absorbing && old_to_new[*model.absorbing] >= 0) {
        out.absorbing = old_to_new[*model.absorbing];
        for (const Eigen::MatrixXd& layer : out.steps) {
            if (layer(*out.absorbing, *out.absorbing) != 1.0) {
                out.absorbing.reset();
                break;
            }
        }
    }
    out.validate();
    return out;
}

} // namespace spikewalk::dtmc
