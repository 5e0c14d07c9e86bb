#include "spikewalk/fk/estimators.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "spikewalk/error.hpp"

namespace spikewalk::fk {

namespace {

Estimate from_samples(const std::vector<double>& payoff, double t) {
    Estimate e;
    e.sample_count = static_cast<int64_t>(payoff.size());
    e.t = t;
    double sum = 0.0;
    for (double x : payoff) sum += x;
    e.value = sum / static_cast<double>(payoff.size());
    if (payoff.size() >= 2) e.standard_error = standard_error(payoff);
    return e;
}

} // namespace

void Estimate::write_json(std::ostream& os) const {
    nlohmann::json j;
    j["value"] = value;
    j["stderr"] = standard_error ? nlohmann::json(*standard_error)
                                 : nlohmann::json(nullptr);
    j["M"] = sample_count;
    j["t"] = t;
    os << j.dump() << '\n';
}

double standard_error(const std::vector<double>& samples) {
    if (samples.size() < 2)
        raise(ErrorKind::domain, "standard error requires at least 2 samples");
    const double n = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double x : samples) mean += x;
    mean /= n;
    double ssd = 0.0;
    for (double x : samples) ssd += (x - mean) * (x - mean);
    return std::sqrt(ssd / (n - 1.0)) / std::sqrt(n);
}

Estimate estimate_initial_value(const dtmc::PathEnsemble& paths, const StateFn& g,
                                const TimeStateFn& c, const TimeStateFn& f,
                                int t_index) {
    if (paths.paths.empty())
        raise(ErrorKind::domain, "estimator requires a nonempty path ensemble");
    if (t_index < 0 || t_index > paths.horizon)
        raise(ErrorKind::domain, "estimate time index exceeds the path horizon");
    std::vector<double> payoff(paths.paths.size());
    for (size_t pth = 0; pth < paths.paths.size(); ++pth) {
        double weight = 1.0;
        double source = 0.0;
        for (int k = 0; k < t_index; ++k) {
            const int s = paths.state_at(static_cast<int>(pth), k);
            const double tk = k * paths.dt;
            if (f) source += f(tk, s) * weight * paths.dt;
            if (c) weight *= std::exp(c(tk, s) * paths.dt);
        }
        const int end = paths.state_at(static_cast<int>(pth), t_index);
        payoff[pth] = g(end) * weight + source;
    }
    return from_samples(payoff, t_index * paths.dt);
}

Estimate estimate_stopped(const dtmc::PathEnsemble& paths,
                          const StateFn& g_boundary, const StateFn& f,
                          double speed_scale) {
    if (paths.paths.empty())
        raise(ErrorKind::domain, "estimator requires a nonempty path ensemble");
    std::vector<double> payoff(paths.paths.size());
    for (size_t pth = 0; pth < paths.paths.size(); ++pth) {
        const int p = static_cast<int>(pth);
        if (!paths.stopped(p))
            raise(ErrorKind::domain,
                  "incomplete ensemble: a path never reached the absorbing "
                  "state within the horizon");
        const int stop = paths.stop_step(p);
        double source = 0.0;
        for (int k = 0; k < stop; ++k)
            source += f(paths.paths[pth][k]) * paths.dt;
        payoff[pth] = (g_boundary ? g_boundary(paths.paths[pth][stop]) : 0.0) +
                      speed_scale * source;
    }
    return from_samples(payoff, 0.0);
}

Estimate estimate_stopped(const DensitySeries& density, int absorbing,
                          const StateFn& f, double speed_scale) {
    const int n = density.n_states();
    if (absorbing < 0 || absorbing >= n)
        raise(ErrorKind::domain, "absorbing state out of range");
    const int64_t m = density.total(0);
    if (m <= 0) raise(ErrorKind::domain, "estimator requires a nonempty density");
    for (int s = 0; s < n; ++s)
        if (s != absorbing && density.counts(density.steps(), s) != 0)
            raise(ErrorKind::domain,
                  "incomplete ensemble: transient mass remains in the final "
                  "density snapshot");
    double total = 0.0;
    for (int k = 0; k <= density.steps(); ++k)
        for (int s = 0; s < n; ++s)
            if (s != absorbing && density.counts(k, s) != 0)
                total += f(s) * density.dt *
                         static_cast<double>(density.counts(k, s));
    Estimate e;
    e.value = speed_scale * total / static_cast<double>(m);
    e.sample_count = m;
    e.t = 0.0;
    return e;
}

Estimate estimate_from_density(const DensitySeries& density, const StateFn& g,
                               double c_const, int t_index) {
    if (t_index < 0 || t_index > density.steps())
        raise(ErrorKind::domain, "estimate time index exceeds the density horizon");
    const int64_t m = density.total(0);
    if (m <= 0) raise(ErrorKind::domain, "estimator requires a nonempty density");
    const double t = t_index * density.dt;
    double s1 = 0.0, s2 = 0.0;
    for (int s = 0; s < density.n_states(); ++s) {
        const double rho = static_cast<double>(density.counts(t_index, s));
        if (rho == 0.0) continue;
        const double gs = g(s);
        s1 += gs * rho;
        s2 += gs * gs * rho;
    }
    const double md = static_cast<double>(m);
    const double weight = std::exp(c_const * t);
    Estimate e;
    e.value = weight * s1 / md;
    e.sample_count = m;
    e.t = t;
    if (m >= 2) {
        const double var = std::max(0.0, s2 / md - (s1 / md) * (s1 / md));
        e.standard_error = weight * std::sqrt(var) / std::sqrt(md);
    }
    return e;
}

Estimate estimate_from_density(const DensitySeries& density, const StateFn& g,
                               const TimeStateFn& c, int t_index) {
    const double c0 = c(0.0, 0);
    for (int k = 0; k <= density.steps(); ++k)
        for (int s = 0; s < density.n_states(); ++s)
            if (c(k * density.dt, s) != c0)
                raise(ErrorKind::domain,
                      "density estimator requires a constant killing rate c; "
                      "use the path estimator instead");
    return estimate_from_density(density, g, c0, t_index);
}

void write_solution_csv(std::ostream& os, const Eigen::MatrixXd& positions,
                        const std::vector<Estimate>& per_state) {
    os << "state_id";
    for (Eigen::Index d = 0; d < positions.cols(); ++d) os << ",x" << d;
    os << ",value,stderr\n";
    for (size_t s = 0; s < per_state.size(); ++s) {
        os << s;
        if (static_cast<Eigen::Index>(s) < positions.rows())
            for (Eigen::Index d = 0; d < positions.cols(); ++d)
                os << ',' << positions(s, d);
        os << ',' << per_state[s].value << ','
           << (per_state[s].standard_error ? *per_state[s].standard_error : 0.0)
           << '\n';
    }
}

} // namespace spikewalk::fk
