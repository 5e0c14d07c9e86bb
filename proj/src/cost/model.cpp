#include "spikewalk/cost/model.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include <nlohmann/json.hpp>

#include "spikewalk/error.hpp"

namespace spikewalk::cost {

namespace {

constexpr double kSlopeRatioBound = 1e6; // "comparable scaling" slope limit

const char* kind_name(PlatformKind k) {
    return k == PlatformKind::kVonNeumann ? "von_neumann" : "neural";
}

int usable_parallelism(const PlatformParams& p) {
    int m = std::max(1, p.cores);
    if (p.kind == PlatformKind::kNeural && p.mesh_states > 0)
        m = std::min(m, p.mesh_states);
    return m;
}

void check_platform(const PlatformParams& p) {
    if (p.seconds_per_update <= 0.0 || p.joules_per_update <= 0.0)
        raise(ErrorKind::domain,
              "platform parameters must have positive per-update cost");
    if (p.cores < 1)
        raise(ErrorKind::domain, "platform must expose at least one core");
}

void check_workload(const Workload& w) {
    if (w.walkers <= 0 || w.steps <= 0)
        raise(ErrorKind::domain, "workload needs positive walkers and steps");
}

nlohmann::json platform_json(const PlatformParams& p) {
    return {{"name", p.name},
            {"kind", kind_name(p.kind)},
            {"cores", p.cores},
            {"seconds_per_update", p.seconds_per_update},
            {"joules_per_update", p.joules_per_update},
            {"mesh_states", p.mesh_states},
            {"updates_per_joule", {p.updates_per_joule_lo, p.updates_per_joule_hi}}};
}

// A cost model is usable for ratio claims only if energy is linear in the
// update count; probe at 1x and 100x the workload and demand exact scaling.
bool energy_is_linear(const PlatformParams& p, const Workload& w) {
    const Workload big{w.walkers * 100, w.steps};
    const double e1 = predict_energy_joules(p, w);
    const double e100 = predict_energy_joules(p, big);
    return std::abs(e100 - 100.0 * e1) <= 1e-9 * std::abs(e100);
}

} // namespace

PlatformParams default_cpu_platform() {
    PlatformParams p;
    p.kind = PlatformKind::kVonNeumann;
    p.name = "general-purpose CPU (analytic model, not a measurement)";
    p.cores = 4;
    p.seconds_per_update = 1e-8;
    p.updates_per_joule_lo = 2.5e6;
    p.updates_per_joule_hi = 3.0e6;
    // Midpoint of the efficiency band as the point estimate.
    p.joules_per_update =
        1.0 / (0.5 * (p.updates_per_joule_lo + p.updates_per_joule_hi));
    p.mesh_states = 0;
    return p;
}

PlatformParams default_neural_platform() {
    PlatformParams p;
    p.kind = PlatformKind::kNeural;
    p.name = "spiking mesh (analytic model, not a measurement)";
    p.cores = 128;
    p.seconds_per_update = 1e-6;
    p.updates_per_joule_lo = 6.0e7;
    p.updates_per_joule_hi = 2.5e8;
    // The band spans nearly an order of magnitude, so use its geometric mean.
    p.joules_per_update =
        1.0 / std::sqrt(p.updates_per_joule_lo * p.updates_per_joule_hi);
    p.mesh_states = 0;
    return p;
}

double predict_time_seconds(const PlatformParams& p, const Workload& w) {
    check_platform(p);
    check_workload(w);
    const double updates =
        static_cast<double>(w.walkers) * static_cast<double>(w.steps);
    return p.seconds_per_update * updates / usable_parallelism(p);
}

double predict_energy_joules(const PlatformParams& p, const Workload& w) {
    check_platform(p);
    check_workload(w);
    const double updates =
        static_cast<double>(w.walkers) * static_cast<double>(w.steps);
    return p.joules_per_update * updates;
}

EnergyBand predict_energy_band(const PlatformParams& p, const Workload& w) {
    check_platform(p);
    check_workload(w);
    if (p.updates_per_joule_lo <= 0.0 || p.updates_per_joule_hi <= 0.0)
        raise(ErrorKind::domain, "platform efficiency band must be positive");
    const double updates =
        static_cast<double>(w.walkers) * static_cast<double>(w.steps);
    EnergyBand band;
    band.lo_joules = updates / p.updates_per_joule_hi;
    band.hi_joules = updates / p.updates_per_joule_lo;
    return band;
}

AdvantageReport compare_platforms(const PlatformParams& vn,
                                  const PlatformParams& neural,
                                  const Workload& w) {
    AdvantageReport r;
    r.workload = w;
    r.vn = vn;
    r.neural = neural;
    r.vn_time_seconds = predict_time_seconds(vn, w);
    r.neural_time_seconds = predict_time_seconds(neural, w);
    r.vn_energy_joules = predict_energy_joules(vn, w);
    r.neural_energy_joules = predict_energy_joules(neural, w);
    r.vn_energy_band = predict_energy_band(vn, w);
    r.neural_energy_band = predict_energy_band(neural, w);
    r.time_ratio = r.vn_time_seconds / r.neural_time_seconds;
    r.energy_ratio = r.vn_energy_joules / r.neural_energy_joules;
    const double slope_ratio = vn.joules_per_update / neural.joules_per_update;
    r.scaling_comparable = energy_is_linear(vn, w) &&
                           energy_is_linear(neural, w) &&
                           slope_ratio <= kSlopeRatioBound &&
                           slope_ratio >= 1.0 / kSlopeRatioBound;
    r.neural_advantage = r.scaling_comparable && r.energy_ratio > 1.0;
    return r;
}

void AdvantageReport::write_json(std::ostream& os) const {
    nlohmann::json j;
    j["workload"] = {{"walkers", workload.walkers}, {"steps", workload.steps}};
    j["platforms"] = {{"von_neumann", platform_json(vn)},
                      {"neural", platform_json(neural)}};
    j["predictions"] = {
        {"von_neumann",
         {{"time_seconds", vn_time_seconds},
          {"energy_joules", vn_energy_joules},
          {"energy_band_joules", {vn_energy_band.lo_joules, vn_energy_band.hi_joules}}}},
        {"neural",
         {{"time_seconds", neural_time_seconds},
          {"energy_joules", neural_energy_joules},
          {"energy_band_joules",
           {neural_energy_band.lo_joules, neural_energy_band.hi_joules}}}}};
    j["ratios"] = {{"time", time_ratio}, {"energy", energy_ratio}};
    j["scaling_comparable"] = scaling_comparable;
    j["neural_advantage"] = neural_advantage;
    os << j.dump(2) << '\n';
}

void AdvantageReport::write_table(std::ostream& os) const {
    const auto row = [&os](const std::string& label, double a, double b) {
        os << std::left << std::setw(26) << label << std::right
           << std::setw(14) << std::scientific << std::setprecision(4) << a
           << std::setw(14) << b << '\n';
    };
    os << std::left << std::setw(26) << "quantity" << std::right
       << std::setw(14) << "conventional" << std::setw(14) << "spiking mesh"
       << '\n';
    row("time [s]", vn_time_seconds, neural_time_seconds);
    row("energy [J]", vn_energy_joules, neural_energy_joules);
    row("energy band lo [J]", vn_energy_band.lo_joules,
        neural_energy_band.lo_joules);
    row("energy band hi [J]", vn_energy_band.hi_joules,
        neural_energy_band.hi_joules);
    os << std::defaultfloat << std::setprecision(6);
    os << "energy ratio (conventional/mesh): " << energy_ratio << '\n';
    os << "time ratio (conventional/mesh):   " << time_ratio << '\n';
    os << "comparable scaling: " << (scaling_comparable ? "yes" : "no") << '\n';
    os << "mesh energy advantage: " << (neural_advantage ? "yes" : "no")
       << '\n';
    os << "(all figures are model predictions, not measurements)\n";
}

std::vector<double> effective_parallelism(
    std::int64_t walkers, const std::vector<std::int64_t>& ticks_per_step) {
    if (walkers <= 0)
        raise(ErrorKind::domain, "effective parallelism needs walkers > 0");
    std::vector<double> out;
    out.reserve(ticks_per_step.size());
    for (std::int64_t ticks : ticks_per_step) {
        if (ticks <= 0)
            raise(ErrorKind::domain,
                  "every step must take at least one tick");
        out.push_back(static_cast<double>(walkers) /
                      static_cast<double>(ticks));
    }
    return out;
}

double normalize_to_step_count(double measured_seconds,
                               std::int64_t measured_steps,
                               std::int64_t nominal_steps,
                               double tail_ticks_per_step,
                               double seconds_per_tick) {
    if (measured_steps <= 0 || nominal_steps <= 0)
        raise(ErrorKind::domain, "step counts must be positive");
    if (tail_ticks_per_step <= 0.0 || seconds_per_tick <= 0.0)
        raise(ErrorKind::domain, "tick rate and tick time must be positive");
    const double extra = static_cast<double>(measured_steps - nominal_steps);
    return measured_seconds - extra * tail_ticks_per_step * seconds_per_tick;
}

} // namespace spikewalk::cost
