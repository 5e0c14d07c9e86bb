#pragma once

// Analytic time/energy cost model comparing a conventional processor against
// a spiking mesh for random-walk workloads. All numbers are model outputs
// derived from published per-update figures, not measurements of this host.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace spikewalk::cost {

enum class PlatformKind { kVonNeumann, kNeural };

struct PlatformParams {
    PlatformKind kind = PlatformKind::kVonNeumann;
    std::string name;
    int cores = 1;                    // parallel lanes available
    double seconds_per_update = 0.0;  // wall time of one walker update
    double joules_per_update = 0.0;   // point estimate used for predictions
    int mesh_states = 0;              // states a mesh maps onto (<=0: unknown)
    double updates_per_joule_lo = 0.0; // efficiency band, low end
    double updates_per_joule_hi = 0.0; // efficiency band, high end
};

// Defaults built from published per-update efficiency figures. The names mark
// them as model parameters rather than measurements.
PlatformParams default_cpu_platform();
PlatformParams default_neural_platform();

struct Workload {
    std::int64_t walkers = 0;
    std::int64_t steps = 0;
};

// Wall-clock prediction: one update per walker per step, divided by the
// usable parallelism (cores, additionally capped by mesh size for the neural
// platform when the mesh size is known).
double predict_time_seconds(const PlatformParams& p, const Workload& w);

// Energy prediction: per-update energy times total updates; parallelism does
// not change the amount of work.
double predict_energy_joules(const PlatformParams& p, const Workload& w);

struct EnergyBand {
    double lo_joules = 0.0; // best case (high efficiency)
    double hi_joules = 0.0; // worst case (low efficiency)
};

// Energy range implied by the platform's efficiency band.
EnergyBand predict_energy_band(const PlatformParams& p, const Workload& w);

struct AdvantageReport {
    Workload workload;
    PlatformParams vn;
    PlatformParams neural;
    double vn_time_seconds = 0.0;
    double neural_time_seconds = 0.0;
    double vn_energy_joules = 0.0;
    double neural_energy_joules = 0.0;
    EnergyBand vn_energy_band;
    EnergyBand neural_energy_band;
    double time_ratio = 0.0;   // vn / neural
    double energy_ratio = 0.0; // vn / neural
    bool scaling_comparable = false; // both models linear with bounded slopes
    bool neural_advantage = false;   // energy_ratio > 1 and comparable scaling

    void write_json(std::ostream& os) const;
    void write_table(std::ostream& os) const;
};

AdvantageReport compare_platforms(const PlatformParams& vn,
                                  const PlatformParams& neural,
                                  const Workload& w);

// Walkers serviced per tick at each step of a finished run: walkers divided
// by the ticks that step took. Rises toward the hardware parallelism limit as
// walkers spread over the mesh.
std::vector<double> effective_parallelism(
    std::int64_t walkers, const std::vector<std::int64_t>& ticks_per_step);

// Adjust a measured wall time taken over `measured_steps` steps down (or up)
// to the nominal step count, using the tick rate observed in the run's tail.
double normalize_to_step_count(double measured_seconds,
                               std::int64_t measured_steps,
                               std::int64_t nominal_steps,
                               double tail_ticks_per_step,
                               double seconds_per_tick);

} // namespace spikewalk::cost
