#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "spikewalk/density_series.hpp"
#include "spikewalk/dtmc/transition_model.hpp"
#include "spikewalk/spiking/network.hpp"
#include "spikewalk/spiking/simulator.hpp"
#include "spikewalk/walk/circuits.hpp"

namespace spikewalk::walk {

enum class Platform { kLoihi, kTruenorth };

// Walkers a single mesh point can hold: 1000 / 393215.
int64_t walker_cap(Platform platform);

// Circuit block for one chain state. Walkers arrive as -1 spikes on
// buffer.count; phase A moves them to counter.count; phase B drains the
// counter through the exit layer into destination buffers. A state whose row
// has a single nonzero exit skips the probability layer (its counter relay
// feeds the destination buffer directly).
struct MeshNode {
    CounterCircuit buffer;
    CounterCircuit counter;
    std::vector<int32_t> probability_neurons;
    std::vector<int32_t> output_neurons;
    std::vector<std::pair<int32_t, double>> exits; // (destination, realized prob)
    int32_t neuron_count = 0;
    int64_t synapse_count = 0;
};

struct CompiledMesh {
    spiking::Network net;
    std::vector<MeshNode> nodes;
    int32_t supervisor_a = -1; // phase A clock: buffer -> counter
    int32_t supervisor_b = -1; // phase B clock: counter -> exits -> buffers
    Platform platform = Platform::kLoihi;
    double dt = 1.0;
    Eigen::MatrixXd positions;
    std::optional<int> absorbing;

    int n_states() const { return static_cast<int>(nodes.size()); }

    // The chain this circuit actually runs: per-node realized (8-bit
    // quantized) exit rows.
    dtmc::TransitionModel realized_model() const;

    // Neuron/synapse tallies per node plus totals (cost-model input).
    void write_summary_json(std::ostream& os) const;
};

// Compiles a time-homogeneous chain into one node circuit per state plus two
// supervisor clock neurons. Loihi profile: compressed-tree exit layers of
// arbitrary power-of-two fan-out. TrueNorth profile: fixed four-exit
// circuits; rows with more than four nonzero exits raise a capacity error.
CompiledMesh compile_mesh(const dtmc::TransitionModel& chain, Platform platform);

// Encodes `count` walkers at `state` as potential -count on the state's
// buffer count neuron. Counts above the platform cap raise a capacity error.
void inject_initial_count(spiking::Simulator& sim, const CompiledMesh& mesh, int state,
                          int64_t count);

// Runs `steps` two-phase walk steps (one supervisor pulse per phase, each
// phase running to quiescence) and snapshots per-state walker counts after
// each step. Row 0 holds the initial placement; ticks_per_step records the
// emulator ticks each walk step consumed.
DensitySeries simulate_density(const CompiledMesh& mesh, const std::vector<int64_t>& initial,
                               int steps, uint64_t seed);

} // namespace spikewalk::walk
