#pragma once

#include <cstdint>
#include <vector>

#include "spikewalk/spiking/network.hpp"
#include "spikewalk/walk/probability_tree.hpp"

namespace spikewalk::walk {

// Counting circuit. The count neuron stores k walkers as potential -k
// (negative distance from threshold). A phase pulse (+1 to both gen and
// count) starts the drain:
//   gen:   TG thr 1, self-loop +1; fires ticks T..T+k (k+1 fires total)
//   count: IF thr 1; reaches threshold at tick T+k-... and fires, inhibiting
//          gen (-1) and vetoing relay (-1)
//   relay: TG thr 1; passes gen spikes minus the veto -> exactly k spikes
// The relay output is the per-walker spike train consumed downstream.
struct CounterCircuit {
    int32_t count = -1;
    int32_t gen = -1;
    int32_t relay = -1;
};

CounterCircuit build_counter_circuit(spiking::Network& net);

// Single-layer compressed exit tree: one probability gate per internal tree
// node (TG, threshold 100, trigger weight k-29, armed uniform noise on
// [-127,128] so the gate fires with exactly k/256), and one output gate per
// surviving leaf firing iff all positive-path gates fired and no
// negative-path gate did. Leaves whose realized (quantized) probability is
// zero are pruned along with gates no surviving leaf references.
struct ExitLayer {
    std::vector<int32_t> outputs;        // per original exit; -1 if pruned
    std::vector<double> realized;        // quantized exit probabilities
    std::vector<int32_t> prob_neurons;   // gates created (diagnostics)
};

ExitLayer build_exit_layer_loihi(spiking::Network& net, int32_t trigger,
                                 const std::vector<double>& nu);

// Fixed four-exit circuit: three stochastic sources s_i (free-running
// STOCHASTIC_LEAK) gate three TG neurons r_i (threshold 1, leak -1, fire iff
// trigger and s_i coincide); outputs implement o0 = r0 & r1, o1 = r0 & !r1,
// o2 = !r0 & r2, o3 = !r0 & !r2 with +1/-1 edges, o3 drawing its excitation
// from the trigger at delay 2.
ExitLayer build_exit_layer_truenorth(spiking::Network& net, int32_t trigger,
                                     const std::vector<double>& nu);

} // namespace spikewalk::walk
