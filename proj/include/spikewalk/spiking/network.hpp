#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spikewalk::spiking {

enum class NeuronKind {
    IF,              // integrate-and-fire: potential persists across ticks
    TG,              // threshold gate: potential is zeroed after every tick
    STOCHASTIC_LEAK, // IF plus a per-tick +1 leak drawn Bernoulli((lambda+1)/256)
};

// Additive integer noise drawn uniformly from [low, high] on ticks where the
// neuron integrates at least one arriving spike. One draw per armed tick.
struct NoiseRange {
    int low = 0;
    int high = 0;
};

struct NeuronParams {
    NeuronKind kind = NeuronKind::TG;
    int64_t threshold = 1;        // must be >= 1
    int64_t reset_potential = 0;  // applied on fire (IF / STOCHASTIC_LEAK)
    int64_t leak = 0;             // per-tick additive term; TG only
    std::optional<uint8_t> stochastic_lambda; // present iff STOCHASTIC_LEAK
    std::optional<NoiseRange> noise;          // IF/TG only
    std::string label;            // count | generator | relay | probability | output | supervisor | ...
};

struct Synapse {
    int32_t src = 0;
    int32_t dst = 0;
    int32_t weight = 0; // nonzero
    int32_t delay = 1;  // ticks, >= 1
};

class Network {
public:
    int32_t add_neuron(NeuronParams params);
    void add_synapse(int32_t src, int32_t dst, int32_t weight, int32_t delay = 1);

    int32_t size() const { return static_cast<int32_t>(neurons_.size()); }
    const NeuronParams& neuron(int32_t id) const { return neurons_[id]; }
    const std::vector<NeuronParams>& neurons() const { return neurons_; }
    const std::vector<Synapse>& synapses() const { return synapses_; }
    int32_t max_delay() const { return max_delay_; }

    // Checks every structural invariant (thresholds >= 1, lambda presence,
    // noise/leak restrictions, synapse endpoints). Raises structural errors.
    void validate() const;

private:
    std::vector<NeuronParams> neurons_;
    std::vector<Synapse> synapses_;
    int32_t max_delay_ = 1;
};

} // namespace spikewalk::spiking
