#include "spikewalk/spiking/network.hpp"

#include "spikewalk/error.hpp"

namespace spikewalk::spiking {

int32_t Network::add_neuron(NeuronParams params) {
    if (params.threshold < 1)
        raise(ErrorKind::structural, "neuron threshold must be >= 1");
    const bool is_stochastic = params.kind == NeuronKind::STOCHASTIC_LEAK;
    if (is_stochastic != params.stochastic_lambda.has_value())
        raise(ErrorKind::structural, "stochastic_lambda must be present exactly for STOCHASTIC_LEAK neurons");
    if (is_stochastic && params.noise)
        raise(ErrorKind::structural, "noise injection cannot be combined with stochastic leak");
    if (params.leak != 0 && params.kind != NeuronKind::TG)
        raise(ErrorKind::structural, "per-tick leak is only supported on TG neurons");
    if (params.leak > 0)
        raise(ErrorKind::structural, "TG leak must be <= 0 (a positive leak would self-fire)");
    if (params.noise && params.noise->low > params.noise->high)
        raise(ErrorKind::structural, "noise range is empty");
    neurons_.push_back(std::move(params));
    return static_cast<int32_t>(neurons_.size()) - 1;
}

void Network::add_synapse(int32_t src, int32_t dst, int32_t weight, int32_t delay) {
    const auto n = static_cast<int32_t>(neurons_.size());
    if (src < 0 || src >= n || dst < 0 || dst >= n)
        raise(ErrorKind::structural, "synapse endpoint refers to an unknown neuron id");
    // A zero-weight spike still arms the destination's noise draw, so it is
    // meaningful wiring for stochastic gates and a silent no-op anywhere else.
    if (weight == 0 && !neurons_[dst].noise)
        raise(ErrorKind::structural,
              "zero-weight synapse onto a neuron without noise has no effect");
    if (delay < 1 || delay > 64)
        raise(ErrorKind::structural, "synapse delay must be in [1, 64]");
    synapses_.push_back({src, dst, weight, delay});
    if (delay > max_delay_) max_delay_ = delay;
}

void Network::validate() const {
    for (const auto& s : synapses_) {
        if (s.src < 0 || s.src >= size() || s.dst < 0 || s.dst >= size())
            raise(ErrorKind::structural, "synapse endpoint out of range");
    }
}

} // namespace spikewalk::spiking
