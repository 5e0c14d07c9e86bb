#include "spikewalk/spiking/simulator.hpp"

#include <algorithm>
#include <ostream>

#include "spikewalk/error.hpp"
#include "spikewalk/rng.hpp"

namespace spikewalk::spiking {

Simulator::Simulator(const Network& net, uint64_t master_seed)
    : net_(net), seed_(master_seed) {
    net_.validate();
    const auto n = net_.size();
    potential_.assign(n, 0);
    acc_.assign(n, 0);
    touched_tick_.assign(n, -1);
    ring_.assign(static_cast<size_t>(net_.max_delay()) + 1, {});

    for (int32_t id = 0; id < n; ++id)
        if (net_.neuron(id).kind == NeuronKind::STOCHASTIC_LEAK)
            stochastic_ids_.push_back(id);

    // CSR by source
    out_offset_.assign(n + 1, 0);
    for (const auto& s : net_.synapses()) ++out_offset_[s.src + 1];
    for (int32_t i = 0; i < n; ++i) out_offset_[i + 1] += out_offset_[i];
    out_edges_.resize(net_.synapses().size());
    std::vector<int32_t> cursor(out_offset_.begin(), out_offset_.end() - 1);
    for (const auto& s : net_.synapses())
        out_edges_[cursor[s.src]++] = {s.dst, s.weight, s.delay};
}

void Simulator::set_potential(int32_t id, int64_t v) {
    if (id < 0 || id >= net_.size())
        raise(ErrorKind::structural, "unknown neuron id");
    potential_[id] = v;
}

void Simulator::add_potential(int32_t id, int64_t dv) {
    if (id < 0 || id >= net_.size())
        raise(ErrorKind::structural, "unknown neuron id");
    potential_[id] += dv;
}

void Simulator::inject(int32_t dst, int32_t weight, int32_t delay) {
    if (dst < 0 || dst >= net_.size())
        raise(ErrorKind::structural, "unknown neuron id in delivery queue");
    if (delay < 1) raise(ErrorKind::structural, "delivery delay must be >= 1");
    // The ring only spans the network's maximum synapse delay; a longer
    // external delay would wrap onto an earlier slot.
    if (delay >= static_cast<int32_t>(ring_.size()))
        raise(ErrorKind::structural, "delivery delay exceeds the network's delay horizon");
    ring_[(tick_ + delay) % static_cast<int64_t>(ring_.size())].push_back({dst, weight, false});
    ++pending_nonfree_;
}

void Simulator::fire(int32_t id) {
    fired_.push_back(id);
    if (record_raster_) raster_.push_back({tick_, id});
    const bool free_src = net_.neuron(id).kind == NeuronKind::STOCHASTIC_LEAK;
    const auto R = static_cast<int64_t>(ring_.size());
    for (int32_t e = out_offset_[id]; e < out_offset_[id + 1]; ++e) {
        const auto& edge = out_edges_[e];
        ring_[(tick_ + edge.delay) % R].push_back({edge.dst, edge.weight, free_src});
        if (!free_src) ++pending_nonfree_;
    }
}

void Simulator::decide(int32_t id, int64_t input, bool armed) {
    const auto& p = net_.neuron(id);
    switch (p.kind) {
    case NeuronKind::IF: {
        int64_t v = potential_[id] + input;
        if (armed && p.noise) {
            const uint64_t span = static_cast<uint64_t>(p.noise->high - p.noise->low) + 1;
            v += p.noise->low +
                 static_cast<int64_t>(rng::draw_u64(seed_, static_cast<uint64_t>(id),
                                                    static_cast<uint64_t>(tick_)) % span);
        }
        if (v >= p.threshold) {
            fire(id);
            v = p.reset_potential;
        }
        potential_[id] = v;
        break;
    }
    case NeuronKind::TG: {
        int64_t v = input + p.leak;
        if (armed && p.noise) {
            const uint64_t span = static_cast<uint64_t>(p.noise->high - p.noise->low) + 1;
            v += p.noise->low +
                 static_cast<int64_t>(rng::draw_u64(seed_, static_cast<uint64_t>(id),
                                                    static_cast<uint64_t>(tick_)) % span);
        }
        if (v >= p.threshold) fire(id);
        // potential is discarded every tick
        break;
    }
    case NeuronKind::STOCHASTIC_LEAK: {
        const uint8_t rho = rng::draw_u8(seed_, static_cast<uint64_t>(id),
                                         static_cast<uint64_t>(tick_));
        const int64_t leak = (*p.stochastic_lambda >= rho) ? 1 : 0;
        int64_t v = potential_[id] + input + leak;
        if (v >= p.threshold) {
            fire(id);
            v = p.reset_potential;
        }
        potential_[id] = v;
        break;
    }
    }
}

const std::vector<int32_t>& Simulator::step() {
    ++tick_;
    auto& slot = ring_[tick_ % static_cast<int64_t>(ring_.size())];
    touched_.clear();
    for (const auto& d : slot) {
        if (touched_tick_[d.dst] != tick_) {
            touched_tick_[d.dst] = tick_;
            acc_[d.dst] = 0;
            touched_.push_back(d.dst);
        }
        acc_[d.dst] += d.weight;
        if (!d.free_src) --pending_nonfree_;
    }
    slot.clear();

    fired_.clear();
    // Free-running stochastic neurons tick every step (one draw per tick).
    for (int32_t id : stochastic_ids_) {
        const bool armed = touched_tick_[id] == tick_;
        decide(id, armed ? acc_[id] : 0, armed);
        if (armed) touched_tick_[id] = -1; // consumed
    }
    for (int32_t id : touched_) {
        if (touched_tick_[id] != tick_) continue; // consumed above
        decide(id, acc_[id], true);
    }
    std::sort(fired_.begin(), fired_.end());
    return fired_;
}

int64_t Simulator::run_until_quiescent(int64_t max_ticks) {
    int64_t ticks = 0;
    while (!quiescent()) {
        if (ticks >= max_ticks)
            raise(ErrorKind::structural, "circuit failed to settle within the tick budget");
        step();
        ++ticks;
    }
    return ticks;
}

void Simulator::write_raster_csv(std::ostream& os) const {
    os << "tick,neuron_id,label\n";
    for (const auto& e : raster_)
        os << e.tick << ',' << e.neuron << ',' << net_.neuron(e.neuron).label << '\n';
}

} // namespace spikewalk::spiking
