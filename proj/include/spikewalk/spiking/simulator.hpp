#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "spikewalk/spiking/network.hpp"

namespace spikewalk::spiking {

struct SpikeEvent {
    int64_t tick;
    int32_t neuron;
};

// Discrete-time emulator. Tick semantics:
//   1. deliveries scheduled for this tick are accumulated per target,
//   2. every neuron with input (plus every STOCHASTIC_LEAK neuron) updates
//      its potential and makes its fire decision,
//   3. fires enqueue downstream deliveries at tick + delay (delay >= 1).
// All stochastic draws are keyed (master_seed, neuron_id, tick), so two runs
// of the same network and seed produce bit-identical rasters regardless of
// processing order.
class Simulator {
public:
    Simulator(const Network& net, uint64_t master_seed);

    int64_t tick() const { return tick_; }
    int64_t potential(int32_t id) const { return potential_[id]; }
    void set_potential(int32_t id, int64_t v);
    void add_potential(int32_t id, int64_t dv);

    // Schedules an external delivery of `weight` arriving after `delay` ticks.
    void inject(int32_t dst, int32_t weight, int32_t delay = 1);

    // Advances one tick; returns ids fired this tick, ascending.
    const std::vector<int32_t>& step();

    // True when no deliveries other than those emitted by free-running
    // STOCHASTIC_LEAK neurons are in flight. Circuits built by this library
    // guarantee that stochastic-source spikes alone cannot fire a gate, so
    // this is the settled-phase test used between walk-step phases.
    bool quiescent() const { return pending_nonfree_ == 0; }

    // Steps until quiescent(); returns ticks consumed. Raises a structural
    // error after max_ticks (a circuit that never settles is a wiring bug).
    int64_t run_until_quiescent(int64_t max_ticks);

    void enable_raster(bool on) { record_raster_ = on; }
    const std::vector<SpikeEvent>& raster() const { return raster_; }
    void write_raster_csv(std::ostream& os) const;

private:
    struct Delivery {
        int32_t dst;
        int32_t weight;
        bool free_src; // emitted by a STOCHASTIC_LEAK neuron
    };
    struct OutEdge {
        int32_t dst;
        int32_t weight;
        int32_t delay;
    };

    void fire(int32_t id);
    void decide(int32_t id, int64_t input, bool armed);

    const Network& net_;
    uint64_t seed_;
    int64_t tick_ = 0;

    std::vector<int64_t> potential_;
    std::vector<int64_t> acc_;
    std::vector<int64_t> touched_tick_;
    std::vector<int32_t> touched_;
    std::vector<int32_t> fired_;
    std::vector<int32_t> stochastic_ids_;

    std::vector<std::vector<Delivery>> ring_;
    int64_t pending_nonfree_ = 0;

    // CSR over synapses by source
    std::vector<int32_t> out_offset_;
    std::vector<OutEdge> out_edges_;

    bool record_raster_ = false;
    std::vector<SpikeEvent> raster_;
};

} // namespace spikewalk::spiking
