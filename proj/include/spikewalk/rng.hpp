#pragma once

#include <cstdint>

namespace spikewalk::rng {

// Counter-based generator: every draw is a pure hash of
// (master_seed, stream_id, counter). Streams are cheap to split (one per
// stochastic neuron or per sample path) and draws do not depend on the order
// in which streams are advanced, so simulations are reproducible bit-for-bit
// regardless of scheduling.
uint64_t draw_u64(uint64_t master_seed, uint64_t stream_id, uint64_t counter);

// Uniform integer in [0, 255].
inline uint8_t draw_u8(uint64_t master_seed, uint64_t stream_id, uint64_t counter) {
    return static_cast<uint8_t>(draw_u64(master_seed, stream_id, counter) >> 56);
}

// Uniform integer in [-127, 128] (256 values).
inline int draw_noise(uint64_t master_seed, uint64_t stream_id, uint64_t counter) {
    return static_cast<int>(draw_u8(master_seed, stream_id, counter)) - 127;
}

// Uniform double in [0, 1) with 53 random bits.
inline double draw_unit(uint64_t master_seed, uint64_t stream_id, uint64_t counter) {
    return static_cast<double>(draw_u64(master_seed, stream_id, counter) >> 11) * 0x1.0p-53;
}

// Convenience wrapper holding (seed, stream) and a running counter.
class Stream {
public:
    Stream(uint64_t master_seed, uint64_t stream_id)
        : seed_(master_seed), stream_(stream_id) {}

    uint64_t next_u64() { return draw_u64(seed_, stream_, counter_++); }
    uint8_t next_u8() { return static_cast<uint8_t>(next_u64() >> 56); }
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    uint64_t counter() const { return counter_; }

private:
    uint64_t seed_;
    uint64_t stream_;
    uint64_t counter_ = 0;
};

} // namespace spikewalk::rng
