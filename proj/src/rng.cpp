#include "spikewalk/rng.hpp"

namespace spikewalk::rng {

namespace {

// splitmix64 finalizer; full 64-bit avalanche.
inline uint64_t mix(uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace

uint64_t draw_u64(uint64_t master_seed, uint64_t stream_id, uint64_t counter) {
    return mix(mix(mix(master_seed) ^ stream_id) ^ counter);
}

} // namespace spikewalk::rng
