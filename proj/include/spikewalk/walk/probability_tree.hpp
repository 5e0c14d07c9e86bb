#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace spikewalk::walk {

// Balanced binary decision tree over a node's exit distribution, stored in
// heap order: internal node i has children 2i+1, 2i+2; leaf slot j lives at
// heap index (n_leaves - 1 + j). Each internal node fires with probability
// p = (sum of leaf weights in its left subtree) / (sum in its subtree);
// firing selects the left branch. The product of branch probabilities along
// a root-to-leaf path telescopes to nu_j / sum(nu).
struct ProbabilityTree {
    int n_leaves = 0;   // padded to a power of two
    int n_original = 0; // exits supplied by the caller
    std::vector<double> p;  // size n_leaves - 1, heap order
    std::vector<double> nu; // padded, as supplied (zero padding)

    int depth() const;
    // (node heap index, edge-is-positive) pairs from root to leaf j.
    std::vector<std::pair<int, bool>> path(int leaf) const;
    // Product of branch probabilities along the path (diagnostic).
    double leaf_probability(int leaf) const;
};

// Preconditions: nu nonempty, entries >= 0, sum within 1e-9 of 1.
ProbabilityTree build_probability_tree(const std::vector<double>& nu);

// 8-bit probability: k = round(256 p). k = 0 removes the synapse entirely;
// otherwise the stored leak value lambda = k - 1 realizes exactly k/256.
struct QuantizedProb {
    bool removed = true;
    int k = 0; // 1..256 when not removed

    uint8_t lambda() const { return static_cast<uint8_t>(k - 1); }
    double realized() const { return removed ? 0.0 : k / 256.0; }
};

QuantizedProb quantize_probability(double p);

// Synaptic weight for a target with threshold 100 receiving additive uniform
// integer noise on [-127, 128]: w = round(128 p + 36). Against that noise
// model the realized fire rate is clamp(w + 29, 0, 256)/256, which deviates
// from p away from the midpoint; see loihi_fire_rate_for_weight.
int loihi_weight_for_probability(double p);

// Exact fire rate of (w + noise >= 100) with noise uniform on [-127, 128].
double loihi_fire_rate_for_weight(int w);

// Weight realizing exactly k/256 under the same threshold/noise model.
inline int loihi_weight_for_count(int k) { return k - 29; }

inline constexpr int64_t kLoihiGateThreshold = 100;
inline constexpr int kLoihiNoiseLow = -127;
inline constexpr int kLoihiNoiseHigh = 128;

// Four-exit split used by the fixed three-gate circuit: r0 routes between the
// {0,1} and {2,3} pairs, r1 picks within the first pair, r2 within the second.
//   P(r0) = nu0 + nu1, P(r1) = nu0 / (nu0 + nu1), P(r2) = nu2 / (nu2 + nu3),
// with 0/0 handled as 0. Outcomes: o0 = r0 & r1, o1 = r0 & !r1,
// o2 = !r0 & r2, o3 = !r0 & !r2.
struct TruenorthSplit {
    QuantizedProb r0, r1, r2;
    std::array<double, 4> realized{}; // exact dyadic products, sum to 1
};

// Preconditions: nu entries >= 0, sum within 1e-9 of 1.
TruenorthSplit build_truenorth_split(const std::array<double, 4>& nu);

} // namespace spikewalk::walk
