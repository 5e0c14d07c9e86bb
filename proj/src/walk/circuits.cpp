#include "spikewalk/walk/circuits.hpp"

#include <array>

#include "spikewalk/error.hpp"

namespace spikewalk::walk {

using spiking::NeuronKind;
using spiking::NeuronParams;

CounterCircuit build_counter_circuit(spiking::Network& net) {
    CounterCircuit c;
    NeuronParams count;
    count.kind = NeuronKind::IF;
    count.threshold = 1;
    count.reset_potential = 0;
    count.label = "count";
    c.count = net.add_neuron(count);

    NeuronParams gen;
    gen.kind = NeuronKind::TG;
    gen.threshold = 1;
    gen.label = "generator";
    c.gen = net.add_neuron(gen);

    NeuronParams relay;
    relay.kind = NeuronKind::TG;
    relay.threshold = 1;
    relay.label = "relay";
    c.relay = net.add_neuron(relay);

    net.add_synapse(c.gen, c.gen, +1);   // keeps the drain running
    net.add_synapse(c.gen, c.count, +1); // one increment per emitted walker
    net.add_synapse(c.gen, c.relay, +1);
    net.add_synapse(c.count, c.gen, -1); // stop signal
    net.add_synapse(c.count, c.relay, -1); // cancels the surplus gen spike
    return c;
}

ExitLayer build_exit_layer_loihi(spiking::Network& net, int32_t trigger,
                                 const std::vector<double>& nu) {
    const ProbabilityTree tree = build_probability_tree(nu);
    const int n_internal = tree.n_leaves - 1;

    std::vector<QuantizedProb> q(n_internal);
    for (int i = 0; i < n_internal; ++i) q[i] = quantize_probability(tree.p[i]);

    // Realized leaf probability after quantization; zero-probability leaves
    // are pruned. Products of k/256 stay exact in double for depth <= 6.
    ExitLayer layer;
    layer.realized.assign(tree.n_original, 0.0);
    std::vector<double> leaf_realized(tree.n_leaves, 0.0);
    for (int j = 0; j < tree.n_leaves; ++j) {
        double prob = 1.0;
        for (const auto& [node, positive] : tree.path(j))
            prob *= positive ? q[node].realized() : 1.0 - q[node].realized();
        leaf_realized[j] = prob;
        if (j < tree.n_original) layer.realized[j] = prob;
    }

    // A gate is materialized only if some surviving leaf crosses it and it
    // can fire (k >= 1). Gates with k = 0 never fire: their positive subtree
    // is dead and their vetoes are vacuous.
    std::vector<int32_t> gate(n_internal, -1);
    for (int j = 0; j < tree.n_leaves; ++j) {
        if (leaf_realized[j] == 0.0) continue;
        for (const auto& [node, positive] : tree.path(j)) {
            (void)positive;
            if (q[node].removed || gate[node] != -1) continue;
            NeuronParams p;
            p.kind = NeuronKind::TG;
            p.threshold = kLoihiGateThreshold;
            p.noise = spiking::NoiseRange{kLoihiNoiseLow, kLoihiNoiseHigh};
            p.label = "probability";
            gate[node] = net.add_neuron(p);
            net.add_synapse(trigger, gate[node], loihi_weight_for_count(q[node].k), 1);
            layer.prob_neurons.push_back(gate[node]);
        }
    }

    layer.outputs.assign(tree.n_original, -1);
    for (int j = 0; j < tree.n_leaves; ++j) {
        if (j >= tree.n_original || leaf_realized[j] == 0.0) continue;
        int positives = 0;
        for (const auto& [node, positive] : tree.path(j))
            if (positive && gate[node] != -1) ++positives;

        NeuronParams p;
        p.kind = NeuronKind::TG;
        p.threshold = positives > 0 ? positives : 1;
        p.label = "output";
        const int32_t out = net.add_neuron(p);
        layer.outputs[j] = out;

        const int32_t veto = -static_cast<int32_t>(p.threshold);
        for (const auto& [node, positive] : tree.path(j)) {
            if (gate[node] == -1) continue;
            net.add_synapse(gate[node], out, positive ? +1 : veto, 1);
        }
        if (positives == 0)
            net.add_synapse(trigger, out, +1, 2); // skips the gate layer
    }
    return layer;
}

ExitLayer build_exit_layer_truenorth(spiking::Network& net, int32_t trigger,
                                     const std::vector<double>& nu) {
    if (nu.size() > 4)
        raise(ErrorKind::capacity, "four-exit circuit cannot realize fan-out > 4");
    std::array<double, 4> padded{0.0, 0.0, 0.0, 0.0};
    for (size_t i = 0; i < nu.size(); ++i) padded[i] = nu[i];
    const TruenorthSplit split = build_truenorth_split(padded);

    // r gate fed by a free-running stochastic source; fires iff the walker
    // trigger and the source spike coincide.
    auto make_gate = [&](const QuantizedProb& qp) -> int32_t {
        if (qp.removed) return -1;
        NeuronParams s;
        s.kind = NeuronKind::STOCHASTIC_LEAK;
        s.threshold = 1;
        s.reset_potential = 0;
        s.stochastic_lambda = qp.lambda();
        s.label = "probability";
        const int32_t src = net.add_neuron(s);

        NeuronParams r;
        r.kind = NeuronKind::TG;
        r.threshold = 1;
        r.leak = -1;
        r.label = "probability";
        const int32_t gate = net.add_neuron(r);
        net.add_synapse(src, gate, +1, 1);
        net.add_synapse(trigger, gate, +1, 1);
        return gate;
    };

    const int32_t r0 = make_gate(split.r0);
    const int32_t r1 = make_gate(split.r1);
    const int32_t r2 = make_gate(split.r2);

    ExitLayer layer;
    layer.outputs.assign(nu.size(), -1);
    layer.realized.assign(nu.size(), 0.0);
    for (size_t i = 0; i < nu.size(); ++i) layer.realized[i] = split.realized[i];
    for (int32_t g : {r0, r1, r2})
        if (g != -1) layer.prob_neurons.push_back(g);

    auto make_output = [&](size_t exit) -> int32_t {
        if (exit >= nu.size() || split.realized[exit] == 0.0) return -1;
        NeuronParams p;
        p.kind = NeuronKind::TG;
        p.label = "output";
        p.threshold = exit == 0 ? 2 : 1;
        const int32_t out = net.add_neuron(p);
        layer.outputs[exit] = out;
        return out;
    };

    if (const int32_t o0 = make_output(0); o0 != -1) {
        net.add_synapse(r0, o0, +1, 1);
        net.add_synapse(r1, o0, +1, 1);
    }
    if (const int32_t o1 = make_output(1); o1 != -1) {
        net.add_synapse(r0, o1, +1, 1);
        if (r1 != -1) net.add_synapse(r1, o1, -1, 1);
    }
    if (const int32_t o2 = make_output(2); o2 != -1) {
        net.add_synapse(r2, o2, +1, 1);
        if (r0 != -1) net.add_synapse(r0, o2, -1, 1);
    }
    if (const int32_t o3 = make_output(3); o3 != -1) {
        net.add_synapse(trigger, o3, +1, 2);
        if (r0 != -1) net.add_synapse(r0, o3, -1, 1);
        if (r2 != -1) net.add_synapse(r2, o3, -1, 1);
    }
    return layer;
}

} // namespace spikewalk::walk
