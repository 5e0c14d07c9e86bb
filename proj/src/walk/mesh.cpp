#include "spikewalk/walk/mesh.hpp"

#include <ostream>

#include <nlohmann/json.hpp>

#include "spikewalk/error.hpp"

namespace spikewalk::walk {

using spiking::NeuronKind;
using spiking::NeuronParams;

int64_t walker_cap(Platform platform) {
    return platform == Platform::kLoihi ? 1000 : 393215;
}

CompiledMesh compile_mesh(const dtmc::TransitionModel& chain, Platform platform) {
    chain.validate();
    if (chain.time_indexed()) {
        raise(ErrorKind::config, "mesh compilation needs a time-homogeneous chain; "
                                 "collapse the time tensor first");
    }
    const int n = chain.n_states();
    const Eigen::MatrixXd& p = chain.matrix(0);

    CompiledMesh mesh;
    mesh.platform = platform;
    mesh.dt = chain.dt;
    mesh.positions = chain.positions;
    mesh.absorbing = chain.absorbing;
    mesh.nodes.resize(static_cast<size_t>(n));

    NeuronParams clock;
    clock.kind = NeuronKind::TG;
    clock.threshold = 1;
    clock.label = "supervisor";
    mesh.supervisor_a = mesh.net.add_neuron(clock);
    mesh.supervisor_b = mesh.net.add_neuron(clock);

    // All buffers must exist before exit wiring, so build in two passes.
    for (int i = 0; i < n; ++i) {
        MeshNode& node = mesh.nodes[static_cast<size_t>(i)];
        const int32_t n0 = mesh.net.size();
        const auto s0 = mesh.net.synapses().size();
        node.buffer = build_counter_circuit(mesh.net);
        node.counter = build_counter_circuit(mesh.net);
        mesh.net.add_synapse(mesh.supervisor_a, node.buffer.gen, +1, 1);
        mesh.net.add_synapse(mesh.supervisor_a, node.buffer.count, +1, 1);
        mesh.net.add_synapse(mesh.supervisor_b, node.counter.gen, +1, 1);
        mesh.net.add_synapse(mesh.supervisor_b, node.counter.count, +1, 1);
        mesh.net.add_synapse(node.buffer.relay, node.counter.count, -1, 1);
        node.neuron_count += mesh.net.size() - n0;
        node.synapse_count += static_cast<int64_t>(mesh.net.synapses().size() - s0);
    }

    for (int i = 0; i < n; ++i) {
        MeshNode& node = mesh.nodes[static_cast<size_t>(i)];
        const int32_t n0 = mesh.net.size();
        const auto s0 = mesh.net.synapses().size();

        std::vector<int32_t> dests;
        std::vector<double> nu;
        for (int j = 0; j < n; ++j) {
            if (p(i, j) > 0.0) {
                dests.push_back(j);
                nu.push_back(p(i, j));
            }
        }
        if (dests.empty()) raise(ErrorKind::structural, "state with no exits");

        if (dests.size() == 1) {
            // Deterministic transition: the counter relay deposits walkers
            // into the destination buffer directly.
            mesh.net.add_synapse(node.counter.relay,
                                 mesh.nodes[static_cast<size_t>(dests[0])].buffer.count, -1, 1);
            node.exits.emplace_back(dests[0], 1.0);
        } else {
            const ExitLayer layer =
                platform == Platform::kLoihi
                    ? build_exit_layer_loihi(mesh.net, node.counter.relay, nu)
                    : build_exit_layer_truenorth(mesh.net, node.counter.relay, nu);
            node.probability_neurons = layer.prob_neurons;
            for (size_t e = 0; e < dests.size(); ++e) {
                if (layer.outputs[e] == -1) continue;
                node.output_neurons.push_back(layer.outputs[e]);
                mesh.net.add_synapse(layer.outputs[e],
                                     mesh.nodes[static_cast<size_t>(dests[e])].buffer.count, -1, 1);
                node.exits.emplace_back(dests[e], layer.realized[e]);
            }
        }
        node.neuron_count += mesh.net.size() - n0;
        node.synapse_count += static_cast<int64_t>(mesh.net.synapses().size() - s0);
    }

    mesh.net.validate();
    return mesh;
}

dtmc::TransitionModel CompiledMesh::realized_model() const {
    dtmc::TransitionModel model;
    model.dt = dt;
    model.positions = positions;
    model.absorbing = absorbing;
    const int n = n_states();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (const auto& [dest, prob] : nodes[static_cast<size_t>(i)].exits) {
            m(i, dest) += prob;
        }
        dtmc::repair_row_sum(m.row(i)); // no-op for exact dyadic rows
    }
    model.steps.push_back(std::move(m));
    model.validate();
    return model;
}

void CompiledMesh::write_summary_json(std::ostream& os) const {
    nlohmann::json j;
    j["platform"] = platform == Platform::kLoihi ? "LOIHI" : "TRUENORTH";
    j["n_states"] = n_states();
    j["total_neurons"] = net.size();
    j["total_synapses"] = net.synapses().size();
    nlohmann::json per_node = nlohmann::json::array();
    for (int i = 0; i < n_states(); ++i) {
        const MeshNode& node = nodes[static_cast<size_t>(i)];
        per_node.push_back({{"state", i},
                            {"neurons", node.neuron_count},
                            {"synapses", node.synapse_count},
                            {"exits", node.exits.size()}});
    }
    j["nodes"] = std::move(per_node);
    os << j.dump(2) << '\n';
}

void inject_initial_count(spiking::Simulator& sim, const CompiledMesh& mesh, int state,
                          int64_t count) {
    if (state < 0 || state >= mesh.n_states()) {
        raise(ErrorKind::domain, "state out of range");
    }
    if (count < 0) raise(ErrorKind::domain, "walker count must be non-negative");
    if (count > walker_cap(mesh.platform)) {
        raise(ErrorKind::capacity,
              "walker count " + std::to_string(count) + " exceeds platform cap " +
                  std::to_string(walker_cap(mesh.platform)));
    }
    sim.add_potential(mesh.nodes[static_cast<size_t>(state)].buffer.count, -count);
}

DensitySeries simulate_density(const CompiledMesh& mesh, const std::vector<int64_t>& initial,
                               int steps, uint64_t seed) {
    if (static_cast<int>(initial.size()) != mesh.n_states()) {
        raise(ErrorKind::config, "initial counts must cover every state");
    }
    if (steps < 0) raise(ErrorKind::domain, "step count must be non-negative");

    spiking::Simulator sim(mesh.net, seed);
    DensitySeries d;
    d.dt = mesh.dt;
    d.counts.setZero(steps + 1, mesh.n_states());
    int64_t total = 0;
    for (int s = 0; s < mesh.n_states(); ++s) {
        if (initial[static_cast<size_t>(s)] == 0) continue;
        inject_initial_count(sim, mesh, s, initial[static_cast<size_t>(s)]);
        d.counts(0, s) = initial[static_cast<size_t>(s)];
        total += initial[static_cast<size_t>(s)];
    }

    // Each phase settles after (walkers at the busiest node) + a small
    // pipeline constant; the total walker count bounds the busiest node.
    const int64_t phase_budget = total + 256;
    for (int step = 1; step <= steps; ++step) {
        const int64_t t0 = sim.tick();
        sim.inject(mesh.supervisor_a, +1, 1);
        sim.run_until_quiescent(phase_budget);
        sim.inject(mesh.supervisor_b, +1, 1);
        sim.run_until_quiescent(phase_budget);
        for (int s = 0; s < mesh.n_states(); ++s) {
            d.counts(step, s) = -sim.potential(mesh.nodes[static_cast<size_t>(s)].buffer.count);
        }
        d.ticks_per_step.push_back(sim.tick() - t0);
    }
    return d;
}

} // namespace spikewalk::walk
