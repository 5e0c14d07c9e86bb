// Command-line driver: builds chains, runs walker ensembles on the reference
// sampler or the emulated spiking mesh, evaluates Feynman-Kac estimates, and
// reports the analytic platform cost comparison.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "spikewalk/cost/model.hpp"
#include "spikewalk/density_series.hpp"
#include "spikewalk/dtmc/builder.hpp"
#include "spikewalk/dtmc/sampler.hpp"
#include "spikewalk/dtmc/transition_model.hpp"
#include "spikewalk/error.hpp"
#include "spikewalk/fk/estimators.hpp"
#include "spikewalk/problems/problems.hpp"
#include "spikewalk/walk/mesh.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace spikewalk;

constexpr const char* kVersion = "0.1.0";
constexpr std::uint64_t kSeedStride = 0x9e3779b97f4a7c15ULL;

struct Options {
    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    std::string platform = "REFERENCE";
    std::int64_t walkers = 0; // 0: use the problem default
    int steps = 0;            // 0: use the problem default
    bool force = false;
    bool realized = false; // sample the chain the compiled circuit realizes
    std::string problem;
    int torus_n = 21;
    int start = -1; // -1: all problem starts
    double cpu_updates_per_joule = 0.0;
    std::string ticks_file;
    json config; // parsed --config document (null when absent)
};

enum class Engine { kReference, kLoihi, kTruenorth };

Engine parse_engine(const std::string& name) {
    std::string s = name;
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    if (s == "REFERENCE") return Engine::kReference;
    if (s == "LOIHI") return Engine::kLoihi;
    if (s == "TRUENORTH") return Engine::kTruenorth;
    raise(ErrorKind::config, "unknown platform '" + name +
                                 "' (expected REFERENCE, LOIHI, or TRUENORTH)");
}

walk::Platform to_platform(Engine e) {
    return e == Engine::kLoihi ? walk::Platform::kLoihi
                               : walk::Platform::kTruenorth;
}

double config_number(const json& j, const std::string& key) {
    if (!j.at(key).is_number())
        raise(ErrorKind::config, "config key '" + key + "' must be a number");
    return j.at(key).get<double>();
}

template <typename T>
void config_take(const json& cfg, const char* key, bool cli_set, T& dst) {
    if (cli_set || !cfg.contains(key)) return;
    try {
        dst = cfg.at(key).get<T>();
    } catch (const json::exception&) {
        raise(ErrorKind::config,
              std::string("config key '") + key + "' has the wrong type");
    }
}

void merge_config(const CLI::App& app, Options& opt) {
    if (opt.config_path.empty()) return;
    std::ifstream in(opt.config_path);
    if (!in)
        raise(ErrorKind::config, "cannot open config file " + opt.config_path);
    try {
        in >> opt.config;
    } catch (const json::exception& e) {
        raise(ErrorKind::config,
              "config file " + opt.config_path + " is not valid JSON: " + e.what());
    }
    if (!opt.config.is_object())
        raise(ErrorKind::config, "config file must hold a JSON object");
    const json& c = opt.config;
    config_take(c, "out", app.count("--out") > 0, opt.out_dir);
    config_take(c, "seed", app.count("--seed") > 0, opt.seed);
    config_take(c, "platform", app.count("--platform") > 0, opt.platform);
    config_take(c, "walkers", app.count("--walkers") > 0, opt.walkers);
    config_take(c, "steps", app.count("--steps") > 0, opt.steps);
    config_take(c, "force", app.count("--force") > 0, opt.force);
    config_take(c, "realized", app.count("--realized") > 0, opt.realized);
    config_take(c, "problem", app.count("--problem") > 0, opt.problem);
    config_take(c, "n", app.count("--n") > 0, opt.torus_n);
    config_take(c, "start", app.count("--start") > 0, opt.start);
    config_take(c, "cpu_updates_per_joule",
                app.count("--cpu-updates-per-joule") > 0,
                opt.cpu_updates_per_joule);
    config_take(c, "ticks_file", app.count("--ticks-file") > 0, opt.ticks_file);
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream os(path);
    if (!os)
        raise(ErrorKind::config, "cannot write output file " + path.string());
    os << std::setprecision(17);
    return os;
}

problems::Problem load_problem(const Options& opt) {
    if (opt.problem.empty())
        raise(ErrorKind::config,
              "this command needs --problem (or 'problem' in the config)");
    if (opt.problem == "torus") return problems::make_torus_problem(opt.torus_n);
    return problems::make_problem(opt.problem);
}

std::vector<int> chosen_starts(const problems::Problem& p, const Options& opt) {
    if (opt.start < 0) return p.starts;
    if (opt.start >= p.chain.n_states())
        raise(ErrorKind::config,
              "--start " + std::to_string(opt.start) + " is out of range (chain has " +
                  std::to_string(p.chain.n_states()) + " states)");
    return {opt.start};
}

std::int64_t chosen_walkers(const problems::Problem& p, const Options& opt) {
    return opt.walkers > 0 ? opt.walkers : p.default_walkers;
}

int chosen_steps(const problems::Problem& p, const Options& opt) {
    return opt.steps > 0 ? opt.steps : p.default_steps;
}

std::uint64_t run_seed(std::uint64_t seed, int start) {
    return seed + kSeedStride * static_cast<std::uint64_t>(start + 1);
}

void write_manifest(const Options& opt, const std::string& command,
                    const std::vector<std::string>& outputs) {
    json m;
    m["command"] = command;
    m["version"] = kVersion;
    m["seed"] = opt.seed;
    m["options"] = {{"problem", opt.problem},   {"platform", opt.platform},
                    {"walkers", opt.walkers},   {"steps", opt.steps},
                    {"out", opt.out_dir},       {"start", opt.start},
                    {"n", opt.torus_n},         {"realized", opt.realized}};
    if (!opt.config.is_null()) m["config"] = opt.config;
    m["outputs"] = outputs;
    auto os = open_out(fs::path(opt.out_dir) / "manifest.json");
    os << m.dump(2) << '\n';
}

dtmc::SdeCoefficients parse_sde(const json& j) {
    dtmc::SdeCoefficients sde;
    auto constant = [](double v) { return [v](double, double) { return v; }; };
    if (j.contains("drift")) sde.drift = constant(config_number(j, "drift"));
    if (j.contains("variance_rate"))
        sde.variance_rate = constant(config_number(j, "variance_rate"));
    if (j.contains("jump_rate"))
        sde.jump_rate = constant(config_number(j, "jump_rate"));
    if (j.contains("marks")) {
        if (!j.at("marks").is_array())
            raise(ErrorKind::config, "config key 'marks' must be an array");
        for (const auto& m : j.at("marks")) {
            dtmc::Mark mark;
            mark.weight = config_number(m, "weight");
            const double d = config_number(m, "displacement");
            mark.displacement = [d](double, double) { return d; };
            sde.marks.push_back(std::move(mark));
        }
    }
    sde.validate();
    return sde;
}

dtmc::GridSpace parse_grid(const json& j) {
    dtmc::GridSpace grid;
    grid.x0 = config_number(j, "x0");
    grid.dx = config_number(j, "dx");
    grid.n = static_cast<int>(config_number(j, "n"));
    if (j.contains("window")) grid.window = static_cast<int>(config_number(j, "window"));
    grid.validate();
    return grid;
}

dtmc::ConservationPolicy parse_policy(const std::string& name) {
    if (name == "tail_to_edge") return dtmc::ConservationPolicy::kTailToEdge;
    if (name == "normalize") return dtmc::ConservationPolicy::kNormalizeRow;
    if (name == "add_to_self") return dtmc::ConservationPolicy::kAddToSelf;
    raise(ErrorKind::config,
          "unknown conservation policy '" + name +
              "' (expected tail_to_edge, normalize, or add_to_self)");
}

// Shared engine step for simulate/estimate: produce the density for one start,
// and optionally keep the sampled paths (reference engines only).
struct EngineRun {
    DensitySeries density;
    std::optional<dtmc::PathEnsemble> paths;
};

EngineRun run_engine(const problems::Problem& p,
                     const std::optional<walk::CompiledMesh>& mesh,
                     const dtmc::TransitionModel& chain, int start,
                     std::int64_t walkers, int steps, std::uint64_t seed,
                     bool keep_paths) {
    EngineRun out;
    if (mesh) {
        std::vector<std::int64_t> initial(p.chain.n_states(), 0);
        initial[start] = walkers;
        out.density = walk::simulate_density(*mesh, initial, steps, seed);
        return out;
    }
    auto ens = dtmc::sample_paths(chain, start, walkers, steps, seed);
    out.density = dtmc::to_density(ens);
    if (keep_paths) out.paths = std::move(ens);
    return out;
}

int cmd_build(const Options& opt) {
    fs::create_directories(opt.out_dir);
    const fs::path out(opt.out_dir);
    std::vector<std::string> outputs;
    json counts;
    if (!opt.problem.empty()) {
        const auto p = load_problem(opt);
        {
            auto os = open_out(out / "chain.json");
            p.chain.write_json(os);
            outputs.push_back("chain.json");
        }
        counts["states"] = p.chain.n_states();
        if (p.mesh) {
            {
                auto os = open_out(out / "mesh.json");
                p.mesh->write_json(os);
                outputs.push_back("mesh.json");
            }
            {
                auto os = open_out(out / "centroids.csv");
                p.mesh->write_centroid_csv(os);
                outputs.push_back("centroids.csv");
            }
            counts["mesh_elements"] = p.mesh->n_states();
        }
        const Engine engine = parse_engine(opt.platform);
        if (engine != Engine::kReference) {
            const auto mesh = walk::compile_mesh(p.chain, to_platform(engine));
            auto os = open_out(out / "mesh_summary.json");
            mesh.write_summary_json(os);
            outputs.push_back("mesh_summary.json");
            counts["neurons"] = mesh.net.size();
            counts["synapses"] = mesh.net.synapses().size();
        }
    } else if (opt.config.contains("sde") && opt.config.contains("grid")) {
        const auto sde = parse_sde(opt.config.at("sde"));
        const auto grid = parse_grid(opt.config.at("grid"));
        double dt = opt.config.value("dt", 0.0);
        if (dt <= 0.0) {
            dt = dtmc::select_dt(sde, grid);
            std::cout << "selected dt = " << dt << '\n';
        } else {
            const auto check = dtmc::check_dt(sde, grid, dt);
            if (!check.ok && !opt.force) {
                std::ostringstream msg;
                msg << "time step " << dt << " rejected:";
                if (check.worst_multi_jump > 0.05)
                    msg << " multi-jump probability " << check.worst_multi_jump
                        << " exceeds 0.05;";
                if (check.worst_escape > 0.05)
                    msg << " neighbor-window escape mass " << check.worst_escape
                        << " exceeds 0.05;";
                msg << " rerun with --force to accept anyway";
                raise(ErrorKind::constraint, msg.str());
            }
        }
        const auto policy = parse_policy(opt.config.value("policy", "tail_to_edge"));
        const int time_steps = opt.config.value("time_steps", 0);
        const auto chain = dtmc::assemble_chain(sde, grid, dt, policy, time_steps);
        auto os = open_out(out / "chain.json");
        chain.write_json(os);
        outputs.push_back("chain.json");
        counts["states"] = chain.n_states();
        counts["dt"] = dt;
    } else {
        raise(ErrorKind::config,
              "build needs --problem or config blocks 'sde' and 'grid'");
    }
    write_manifest(opt, "build", outputs);
    std::cout << counts.dump(2) << '\n';
    std::cout << "wrote " << outputs.size() << " file(s) to " << opt.out_dir
              << '\n';
    return 0;
}

int cmd_simulate(const Options& opt) {
    const auto p = load_problem(opt);
    const Engine engine = parse_engine(opt.platform);
    fs::create_directories(opt.out_dir);
    const fs::path out(opt.out_dir);
    const auto starts = chosen_starts(p, opt);
    const auto walkers = chosen_walkers(p, opt);
    const int steps = chosen_steps(p, opt);

    std::optional<walk::CompiledMesh> mesh;
    dtmc::TransitionModel chain = p.chain;
    if (opt.realized) {
        if (engine == Engine::kReference)
            raise(ErrorKind::config,
                  "--realized needs --platform LOIHI or TRUENORTH");
        chain = walk::compile_mesh(p.chain, to_platform(engine)).realized_model();
    } else if (engine != Engine::kReference) {
        mesh = walk::compile_mesh(p.chain, to_platform(engine));
    }

    std::vector<std::string> outputs;
    for (int start : starts) {
        const auto run = run_engine(p, mesh, chain, start, walkers, steps,
                                    run_seed(opt.seed, start), false);
        const std::string name = "density_" + std::to_string(start) + ".csv";
        auto os = open_out(out / name);
        run.density.write_csv(os);
        outputs.push_back(name);
        if (!run.density.ticks_per_step.empty()) {
            const std::string tname = "ticks_" + std::to_string(start) + ".csv";
            auto ts = open_out(out / tname);
            ts << "step,ticks\n";
            for (size_t k = 0; k < run.density.ticks_per_step.size(); ++k)
                ts << (k + 1) << ',' << run.density.ticks_per_step[k] << '\n';
            outputs.push_back(tname);
        }
    }
    write_manifest(opt, "simulate", outputs);
    std::cout << "simulated " << starts.size() << " start(s), " << walkers
              << " walkers, " << steps << " steps -> " << opt.out_dir << '\n';
    return 0;
}

int cmd_estimate(const Options& opt) {
    const auto p = load_problem(opt);
    const Engine engine = parse_engine(opt.platform);
    fs::create_directories(opt.out_dir);
    const fs::path out(opt.out_dir);
    const auto starts = chosen_starts(p, opt);
    const auto walkers = chosen_walkers(p, opt);
    const int steps = chosen_steps(p, opt);

    std::optional<walk::CompiledMesh> mesh;
    dtmc::TransitionModel chain = p.chain;
    if (opt.realized) {
        if (engine == Engine::kReference)
            raise(ErrorKind::config,
                  "--realized needs --platform LOIHI or TRUENORTH");
        chain = walk::compile_mesh(p.chain, to_platform(engine)).realized_model();
    } else if (engine != Engine::kReference) {
        mesh = walk::compile_mesh(p.chain, to_platform(engine));
    }

    std::vector<std::string> outputs;
    auto est_csv = open_out(out / "estimates.csv");
    est_csv << "state_id,t,value,stderr\n";
    outputs.push_back("estimates.csv");

    std::optional<std::ofstream> oracle_csv;
    const bool has_oracle =
        static_cast<bool>(p.oracle) &&
        p.estimator == problems::EstimatorKind::kInitialValue;
    if (has_oracle) {
        oracle_csv = open_out(out / "oracle_comparison.csv");
        *oracle_csv << "state_id,t,value,oracle,abs_error,stderr\n";
        outputs.push_back("oracle_comparison.csv");
    }
    double max_abs_error = 0.0;
    double percent_error_sum = 0.0;
    std::int64_t percent_error_n = 0;

    const auto emit = [&](int start, const fk::Estimate& e) {
        est_csv << start << ',' << e.t << ',' << e.value << ',';
        if (e.standard_error) est_csv << *e.standard_error;
        est_csv << '\n';
        if (!has_oracle) return;
        const double truth = p.oracle(e.t, start);
        const double err = std::abs(e.value - truth);
        max_abs_error = std::max(max_abs_error, err);
        if (std::abs(truth) > 1e-12) {
            percent_error_sum += 100.0 * err / std::abs(truth);
            ++percent_error_n;
        }
        *oracle_csv << start << ',' << e.t << ',' << e.value << ',' << truth
                    << ',' << err << ',';
        if (e.standard_error) *oracle_csv << *e.standard_error;
        *oracle_csv << '\n';
    };

    for (int start : starts) {
        const bool keep_paths =
            p.estimator == problems::EstimatorKind::kStopped && !mesh;
        const auto run = run_engine(p, mesh, chain, start, walkers, steps,
                                    run_seed(opt.seed, start), keep_paths);
        if (p.estimator == problems::EstimatorKind::kStopped) {
            if (!chain.absorbing)
                raise(ErrorKind::config,
                      "stopped estimator needs a chain with an absorbing state");
            const auto e =
                run.paths
                    ? fk::estimate_stopped(*run.paths, p.g_fn(), p.f_fn(),
                                           p.speed_scale)
                    : fk::estimate_stopped(run.density, *chain.absorbing,
                                           p.f_fn(), p.speed_scale);
            emit(start, e);
        } else {
            for (int k = 0; k <= steps; ++k)
                emit(start, fk::estimate_from_density(run.density, p.g_fn(),
                                                      p.c_const, k));
        }
    }

    json summary;
    summary["problem"] = p.name;
    summary["walkers"] = walkers;
    summary["steps"] = steps;
    if (has_oracle) {
        summary["max_abs_error"] = max_abs_error;
        summary["mean_percent_error"] =
            percent_error_n > 0 ? percent_error_sum / percent_error_n : 0.0;
    }
    {
        auto os = open_out(out / "estimate_summary.json");
        os << summary.dump(2) << '\n';
        outputs.push_back("estimate_summary.json");
    }
    write_manifest(opt, "estimate", outputs);
    std::cout << summary.dump(2) << '\n';
    return 0;
}

int cmd_compare(const Options& opt) {
    const auto p = load_problem(opt);
    const Engine engine = parse_engine(opt.platform);
    if (engine == Engine::kReference)
        raise(ErrorKind::config, "compare needs --platform LOIHI or TRUENORTH");
    fs::create_directories(opt.out_dir);
    const fs::path out(opt.out_dir);
    const auto walkers = chosen_walkers(p, opt);
    const int steps = chosen_steps(p, opt);
    const int start = opt.start >= 0 ? chosen_starts(p, opt).front()
                                     : p.starts.front();

    const auto mesh = walk::compile_mesh(p.chain, to_platform(engine));
    std::vector<std::int64_t> initial(p.chain.n_states(), 0);
    initial[start] = walkers;
    const auto d_mesh = walk::simulate_density(mesh, initial, steps, opt.seed);
    const auto realized = mesh.realized_model();
    const auto d_ref = dtmc::to_density(dtmc::sample_paths(
        realized, start, walkers, steps, opt.seed + kSeedStride));

    bool conserved = true;
    for (int k = 0; k <= steps && conserved; ++k)
        conserved = d_mesh.total(k) == walkers && d_ref.total(k) == walkers;

    const int interval = std::max(1, steps / 10);
    json checkpoints = json::array();
    double worst_ratio = 0.0;
    std::cout << std::left << std::setw(8) << "step" << std::right
              << std::setw(14) << "max|diff|" << std::setw(16)
              << "max diff/sigma" << '\n';
    for (int k = interval; k <= steps; k += interval) {
        double max_diff = 0.0;
        double max_ratio = 0.0;
        for (int s = 0; s < p.chain.n_states(); ++s) {
            const double n1 = static_cast<double>(d_mesh.counts(k, s));
            const double n2 = static_cast<double>(d_ref.counts(k, s));
            const double diff = std::abs(n1 - n2);
            max_diff = std::max(max_diff, diff);
            if (diff == 0.0) continue;
            const double w = static_cast<double>(walkers);
            const double pooled = (n1 + n2) / (2.0 * w);
            const double sigma =
                std::sqrt(2.0 * w * pooled * (1.0 - pooled));
            max_ratio = std::max(max_ratio, sigma > 0.0
                                                ? diff / sigma
                                                : std::numeric_limits<double>::infinity());
        }
        worst_ratio = std::max(worst_ratio, max_ratio);
        checkpoints.push_back({{"step", k},
                               {"max_abs_diff", max_diff},
                               {"max_sigma_ratio", max_ratio}});
        std::cout << std::left << std::setw(8) << k << std::right
                  << std::setw(14) << max_diff << std::setw(16) << max_ratio
                  << '\n';
    }
    json report;
    report["problem"] = p.name;
    report["platform"] = opt.platform;
    report["walkers"] = walkers;
    report["steps"] = steps;
    report["start"] = start;
    report["walkers_conserved_every_step"] = conserved;
    report["checkpoints"] = checkpoints;
    report["worst_sigma_ratio"] = worst_ratio;
    {
        auto os = open_out(out / "compare.json");
        os << report.dump(2) << '\n';
    }
    write_manifest(opt, "compare", {"compare.json"});
    std::cout << "conservation: " << (conserved ? "exact" : "VIOLATED")
              << ", worst diff/sigma " << worst_ratio << '\n';
    return 0;
}

int cmd_cost(const Options& opt) {
    fs::create_directories(opt.out_dir);
    const fs::path out(opt.out_dir);
    auto vn = cost::default_cpu_platform();
    auto neural = cost::default_neural_platform();
    if (opt.cpu_updates_per_joule > 0.0) {
        vn.joules_per_update = 1.0 / opt.cpu_updates_per_joule;
        vn.updates_per_joule_lo = opt.cpu_updates_per_joule;
        vn.updates_per_joule_hi = opt.cpu_updates_per_joule;
    }
    cost::Workload w;
    if (!opt.problem.empty()) {
        const auto p = load_problem(opt);
        w.walkers = chosen_walkers(p, opt);
        w.steps = chosen_steps(p, opt);
        neural.mesh_states = p.chain.n_states();
    } else {
        w.walkers = opt.walkers > 0 ? opt.walkers : 1000;
        w.steps = opt.steps > 0 ? opt.steps : 100000;
    }
    std::vector<std::int64_t> ticks;
    if (!opt.ticks_file.empty()) {
        std::ifstream ts(opt.ticks_file);
        if (!ts)
            raise(ErrorKind::config, "cannot open ticks file " + opt.ticks_file);
        std::string line;
        while (std::getline(ts, line)) {
            if (line.empty()) continue;
            const auto comma = line.find(',');
            if (comma == std::string::npos) continue;
            const std::string tail = line.substr(comma + 1);
            char* end = nullptr;
            const long long v = std::strtoll(tail.c_str(), &end, 10);
            if (end == tail.c_str()) continue; // header or junk line
            ticks.push_back(v);
        }
        if (ticks.empty())
            raise(ErrorKind::config,
                  "ticks file " + opt.ticks_file + " holds no step rows");
    }

    const auto report = cost::compare_platforms(vn, neural, w);
    report.write_table(std::cout);

    json extra;
    if (!ticks.empty()) {
        const auto par = cost::effective_parallelism(w.walkers, ticks);
        const size_t quarter = std::max<size_t>(1, par.size() / 4);
        double head = 0.0, tail_avg = 0.0;
        for (size_t i = 0; i < quarter; ++i) head += par[i];
        for (size_t i = par.size() - quarter; i < par.size(); ++i)
            tail_avg += par[i];
        head /= static_cast<double>(quarter);
        tail_avg /= static_cast<double>(quarter);
        extra["effective_parallelism"] = {{"steps", par.size()},
                                          {"first_quarter_mean", head},
                                          {"final_quarter_mean", tail_avg}};
        std::cout << "effective parallelism (walkers/tick): first-quarter mean "
                  << head << ", final-quarter mean " << tail_avg << '\n';
    }
    {
        auto os = open_out(out / "cost_report.json");
        std::ostringstream buf;
        report.write_json(buf);
        json j = json::parse(buf.str());
        if (!extra.is_null()) j["measured"] = extra;
        os << j.dump(2) << '\n';
    }
    write_manifest(opt, "cost", {"cost_report.json"});
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete-walk compiler and simulator for spiking meshes"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--config", opt.config_path, "JSON config file (flags win)");
    app.add_option("--out", opt.out_dir, "output directory")
        ->capture_default_str();
    app.add_option("--seed", opt.seed, "random seed")->capture_default_str();
    app.add_option("--platform", opt.platform,
                   "execution engine: REFERENCE, LOIHI, or TRUENORTH")
        ->capture_default_str();
    app.add_option("--walkers", opt.walkers, "walkers per start (0 = default)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--steps", opt.steps, "walk steps (0 = default)")
        ->check(CLI::NonNegativeNumber);
    app.add_flag("--force", opt.force, "accept a rejected time step");
    app.add_flag("--realized", opt.realized,
                 "sample the quantized chain the compiled circuit realizes");
    app.add_option("--problem", opt.problem,
                   "bundled problem: boltzmann, fluence, sphere, barbell, torus");
    app.add_option("--n", opt.torus_n, "torus grid size")->capture_default_str();
    app.add_option("--start", opt.start, "single start state (-1 = all)");
    app.add_option("--cpu-updates-per-joule", opt.cpu_updates_per_joule,
                   "override the CPU efficiency point estimate");
    app.add_option("--ticks-file", opt.ticks_file,
                   "per-step tick counts from a mesh run (cost command)");

    auto* build = app.add_subcommand("build", "compile a chain (and mesh) to disk");
    auto* simulate = app.add_subcommand("simulate", "run walker ensembles");
    auto* estimate = app.add_subcommand("estimate", "evaluate Feynman-Kac estimates");
    auto* compare = app.add_subcommand(
        "compare", "mesh vs reference sampler on the same realized chain");
    auto* cost = app.add_subcommand("cost", "analytic platform cost comparison");
    for (auto* sub : {build, simulate, estimate, compare, cost})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
        merge_config(app, opt);
        if (build->parsed()) return cmd_build(opt);
        if (simulate->parsed()) return cmd_simulate(opt);
        if (estimate->parsed()) return cmd_estimate(opt);
        if (compare->parsed()) return cmd_compare(opt);
        if (cost->parsed()) return cmd_cost(opt);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const spikewalk::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.kind()) {
            case ErrorKind::config: return 2;
            case ErrorKind::constraint: return 3;
            case ErrorKind::capacity: return 4;
            default: return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
