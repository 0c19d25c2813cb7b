// ghartree: batch CLI for the generalized Hartree laboratory.
//
// Subcommands: params, groundstate, thresholds, classify, evolve, sweep.
// Config is key=value (file via --config, overrides as positional arguments);
// outputs land in --out and embed the config hash, so identical configs give
// byte-identical files at a fixed thread count.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "ghartree/criteria.hpp"
#include "ghartree/evolve.hpp"
#include "ghartree/groundstate.hpp"
#include "ghartree/io.hpp"
#include "../src/runconfig.hpp"

using nlohmann::json;
using namespace ghartree;

namespace {

struct CliState {
    std::string config_path;
    std::string out_dir = ".";
    std::string resume_path;
    int threads = 1;
    long seed = 0; // placeholder: runs are deterministic
    std::vector<std::string> overrides;
};

RunConfig load_config(const CliState& state) {
    std::vector<std::string> entries;
    if (!state.config_path.empty()) {
        const auto file_entries = read_config_file(state.config_path);
        entries.insert(entries.end(), file_entries.begin(), file_entries.end());
    }
    entries.insert(entries.end(), state.overrides.begin(), state.overrides.end());
    RunConfig cfg = parse_config(entries);
    cfg.params.validate();
    return cfg;
}

std::string config_hash(const RunConfig& cfg) {
    return hash_hex(fnv1a64(cfg.canonical_text()));
}

std::filesystem::path out_path(const CliState& state, const std::string& name) {
    std::filesystem::create_directories(state.out_dir);
    return std::filesystem::path(state.out_dir) / name;
}

void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot write " + path.string());
    os << j.dump(2) << "\n";
}

json params_json(const EquationParams& params) {
    const CriticalityReport crit = classify(params);
    const AdmissiblePair pair = canonical_pair(params);
    return json{{"N", params.dimension},
                {"p", params.power},
                {"b", params.potential_exponent},
                {"s_c", crit.s_c},
                {"class", to_string(crit.cls)},
                {"k", crit.k},
                {"alpha", crit.alpha},
                {"lwp_regularity_ok", crit.lwp_regularity_ok},
                {"a1_exponent_ok", crit.a1_exponent_ok},
                {"canonical_pair",
                 {{"q", pair.q}, {"r", pair.r}, {"q_dual", pair.q_dual}, {"r_dual", pair.r_dual}}}};
}

GroundStateQuantities quantities_of(const GroundStateResult& res) {
    return make_ground_quantities(res.mass, res.grad_sq, res.z, res.params.power);
}

// Ground state for normalizations: fresh Petviashvili run, or a profile
// reloaded from --resume with its diagnostics recomputed on its own grid.
GroundStateQuantities ground_quantities(const CliState& state, const RunConfig& cfg) {
    if (!state.resume_path.empty()) {
        const ComplexField q = read_checkpoint(state.resume_path);
        auto kernel = std::make_shared<const RieszKernel>(q.grid, cfg.params.potential_exponent,
                                                          cfg.rule);
        const ObservableEngine engine(cfg.params, kernel);
        return make_ground_quantities(engine.mass(q), engine.grad_norm_sq(q),
                                      engine.z_functional(q), cfg.params.power);
    }
    const GroundStateResult res = petviashvili_solve(
        cfg.params,
        std::make_shared<const RieszKernel>(Grid(cfg.params.dimension, cfg.grid_n, cfg.grid_L),
                                            cfg.params.potential_exponent, cfg.rule),
        cfg.petviashvili);
    return quantities_of(res);
}

json threshold_table(const RunConfig& cfg, const CliState& state) {
    const CriticalityReport crit = classify(cfg.params);
    json table;
    table["negative_energy"] = threshold_solve(ThresholdKind::NegativeEnergy, cfg.params);
    if (crit.s_c > 0.0)
        table["criterion_blowup"] = threshold_solve(ThresholdKind::CriterionBlowup, cfg.params);
    if (crit.cls == Criticality::Intercritical) {
        const GroundStateQuantities q = ground_quantities(state, cfg);
        table["me_lower"] = threshold_solve(ThresholdKind::MeLower, cfg.params, q);
        table["me_upper"] = threshold_solve(ThresholdKind::MeUpper, cfg.params, q);
        table["gradient"] = threshold_solve(ThresholdKind::Gradient, cfg.params, q);
        table["ground_state_mass"] = q.mass;
    } else if (crit.cls == Criticality::EnergyCritical) {
        table["energy_lower"] = threshold_solve(ThresholdKind::EnergyCriticalLower, cfg.params);
        table["energy_upper"] = threshold_solve(ThresholdKind::EnergyCriticalUpper, cfg.params);
        table["gradient"] = threshold_solve(ThresholdKind::Gradient, cfg.params);
    }
    return table;
}

json classification_json(const ClassificationReport& rep) {
    return json{{"me", rep.me},
                {"g", rep.g},
                {"verdict", to_string(rep.verdict)},
                {"clauses", rep.clauses},
                {"omega", rep.omega},
                {"k", rep.k},
                {"x0", rep.x0},
                {"f_value", rep.f_value},
                {"criterion_holds", rep.criterion_holds}};
}

int run_params(const CliState& state) {
    const RunConfig cfg = load_config(state);
    json out = params_json(cfg.params);
    out["version"] = kArtifactVersion;
    out["config"] = config_hash(cfg);
    write_json(out_path(state, "params.json"), out);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_groundstate(const CliState& state) {
    const RunConfig cfg = load_config(state);
    const Grid grid(cfg.params.dimension, cfg.grid_n, cfg.grid_L);
    const GroundStateResult res = petviashvili_solve(
        cfg.params,
        std::make_shared<const RieszKernel>(grid, cfg.params.potential_exponent, cfg.rule),
        cfg.petviashvili);
    write_checkpoint(out_path(state, "groundstate.ghfd").string(), res.profile);
    json out{{"version", kArtifactVersion},
             {"config", config_hash(cfg)},
             {"mass", res.mass},
             {"grad_sq", res.grad_sq},
             {"z", res.z},
             {"energy", res.energy()},
             {"residual", res.residual},
             {"iterations", res.iterations},
             {"c_gn", res.c_gn},
             {"gn_quotient", gn_quotient(res)},
             {"pohozhaev",
              {{"grad_over_mass", res.grad_sq / res.mass}, {"z_over_mass", res.z / res.mass}}}};
    write_json(out_path(state, "groundstate.json"), out);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_thresholds(const CliState& state) {
    const RunConfig cfg = load_config(state);
    const json table = threshold_table(cfg, state);
    json out{{"version", kArtifactVersion},
             {"config", config_hash(cfg)},
             {"params", params_json(cfg.params)},
             {"thresholds", table}};
    write_json(out_path(state, "thresholds.json"), out);

    std::ofstream csv(out_path(state, "thresholds.csv"));
    csv << "# ghartree " << kArtifactVersion << " config " << config_hash(cfg) << "\n";
    csv << "kind,beta\n";
    std::cout << "thresholds for " << cfg.params.describe()
              << " (scale-invariant beta at gamma=1)\n";
    for (const auto& [key, value] : table.items()) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", value.get<double>());
        csv << key << ',' << buf << "\n";
        std::printf("  %-18s %.6f\n", key.c_str(), value.get<double>());
    }
    return 0;
}

int run_classify(const CliState& state) {
    const RunConfig cfg = load_config(state);
    const CriticalityReport crit = classify(cfg.params);
    const GaussianObservables g = gaussian_observables(cfg.beta, cfg.gamma, cfg.params);
    DichotomyInput input;
    input.base = g.criterion_input(cfg.params);
    input.grad_sq = g.grad_sq;
    input.finite_variance = cfg.finite_variance;
    input.radial = cfg.radial;
    std::optional<GroundStateQuantities> ground;
    if (crit.cls == Criticality::Intercritical)
        ground = ground_quantities(state, cfg);
    const ClassificationReport rep = dichotomy_classify(input, ground);

    json out{{"version", kArtifactVersion},
             {"config", config_hash(cfg)},
             {"params", params_json(cfg.params)},
             {"inputs",
              {{"beta", cfg.beta},
               {"gamma", cfg.gamma},
               {"mass", g.mass},
               {"energy", g.energy},
               {"grad_sq", g.grad_sq},
               {"variance0", g.variance0},
               {"variance_rate0", g.variance_rate0}}},
             {"report", classification_json(rep)}};
    if (ground.has_value())
        out["ground_state_mass"] = ground->mass;
    write_json(out_path(state, "classify.json"), out);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_evolve(const CliState& state) {
    const RunConfig cfg = load_config(state);
    const Grid grid(cfg.params.dimension, cfg.grid_n, cfg.grid_L);
    const Evolver evolver(cfg.params, grid, cfg.rule);
    ComplexField u0 = state.resume_path.empty()
                          ? ComplexField::gaussian(grid, cfg.beta, cfg.gamma)
                          : read_checkpoint(state.resume_path);
    if (!(u0.grid == grid))
        throw ConfigError("resume checkpoint grid does not match the configured grid");
    const TrajectoryRecord rec = evolver.evolve(u0, cfg.evolve);
    write_trajectory_csv(out_path(state, "trajectory.csv").string(), rec, config_hash(cfg));
    write_checkpoint(out_path(state, "final.ghfd").string(), rec.final_state);
    json out{{"version", kArtifactVersion},
             {"config", config_hash(cfg)},
             {"status", to_string(rec.status)},
             {"final_time", rec.final_time},
             {"steps", rec.steps},
             {"initial_grad_norm", rec.initial_grad_norm},
             {"final_grad_norm", rec.final_grad_norm},
             {"max_mass_drift", rec.max_mass_drift},
             {"samples", rec.samples.size()}};
    write_json(out_path(state, "evolve.json"), out);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_sweep(const CliState& state) {
    const RunConfig cfg = load_config(state);
    if (cfg.sweep_steps < 2 || !(cfg.sweep_beta_max > cfg.sweep_beta_min))
        throw ConfigError("sweep needs beta_min < beta_max and beta_steps >= 2");
    const CriticalityReport crit = classify(cfg.params);
    std::optional<GroundStateQuantities> ground;
    if (crit.cls == Criticality::Intercritical)
        ground = ground_quantities(state, cfg);

    const int steps = cfg.sweep_steps;
    std::vector<ClassificationReport> reports(static_cast<std::size_t>(steps));
    std::vector<double> betas(static_cast<std::size_t>(steps));
    const auto worker = [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            const double beta = cfg.sweep_beta_min +
                                (cfg.sweep_beta_max - cfg.sweep_beta_min) * i / (steps - 1);
            betas[static_cast<std::size_t>(i)] = beta;
            const GaussianObservables g = gaussian_observables(beta, cfg.gamma, cfg.params);
            DichotomyInput input;
            input.base = g.criterion_input(cfg.params);
            input.grad_sq = g.grad_sq;
            input.finite_variance = cfg.finite_variance;
            input.radial = cfg.radial;
            reports[static_cast<std::size_t>(i)] = dichotomy_classify(input, ground);
        }
    };
    const int pool = std::max(1, state.threads);
    std::vector<std::thread> threads;
    const int chunk = (steps + pool - 1) / pool;
    for (int t = 0; t < pool; ++t) {
        const int begin = t * chunk;
        const int end = std::min(steps, begin + chunk);
        if (begin < end)
            threads.emplace_back(worker, begin, end);
    }
    for (std::thread& t : threads)
        t.join();

    std::ofstream csv(out_path(state, "sweep.csv"));
    csv << "# ghartree " << kArtifactVersion << " config " << config_hash(cfg) << "\n";
    csv << "beta,me,g,verdict\n";
    for (int i = 0; i < steps; ++i) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%s",
                      betas[static_cast<std::size_t>(i)],
                      reports[static_cast<std::size_t>(i)].me,
                      reports[static_cast<std::size_t>(i)].g,
                      to_string(reports[static_cast<std::size_t>(i)].verdict));
        csv << buf << "\n";
    }
    std::cout << "sweep: " << steps << " points -> " << out_path(state, "sweep.csv").string()
              << "\n";
    return 0;
}

void emit_error(const char* type, const std::string& message) {
    const json err{{"error", {{"type", type}, {"message", message}}}};
    std::cerr << err.dump() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized Hartree equation laboratory"};
    app.set_version_flag("--version", std::string("ghartree ") + kArtifactVersion);
    app.fallthrough(); // global flags remain valid after the subcommand name
    CliState state;
    app.add_option("--config", state.config_path, "key=value config file");
    app.add_option("--out", state.out_dir, "output directory");
    app.add_option("--threads", state.threads, "transform/worker thread count");
    app.add_option("--seed", state.seed, "placeholder; runs are deterministic");
    app.add_option("--resume", state.resume_path, "GHFD checkpoint to start from");
    app.require_subcommand(1);

    int (*handler)(const CliState&) = nullptr;
    using Entry = std::tuple<const char*, const char*, int (*)(const CliState&)>;
    for (const auto& [name, desc, fn] :
         {Entry{"params", "criticality report for (N, p, b)", &run_params},
          Entry{"groundstate", "Petviashvili ground-state solve", &run_groundstate},
          Entry{"thresholds", "Gaussian-data threshold table", &run_thresholds},
          Entry{"classify", "dichotomy verdict for Gaussian data", &run_classify},
          Entry{"evolve", "split-step time evolution", &run_evolve},
          Entry{"sweep", "beta sweep of analytic classifications", &run_sweep}}) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("overrides", state.overrides, "key=value overrides");
        const auto handler_fn = fn;
        sub->callback([&handler, handler_fn] { handler = handler_fn; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        set_fft_threads(state.threads);
        return handler(state);
    } catch (const ConfigError& e) {
        emit_error("invalid-config", e.what());
        return 2;
    } catch (const InvalidParams& e) {
        emit_error("invalid-config", e.what());
        return 2;
    } catch (const WrongRegime& e) {
        emit_error("invalid-config", e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error("numerical-failure", e.what());
        return 3;
    }
}
