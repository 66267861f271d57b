#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "acstune/acs.hpp"
#include "acstune/bench.hpp"
#include "acstune/parallel.hpp"
#include "acstune/pso.hpp"
#include "acstune/rng.hpp"
#include "acstune/tsplib.hpp"

namespace fs = std::filesystem;
using namespace acstune;

namespace {

constexpr std::uint64_t kDefaultSeed = 42;

struct MissingFile : std::runtime_error {
    using std::runtime_error::runtime_error;
};

TspInstance load_or_fail(const std::string& path) {
    if (!fs::exists(path)) {
        throw MissingFile("cannot open instance file: " + path);
    }
    return load_instance(path);
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << contents;
}

// accepts a built-in preset name or a preset file path (first block wins)
ParamPreset resolve_preset(const std::string& name_or_path) {
    if (const ParamPreset* builtin = find_preset(name_or_path)) return *builtin;
    if (fs::exists(name_or_path)) {
        std::ifstream in(name_or_path);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        return parse_presets(text).front();
    }
    std::string msg = "unknown preset '" + name_or_path + "'; available presets:";
    for (const ParamPreset& p : builtin_presets()) msg += " " + p.name;
    throw std::runtime_error(msg);
}

std::string format_tour(std::span<const int> tour) {
    std::string out;
    for (std::size_t i = 0; i < tour.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(tour[i] + 1);  // 1-based TSPLIB labels
    }
    return out;
}

int cmd_tune(const std::string& instance_path, PsoConfig cfg, bool quick, std::uint64_t seed,
             const std::string& preset_out, const std::string& trace_out, std::string name) {
    if (quick) {
        cfg.pso_iterations = 50;
        cfg.swarm_size = 10;
        cfg.trials_per_eval = 3;
        cfg.acs_iterations_per_trial = 200;
    }
    const TspInstance inst = load_or_fail(instance_path);
    if (name.empty()) name = "tuned_" + inst.name();

    const OptimizeResult result = optimize(inst, cfg, Rng(seed));

    write_file(preset_out, format_preset({name, result.best_params}));
    write_file(trace_out, trace_to_csv(result.trace));

    std::cout << "instance: " << inst.name() << "\n";
    std::cout << "best length: " << result.best_length << "\n";
    std::cout << "preset written to: " << preset_out << "\n";
    std::cout << "trace written to: " << trace_out << "\n";
    return 0;
}

int cmd_solve(const std::string& instance_path, const std::string& preset_name, int trials,
              int iterations, std::uint64_t seed, int threads, const std::string& raw_out) {
    const TspInstance inst = load_or_fail(instance_path);
    const ParamPreset preset = resolve_preset(preset_name);

    std::vector<TrialRecord> raw;
    const Rng rng = Rng(seed).derive(rng_role::bench_cell, 0, 0);
    const EvalRecord record =
        evaluate_preset(inst, preset, trials, iterations, rng, {.threads = threads}, &raw);

    // re-run the winning trial to recover its tour (aggregation keeps lengths only)
    int best_trial = 0;
    for (int t = 0; t < trials; ++t) {
        if (raw[t].length == record.min_length) {
            best_trial = t;
            break;
        }
    }
    Rng replay = rng.derive(rng_role::trial, static_cast<std::uint64_t>(best_trial));
    const TrialResult best = run_trial(inst, preset.params, iterations, replay);

    if (!raw_out.empty()) write_file(raw_out, emit_raw_csv(raw));

    std::cout << "instance: " << inst.name() << " (" << inst.dimension() << " vertices)\n";
    std::cout << "preset: " << preset.name << "\n";
    std::cout << "trials: " << trials << " x " << iterations << " iterations\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", record.avg_length);
    std::cout << "min length: " << record.min_length << "\n";
    std::cout << "avg length: " << buf << "\n";
    std::cout << "best tour: " << format_tour(best.best_tour) << "\n";
    if (!raw_out.empty()) std::cout << "raw trials written to: " << raw_out << "\n";
    return 0;
}

int cmd_bench(const std::string& instance_dir, const std::string& preset_selection, int trials,
              int iterations, std::uint64_t seed, int threads, const std::string& out_dir) {
    std::vector<fs::path> files;
    if (!fs::is_directory(instance_dir)) {
        throw MissingFile("instance directory not found: " + instance_dir);
    }
    for (const auto& entry : fs::directory_iterator(instance_dir)) {
        if (entry.path().extension() == ".tsp") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        throw std::runtime_error("no .tsp instances in directory: " + instance_dir);
    }

    std::vector<TspInstance> instances;
    instances.reserve(files.size());
    for (const fs::path& f : files) instances.push_back(load_instance(f));

    std::vector<ParamPreset> presets;
    if (preset_selection == "all") {
        presets = builtin_presets();
    } else {
        std::string rest = preset_selection;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            presets.push_back(resolve_preset(rest.substr(0, comma)));
            rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
        }
    }

    std::vector<TrialRecord> raw;
    const std::vector<EvalRecord> records =
        cross_matrix(instances, presets, trials, iterations, Rng(seed), {.threads = threads},
                     &raw);

    const fs::path dir(out_dir);
    fs::create_directories(dir);
    const std::string agg_path = (dir / "bench_aggregate.csv").string();
    const std::string raw_path = (dir / "bench_raw.csv").string();
    write_file(agg_path, emit_csv(records));
    write_file(raw_path, emit_raw_csv(raw));

    std::cout << records.size() << " (preset, instance) records over " << instances.size()
              << " instances\n";
    std::cout << "aggregate written to: " << agg_path << "\n";
    std::cout << "raw trials written to: " << raw_path << "\n";
    return 0;
}

int cmd_presets() {
    const auto& presets = builtin_presets();
    for (std::size_t i = 0; i < presets.size(); ++i) {
        if (i) std::cout << "\n";
        std::cout << format_preset(presets[i]);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ACS solver for symmetric TSPLIB instances with per-instance PSO parameter "
                 "tuning and a cross-evaluation benchmark harness"};
    app.require_subcommand(1);

    std::uint64_t seed = kDefaultSeed;
    int threads = 0;
    app.add_option("--seed", seed, "master seed for all random streams")->capture_default_str();
    app.add_option("--threads", threads,
                   "parallelism degree (0 = ACSTUNE_THREADS env or hardware)")
        ->capture_default_str();

    auto* tune = app.add_subcommand("tune", "tune ACS parameters for one instance with PSO");
    std::string tune_instance, tune_preset_out = "tuned_params.txt",
                tune_trace_out = "tune_trace.csv", tune_name;
    PsoConfig cfg;
    bool quick = false;
    tune->add_option("--instance", tune_instance, "TSPLIB instance file")->required();
    tune->add_option("--pso-iters", cfg.pso_iterations, "PSO iterations")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    tune->add_option("--swarm", cfg.swarm_size, "swarm size (even)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    tune->add_option("--trials-per-eval", cfg.trials_per_eval, "ACS trials per evaluation")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    tune->add_option("--acs-iters", cfg.acs_iterations_per_trial, "ACS iterations per trial")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    tune->add_flag("--quick", quick, "CI profile: 50 PSO iterations, swarm 10, 3x200 trials");
    tune->add_option("--preset-out", tune_preset_out, "output preset file")
        ->capture_default_str();
    tune->add_option("--trace-out", tune_trace_out, "output iteration trace CSV")
        ->capture_default_str();
    tune->add_option("--name", tune_name, "name for the tuned preset");

    auto* solve = app.add_subcommand("solve", "run ACS trials with a fixed parameter set");
    std::string solve_instance, solve_preset, solve_raw_out = "solve_trials.csv";
    int solve_trials = 25, solve_iters = 2500;
    solve->add_option("--instance", solve_instance, "TSPLIB instance file")->required();
    solve->add_option("--preset", solve_preset, "built-in preset name or preset file")
        ->required();
    solve->add_option("--trials", solve_trials, "number of independent trials")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    solve->add_option("--iters", solve_iters, "iterations per trial")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    solve->add_option("--raw-csv", solve_raw_out, "per-trial CSV output path (empty to skip)")
        ->capture_default_str();

    auto* bench = app.add_subcommand("bench", "cross-evaluate presets over an instance directory");
    std::string bench_dir, bench_presets = "all", bench_out = ".";
    int bench_trials = 25, bench_iters = 2500;
    bench->add_option("--instances", bench_dir, "directory of .tsp files")->required();
    bench->add_option("--presets", bench_presets, "'all' or comma-separated preset names")
        ->capture_default_str();
    bench->add_option("--trials", bench_trials, "trials per (preset, instance)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    bench->add_option("--iters", bench_iters, "iterations per trial")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    bench->add_option("--out-dir", bench_out, "output directory for CSVs")
        ->capture_default_str();

    auto* presets_cmd = app.add_subcommand("presets", "list built-in parameter sets");

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.threads = threads;
        if (tune->parsed()) {
            return cmd_tune(tune_instance, cfg, quick, seed, tune_preset_out, tune_trace_out,
                            tune_name);
        }
        if (solve->parsed()) {
            return cmd_solve(solve_instance, solve_preset, solve_trials, solve_iters, seed,
                             threads, solve_raw_out);
        }
        if (bench->parsed()) {
            return cmd_bench(bench_dir, bench_presets, bench_trials, bench_iters, seed, threads,
                             bench_out);
        }
        if (presets_cmd->parsed()) return cmd_presets();
    } catch (const MissingFile& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
