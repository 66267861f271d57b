// Acceptance suite: runs the eight release criteria end to end and prints
// one [PASS]/[FAIL] line each. Exits nonzero when any criterion fails.
// Usage: acceptance_tests [criterion-number ...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "acstune/acs.hpp"
#include "acstune/bench.hpp"
#include "acstune/pso.hpp"
#include "acstune/rng.hpp"
#include "acstune/tsplib.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace acstune;

namespace {

constexpr std::uint64_t kMasterSeed = 42;

struct CliResult {
    int exit_code;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(ACSTUNE_BIN_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, "popen failed"};
    std::string output;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) output.append(buf, got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

// first number after `label` in the CLI output; nan when absent
double parse_metric(const std::string& output, const std::string& label) {
    const auto pos = output.find(label);
    if (pos == std::string::npos) return std::nan("");
    return std::atof(output.c_str() + pos + label.size());
}

std::string data_file(const std::string& name) {
    return std::string(ACSTUNE_DATA_DIR) + "/" + name;
}

// lines of a CSV with the wall-clock columns blanked (times are exempt from
// the determinism criteria)
std::string csv_length_columns(const std::string& csv, const std::set<int>& time_columns) {
    std::string out;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string field;
        int idx = 0;
        while (std::getline(fields, field, ',')) {
            if (!time_columns.contains(idx)) out += field;
            out += ';';
            ++idx;
        }
        out += '\n';
    }
    return out;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("acstune_acceptance_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

bool g_all_passed = true;

void report(int criterion, bool passed, const std::string& description,
            const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", passed ? "PASS" : "FAIL", criterion,
                description.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!passed) g_all_passed = false;
}

// --- criterion 1: oracle equivalence on random 8-vertex instances ----------

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    const ParamPreset preset = *find_preset("PACS-2");
    const Rng master(kMasterSeed);
    int hits = 0;
    for (int i = 0; i < 30; ++i) {
        Rng gen = master.derive(900, static_cast<std::uint64_t>(i));
        const TspInstance inst = testsupport::make_random_instance(8, gen);
        const std::int64_t optimum = testsupport::brute_force_optimum(inst);
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        for (int t = 0; t < 5; ++t) {
            Rng trial_rng = master.derive(901, static_cast<std::uint64_t>(i),
                                          static_cast<std::uint64_t>(t));
            best = std::min(best,
                            run_trial(inst, preset.params, 2500, trial_rng).best_length);
        }
        if (best == optimum) ++hits;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char detail[128];
    std::snprintf(detail, sizeof detail, "%d/30 optimal, need >= 28; %.1fs, limit 60s", hits,
                  secs);
    report(1, hits >= 28 && secs < 60.0, "small-instance optimality vs brute force", detail);
}

// --- criteria 2-4: reference instance reproduction via the CLI -------------

void reproduction_criterion(int number, const std::string& instance, const std::string& preset,
                            std::int64_t min_bound, double avg_bound) {
    const std::string file = data_file(instance + ".tsp");
    if (!fs::exists(file)) {
        report(number, false, instance + " reproduction", "missing data file " + file);
        return;
    }
    TempDir tmp;
    const CliResult r = run_cli("--seed 42 solve --instance " + file + " --preset " + preset +
                                " --trials 25 --iters 2500 --raw-csv " +
                                (tmp.path / "raw.csv").string());
    if (r.exit_code != 0) {
        report(number, false, instance + " reproduction", "solve exited " +
                                                              std::to_string(r.exit_code));
        return;
    }
    const double min_len = parse_metric(r.output, "min length: ");
    const double avg_len = parse_metric(r.output, "avg length: ");
    bool ok = min_len <= static_cast<double>(min_bound);
    char detail[160];
    if (avg_bound > 0) {
        ok = ok && avg_len <= avg_bound;
        std::snprintf(detail, sizeof detail, "min %.0f (need <= %lld), avg %.2f (need <= %.0f)",
                      min_len, static_cast<long long>(min_bound), avg_len, avg_bound);
    } else {
        std::snprintf(detail, sizeof detail, "min %.0f (need <= %lld), avg %.2f", min_len,
                      static_cast<long long>(min_bound), avg_len);
    }
    report(number, ok, instance + " reproduction (" + preset + ", 25x2500)", detail);
}

// --- criterion 5: quick tuning profile --------------------------------------

void criterion_5() {
    const auto t0 = std::chrono::steady_clock::now();
    TempDir tmp;

    // part 1: tune --quick recovers the optimum of an 8-vertex instance
    Rng gen = Rng(kMasterSeed).derive(905);
    const TspInstance inst = testsupport::make_random_instance(8, gen, 1000.0, "quick8");
    const std::int64_t optimum = testsupport::brute_force_optimum(inst);
    const fs::path inst_file = tmp.path / "quick8.tsp";
    {
        std::ofstream out(inst_file);
        out << to_tsplib(inst);
    }
    int hits = 0;
    for (int seed = 1; seed <= 20; ++seed) {
        const fs::path preset_out = tmp.path / ("p" + std::to_string(seed) + ".txt");
        const fs::path trace_out = tmp.path / ("t" + std::to_string(seed) + ".csv");
        const CliResult r = run_cli("--seed " + std::to_string(seed) + " tune --quick --instance " +
                                    inst_file.string() + " --preset-out " + preset_out.string() +
                                    " --trace-out " + trace_out.string());
        if (r.exit_code != 0) continue;
        if (static_cast<std::int64_t>(parse_metric(r.output, "best length: ")) == optimum) {
            ++hits;
        }
    }

    // part 2: quick-tuned eil51 parameters hold up under a 5x1000 evaluation
    const fs::path eil_preset = tmp.path / "eil51_tuned.txt";
    const CliResult tune = run_cli("--seed 42 tune --quick --instance " + data_file("eil51.tsp") +
                                   " --preset-out " + eil_preset.string() + " --trace-out " +
                                   (tmp.path / "eil51_trace.csv").string());
    std::int64_t eval_len = std::numeric_limits<std::int64_t>::max();
    if (tune.exit_code == 0) {
        const TspInstance eil51 = load_instance(data_file("eil51.tsp"));
        const ParamPreset tuned =
            parse_presets(testsupport::read_file(eil_preset.string())).front();
        PsoConfig cfg;
        cfg.trials_per_eval = 5;
        cfg.acs_iterations_per_trial = 1000;
        eval_len = evaluate(to_position(tuned.params), eil51, cfg,
                            Rng(kMasterSeed).derive(906))
                       .length;
    }

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = hits >= 18 && eval_len <= 450 && secs < 900.0;
    char detail[192];
    std::snprintf(detail, sizeof detail,
                  "8-vertex optimum in %d/20 seeds (need >= 18); eil51 re-evaluation %lld "
                  "(need <= 450); %.0fs, limit 900s",
                  hits, static_cast<long long>(eval_len), secs);
    report(5, ok, "quick tuning profile", detail);
}

// --- criterion 6: invariant suites, >= 1000 randomized cases each ----------

void criterion_6() {
    std::string failures;

    // round_position: Fig. 1's worked example, exactly
    {
        const AcsParams p = round_position({0.1, 2.3, 8.0, 0.5, 0.88, 0.34, 32.4});
        if (!(p.q0 == 0.1 && p.phi_exp == 3 && p.beta == 8 && p.rho == 0.5 && p.alpha == 0.88 &&
              p.neighbor_frac == 0.34 && p.num_ants == 33)) {
            failures += " round_position-example";
        }
    }

    Rng meta(20240717);

    // tour validity + pheromone convex bounds + ACS global-best monotonicity
    {
        int tours_checked = 0, bound_scans = 0, monotone_checks = 0;
        bool tours_ok = true, bounds_ok = true, monotone_ok = true;
        for (int round = 0; round < 180; ++round) {
            const int n = 5 + static_cast<int>(meta.uniform_int(7));
            const TspInstance inst = testsupport::make_random_instance(n, meta);
            AcsParams params;
            params.q0 = meta.uniform();
            params.phi_exp = static_cast<int>(meta.uniform_int(9));
            params.beta = static_cast<int>(meta.uniform_int(9));
            params.rho = meta.uniform();
            params.alpha = meta.uniform();
            params.neighbor_frac = meta.uniform();
            params.num_ants = 1 + static_cast<int>(meta.uniform_int(8));

            const double tau0 = init_pheromone(inst).tau0();
            double lo = tau0, hi = tau0;
            std::int64_t last_best = std::numeric_limits<std::int64_t>::max();
            const TrialObserver observer = [&](const IterationView& view) {
                for (const auto& tour : view.tours) {
                    ++tours_checked;
                    if (!testsupport::is_permutation_of_all(tour, n)) tours_ok = false;
                }
                ++monotone_checks;
                if (view.best_length > last_best) monotone_ok = false;
                last_best = view.best_length;
                const double deposit = 1.0 / static_cast<double>(view.best_length);
                lo = std::min(lo, deposit);
                hi = std::max(hi, deposit);
                ++bound_scans;
                for (int i = 0; i < n && bounds_ok; ++i) {
                    for (int j = 0; j < n; ++j) {
                        if (i == j) continue;
                        const double tau = view.pheromone.get(i, j);
                        if (tau < lo * (1.0 - 1e-12) || tau > hi * (1.0 + 1e-12)) {
                            bounds_ok = false;
                            break;
                        }
                    }
                }
            };
            Rng rng = meta.derive(960, static_cast<std::uint64_t>(round));
            run_trial(inst, params, 7, rng, {.observer = &observer});
        }
        if (!(tours_ok && tours_checked >= 1000)) failures += " tour-validity";
        if (!(bounds_ok && bound_scans >= 1000)) failures += " pheromone-bounds";
        if (!(monotone_ok && monotone_checks >= 1000)) failures += " acs-monotonicity";
    }

    // Eq. 1 normalization within 1e-9
    {
        bool ok = true;
        for (int round = 0; round < 1000; ++round) {
            const int n = 5 + static_cast<int>(meta.uniform_int(8));
            const TspInstance inst = testsupport::make_random_instance(n, meta);
            PheromoneState pher(n, 1e-4);
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) pher.set(i, j, meta.uniform(1e-8, 1e-2));
            }
            AcsParams params;
            params.phi_exp = static_cast<int>(meta.uniform_int(9));
            params.beta = static_cast<int>(meta.uniform_int(9));
            std::vector<int> cands;
            for (int v = 1; v < n; ++v) {
                if (meta.uniform() < 0.7) cands.push_back(v);
            }
            if (cands.empty()) cands.push_back(n - 1);
            double sum = 0.0;
            for (double w : transition_weights(pher, inst, 0, cands, params)) sum += w;
            if (std::abs(sum - 1.0) > 1e-9) ok = false;
        }
        if (!ok) failures += " eq1-normalization";
    }

    // PSO positions stay in bounds through velocity/position updates
    {
        const DomainBounds bounds = DomainBounds::acs_box();
        PsoConfig cfg;
        bool ok = true;
        for (int round = 0; round < 1000; ++round) {
            ParticleState p;
            for (int d = 0; d < kNumParams; ++d) {
                p.position[d] = meta.uniform(bounds.low[d] + DomainBounds::kBoundEps,
                                             bounds.high[d] - DomainBounds::kBoundEps);
                p.best_position[d] = meta.uniform(bounds.low[d], bounds.high[d]);
                p.velocity[d] = meta.uniform(-(bounds.high[d] - bounds.low[d]),
                                             bounds.high[d] - bounds.low[d]);
            }
            ParamVector bg;
            for (int d = 0; d < kNumParams; ++d) bg[d] = meta.uniform(bounds.low[d], bounds.high[d]);
            Rng step_rng = meta.derive(961, static_cast<std::uint64_t>(round));
            for (int step = 0; step < 5; ++step) {
                update_velocity(p, bg, cfg, meta.uniform(0.1, 1.0), bounds, step_rng);
                update_position(p, cfg, bounds);
                for (int d = 0; d < kNumParams; ++d) {
                    if (p.position[d] < bounds.low[d] || p.position[d] > bounds.high[d]) ok = false;
                    const double range = bounds.high[d] - bounds.low[d];
                    if (std::abs(p.velocity[d]) > range) ok = false;
                }
            }
        }
        if (!ok) failures += " pso-bounds";
    }

    // PSO global-best monotonicity across iterations
    {
        bool ok = true;
        int checks = 0;
        PsoConfig cfg;
        cfg.swarm_size = 4;
        cfg.pso_iterations = 25;
        cfg.trials_per_eval = 1;
        cfg.acs_iterations_per_trial = 2;
        cfg.threads = 1;
        for (int round = 0; round < 40; ++round) {
            const TspInstance inst = testsupport::make_random_instance(
                5 + static_cast<int>(meta.uniform_int(5)), meta);
            const OptimizeResult result =
                optimize(inst, cfg, meta.derive(962, static_cast<std::uint64_t>(round)));
            std::int64_t last = std::numeric_limits<std::int64_t>::max();
            for (const auto& row : result.trace) {
                ++checks;
                if (row.global_best > last) ok = false;
                last = row.global_best;
            }
        }
        if (!(ok && checks >= 1000)) failures += " pso-monotonicity";
    }

    // round_position idempotence and range, randomized
    {
        const DomainBounds bounds = DomainBounds::acs_box();
        bool ok = true;
        for (int round = 0; round < 1000; ++round) {
            ParamVector x;
            for (int d = 0; d < kNumParams; ++d) {
                x[d] = meta.uniform(bounds.low[d] + DomainBounds::kBoundEps,
                                    bounds.high[d] - DomainBounds::kBoundEps);
            }
            const AcsParams once = round_position(x);
            try {
                validate(once);
            } catch (const std::exception&) {
                ok = false;
            }
            const AcsParams twice = round_position(to_position(once));
            if (to_position(once) != to_position(twice)) ok = false;
        }
        if (!ok) failures += " round_position-idempotence";
    }

    report(6, failures.empty(), "invariant suites (>= 1000 cases each)",
           failures.empty() ? "tour validity, Eq.1 normalization, pheromone bounds, PSO bounds, "
                              "monotonicity, rounding"
                            : "failing:" + failures);
}

// --- criterion 7: determinism across runs and parallelism degrees ----------

void criterion_7() {
    TempDir tmp;
    Rng gen = Rng(kMasterSeed).derive(907);
    const TspInstance inst = testsupport::make_random_instance(10, gen, 1000.0, "det10");
    const fs::path inst_file = tmp.path / "det10.tsp";
    {
        std::ofstream out(inst_file);
        out << to_tsplib(inst);
    }
    const fs::path dir = tmp.path / "instances";
    fs::create_directories(dir);
    fs::copy_file(inst_file, dir / "det10.tsp");

    bool ok = true;
    std::string detail = "solve/tune/bench identical at threads 1 vs 3";

    // solve: stdout lengths + raw CSV length column
    {
        auto run = [&](int threads, const std::string& tag) {
            const fs::path raw = tmp.path / ("solve_" + tag + ".csv");
            const CliResult r =
                run_cli("--seed 11 --threads " + std::to_string(threads) + " solve --instance " +
                        inst_file.string() + " --preset PACS-3 --trials 6 --iters 30 --raw-csv " +
                        raw.string());
            if (r.exit_code != 0) ok = false;
            const double mn = parse_metric(r.output, "min length: ");
            const double avg = parse_metric(r.output, "avg length: ");
            // columns 4 and 5 of the raw CSV are wall-clock times
            const std::string lengths =
                csv_length_columns(testsupport::read_file(raw.string()), {4, 5});
            return std::to_string(mn) + "|" + std::to_string(avg) + "|" + lengths;
        };
        const std::string a = run(1, "a");
        const std::string b = run(1, "b");
        const std::string c = run(3, "c");
        if (a != b || a != c) {
            ok = false;
            detail = "solve output differs across runs/threads";
        }
    }

    // tune: trace length columns + tuned preset bytes
    {
        auto run = [&](int threads, const std::string& tag) {
            const fs::path preset_out = tmp.path / ("tune_" + tag + ".txt");
            const fs::path trace_out = tmp.path / ("tune_" + tag + ".csv");
            const CliResult r = run_cli("--seed 12 --threads " + std::to_string(threads) +
                                        " tune --instance " + inst_file.string() +
                                        " --pso-iters 6 --swarm 4 --trials-per-eval 2 "
                                        "--acs-iters 15 --preset-out " +
                                        preset_out.string() + " --trace-out " +
                                        trace_out.string());
            if (r.exit_code != 0) ok = false;
            // column 3 of the trace is wall-clock mean_eval_seconds
            return testsupport::read_file(preset_out.string()) + "#" +
                   csv_length_columns(testsupport::read_file(trace_out.string()), {3});
        };
        const std::string a = run(1, "a");
        const std::string b = run(3, "b");
        if (a != b) {
            ok = false;
            detail = "tune output differs across threads";
        }
    }

    // bench: aggregate CSV length columns
    {
        auto run = [&](int threads, const std::string& tag) {
            const fs::path out = tmp.path / ("bench_" + tag);
            const CliResult r = run_cli("--seed 13 --threads " + std::to_string(threads) +
                                        " bench --instances " + dir.string() +
                                        " --presets PACS-1,ACS_GA-5 --trials 4 --iters 20 "
                                        "--out-dir " +
                                        out.string());
            if (r.exit_code != 0) ok = false;
            return csv_length_columns(
                testsupport::read_file((out / "bench_aggregate.csv").string()), {5, 6});
        };
        const std::string a = run(1, "a");
        const std::string b = run(3, "b");
        if (a != b) {
            ok = false;
            detail = "bench aggregate differs across threads";
        }
    }

    report(7, ok, "determinism across runs and parallelism degrees", detail);
}

// --- criterion 8: hand-computed unit oracles --------------------------------

void criterion_8() {
    std::string failures;
    const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12; };

    // EUC_2D distances
    if (euc2d_distance({0, 0}, {3, 4}) != 5) failures += " euc2d-pythagorean";
    if (euc2d_distance({0, 0}, {1, 1}) != 1) failures += " euc2d-rounding";

    // local update: rho = 0.5, tau = 0.4, tau0 = 0.2 -> 0.3
    {
        PheromoneState pher(3, 0.2);
        pher.set(0, 1, 0.4);
        AcsParams params;
        params.rho = 0.5;
        local_update(pher, 0, 1, params);
        if (!close(pher.get(0, 1), 0.3)) failures += " local-update";
    }

    // global update: alpha = 0.1, tau = 0.01, L = 500 -> 0.0092
    {
        PheromoneState pher(3, 0.01);
        AcsParams params;
        params.alpha = 0.1;
        const std::vector<int> tour{0, 1, 2};
        global_update(pher, tour, 500, params);
        if (!close(pher.get(0, 1), 0.0092)) failures += " global-update";
    }

    // velocity with injected randoms: w=0, r1=r2=1, c1=c2=2, x=0, bl=1, bg=2 -> 6
    {
        const DomainBounds wide{{-100, -100, -100, -100, -100, -100, -100},
                                {100, 100, 100, 100, 100, 100, 100}};
        ParamVector v{}, x{}, bl{}, bg{};
        bl[0] = 1.0;
        bg[0] = 2.0;
        const ParamVector out = velocity_step(v, x, bl, bg, 0.0, 2.0, 2.0, 1.0, 1.0, wide);
        if (out[0] != 6.0) failures += " velocity-step";
    }

    // position: x = 0.1, v = 0.1, chi = 0.729 -> 0.1729
    {
        ParticleState p;
        p.position = {0.1, 0, 0, 0.5, 0.5, 0.5, 10};
        p.velocity = {0.1, 0, 0, 0, 0, 0, 0};
        update_position(p, PsoConfig{}, DomainBounds::acs_box());
        if (!close(p.position[0], 0.1729)) failures += " position-step";
    }

    report(8, failures.empty(), "hand-computed unit oracles",
           failures.empty() ? "EUC_2D, local/global update, velocity/position" :
                              "failing:" + failures);
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
    const auto wants = [&](int n) { return selected.empty() || selected.contains(n); };

    if (wants(1)) criterion_1();
    if (wants(2)) reproduction_criterion(2, "eil51", "ACS_GA-2", 428, 432.0);
    if (wants(3)) reproduction_criterion(3, "eil76", "ACS_GA-4", 541, 0.0);
    if (wants(4)) reproduction_criterion(4, "kroA100", "PACS-2", 21400, 0.0);
    if (wants(5)) criterion_5();
    if (wants(6)) criterion_6();
    if (wants(7)) criterion_7();
    if (wants(8)) criterion_8();

    return g_all_passed ? 0 : 1;
}
