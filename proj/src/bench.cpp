#include "acstune/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "acstune/parallel.hpp"

namespace acstune {

namespace {

AcsParams make_params(double q0, int phi_exp, int beta, double rho, double alpha,
                      double neighbor_frac, int num_ants) {
    AcsParams p;
    p.q0 = q0;
    p.phi_exp = phi_exp;
    p.beta = beta;
    p.rho = rho;
    p.alpha = alpha;
    p.neighbor_frac = neighbor_frac;
    p.num_ants = num_ants;
    return p;
}

std::vector<ParamPreset> make_builtin_presets() {
    std::vector<ParamPreset> presets;
    presets.push_back({"P_eil51", make_params(0.54, 1, 7, 0.40, 0.36, 0.18, 1)});
    presets.push_back({"P_eil76", make_params(0.58, 1, 5, 0.40, 0.21, 0.20, 5)});
    presets.push_back({"P_eil101", make_params(0.78, 2, 7, 0.23, 0.71, 0.12, 7)});
    presets.push_back({"P_kroA100", make_params(0.64, 1, 4, 0.24, 0.64, 0.12, 4)});
    presets.push_back({"P_kroB100", make_params(0.86, 1, 1, 0.08, 0.71, 0.12, 39)});
    presets.push_back({"P_rat99", make_params(0.95, 1, 3, 0.28, 0.15, 0.00, 9)});
    for (int i = 1; i <= 9; ++i) {
        presets.push_back(
            {"PACS-" + std::to_string(i), make_params(0.9, 1, 2, 0.10, 0.10, i / 10.0, 10)});
    }
    for (int i = 1; i <= 9; ++i) {
        presets.push_back(
            {"ACS_GA-" + std::to_string(i), make_params(0.7, 1, 6, 0.20, 0.20, i / 10.0, 10)});
    }
    return presets;
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

const std::vector<ParamPreset>& builtin_presets() {
    static const std::vector<ParamPreset> presets = make_builtin_presets();
    return presets;
}

const ParamPreset* find_preset(std::string_view name) {
    for (const ParamPreset& p : builtin_presets()) {
        if (p.name == name) return &p;
    }
    return nullptr;
}

std::optional<std::int64_t> known_optimum(std::string_view instance_name) {
    if (instance_name == "eil51") return 426;
    if (instance_name == "eil76") return 538;
    if (instance_name == "eil101") return 629;
    if (instance_name == "kroA100") return 21282;
    if (instance_name == "kroB100") return 22141;
    if (instance_name == "rat99") return 1211;
    return std::nullopt;
}

EvalRecord evaluate_preset(const TspInstance& inst, const ParamPreset& preset, int trials,
                           int iterations, const Rng& rng, const BenchOptions& options,
                           std::vector<TrialRecord>* raw) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    validate(preset.params);

    std::vector<TrialResult> results(static_cast<std::size_t>(trials));
    parallel_for(trials, options.threads, [&](int t) {
        Rng trial_rng = rng.derive(rng_role::trial, static_cast<std::uint64_t>(t));
        results[t] = run_trial(inst, preset.params, iterations, trial_rng,
                               {.time_mode = options.time_mode});
    });

    EvalRecord record;
    record.preset = preset.name;
    record.instance = inst.name();
    record.trials = trials;
    record.min_length = results[0].best_length;
    double length_sum = 0.0, tb_sum = 0.0, total_sum = 0.0;
    for (const TrialResult& r : results) {
        length_sum += static_cast<double>(r.best_length);
        tb_sum += r.time_to_best;
        total_sum += r.total_time;
        record.min_length = std::min(record.min_length, r.best_length);
    }
    record.avg_length = length_sum / trials;
    record.avg_time_to_best = tb_sum / trials;
    record.avg_total_time = total_sum / trials;

    if (raw) {
        for (int t = 0; t < trials; ++t) {
            raw->push_back({preset.name, inst.name(), t, results[t].best_length,
                            results[t].time_to_best, results[t].total_time});
        }
    }
    return record;
}

std::vector<EvalRecord> cross_matrix(std::span<const TspInstance> instances,
                                     std::span<const ParamPreset> presets, int trials,
                                     int iterations, const Rng& rng, const BenchOptions& options,
                                     std::vector<TrialRecord>* raw) {
    if (instances.empty() || presets.empty()) {
        throw std::invalid_argument("cross_matrix needs at least one instance and one preset");
    }
    std::vector<EvalRecord> records;
    records.reserve(instances.size() * presets.size());
    for (std::size_t p = 0; p < presets.size(); ++p) {
        for (std::size_t i = 0; i < instances.size(); ++i) {
            const Rng cell_rng = rng.derive(rng_role::bench_cell, p, i);
            records.push_back(
                evaluate_preset(instances[i], presets[p], trials, iterations, cell_rng,
                                options, raw));
        }
    }
    return records;
}

std::string emit_csv(std::span<const EvalRecord> records) {
    std::string out =
        "preset,instance,trials,avg_length,min_length,avg_time_to_best_s,avg_total_time_s\n";
    char buf[256];
    for (const EvalRecord& r : records) {
        std::snprintf(buf, sizeof buf, "%s,%s,%d,%.2f,%lld,%.3f,%.3f\n", r.preset.c_str(),
                      r.instance.c_str(), r.trials, r.avg_length,
                      static_cast<long long>(r.min_length), r.avg_time_to_best,
                      r.avg_total_time);
        out += buf;
    }
    return out;
}

std::string emit_raw_csv(std::span<const TrialRecord> records) {
    std::string out = "preset,instance,trial,length,time_to_best_s,total_time_s\n";
    char buf[256];
    for (const TrialRecord& r : records) {
        std::snprintf(buf, sizeof buf, "%s,%s,%d,%lld,%.3f,%.3f\n", r.preset.c_str(),
                      r.instance.c_str(), r.trial, static_cast<long long>(r.length),
                      r.time_to_best, r.total_time);
        out += buf;
    }
    return out;
}

std::string format_preset(const ParamPreset& preset) {
    std::string out;
    out += "name=" + preset.name + "\n";
    out += "q0=" + format_double(preset.params.q0) + "\n";
    out += "phi_exp=" + std::to_string(preset.params.phi_exp) + "\n";
    out += "beta=" + std::to_string(preset.params.beta) + "\n";
    out += "rho=" + format_double(preset.params.rho) + "\n";
    out += "alpha=" + format_double(preset.params.alpha) + "\n";
    out += "neighbor_frac=" + format_double(preset.params.neighbor_frac) + "\n";
    out += "num_ants=" + std::to_string(preset.params.num_ants) + "\n";
    return out;
}

namespace {

double parse_double_field(const std::string& value, const std::string& key) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw std::invalid_argument("preset field " + key + ": invalid number '" + value + "'");
    }
    return out;
}

int parse_int_field(const std::string& value, const std::string& key) {
    int out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw std::invalid_argument("preset field " + key + ": invalid integer '" + value + "'");
    }
    return out;
}

ParamPreset block_to_preset(const std::map<std::string, std::string>& fields) {
    static const char* required[] = {"name",  "q0",            "phi_exp",  "beta",
                                     "rho",   "alpha",         "neighbor_frac", "num_ants"};
    for (const char* key : required) {
        if (!fields.contains(key)) {
            throw std::invalid_argument(std::string("preset block missing field '") + key + "'");
        }
    }
    ParamPreset preset;
    preset.name = fields.at("name");
    preset.params = AcsParams{
        parse_double_field(fields.at("q0"), "q0"),
        parse_int_field(fields.at("phi_exp"), "phi_exp"),
        parse_int_field(fields.at("beta"), "beta"),
        parse_double_field(fields.at("rho"), "rho"),
        parse_double_field(fields.at("alpha"), "alpha"),
        parse_double_field(fields.at("neighbor_frac"), "neighbor_frac"),
        parse_int_field(fields.at("num_ants"), "num_ants"),
    };
    validate(preset.params);
    return preset;
}

}  // namespace

std::vector<ParamPreset> parse_presets(std::string_view text) {
    std::vector<ParamPreset> presets;
    std::map<std::string, std::string> fields;

    std::size_t start = 0;
    auto flush = [&] {
        if (!fields.empty()) {
            presets.push_back(block_to_preset(fields));
            fields.clear();
        }
    };
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find('\n', start), text.size());
        std::string line(text.substr(start, end - start));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        start = end + 1;

        if (line.empty()) {
            flush();
            continue;
        }
        if (line[0] == '#') continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("preset line is not key=value: '" + line + "'");
        }
        const std::string key = line.substr(0, eq);
        if (fields.contains(key)) {
            throw std::invalid_argument("duplicate preset field '" + key + "'");
        }
        fields[key] = line.substr(eq + 1);
        if (end == text.size()) break;
    }
    flush();
    if (presets.empty()) throw std::invalid_argument("no presets found in input");
    return presets;
}

}  // namespace acstune
