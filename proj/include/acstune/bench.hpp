#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "acstune/acs.hpp"
#include "acstune/rng.hpp"
#include "acstune/tsplib.hpp"

namespace acstune {

struct ParamPreset {
    std::string name;
    AcsParams params;
};

// The 24 built-in parameter sets: the six per-instance tuned vectors plus
// the PACS-1..9 and ACS_GA-1..9 neighborhood expansions of the two
// literature baselines.
const std::vector<ParamPreset>& builtin_presets();

// nullptr when no built-in has that name.
const ParamPreset* find_preset(std::string_view name);

// Documented optimum for the six reference instances, for sanity bounds.
std::optional<std::int64_t> known_optimum(std::string_view instance_name);

struct TrialRecord {
    std::string preset;
    std::string instance;
    int trial = 0;
    std::int64_t length = 0;
    double time_to_best = 0.0;
    double total_time = 0.0;
};

struct EvalRecord {
    std::string preset;
    std::string instance;
    int trials = 0;
    double avg_length = 0.0;
    std::int64_t min_length = 0;
    double avg_time_to_best = 0.0;
    double avg_total_time = 0.0;
};

struct BenchOptions {
    int threads = 0;
    TimeMode time_mode = TimeMode::wall;
};

/**
 * Runs `trials` independent ACS trials (trial t uses
 * rng.derive(rng_role::trial, t); trials may execute concurrently) and
 * aggregates them. Per-trial rows are appended to `raw` when given, in
 * trial order.
 */
EvalRecord evaluate_preset(const TspInstance& inst, const ParamPreset& preset, int trials,
                           int iterations, const Rng& rng, const BenchOptions& options = {},
                           std::vector<TrialRecord>* raw = nullptr);

// One EvalRecord per (preset, instance) pair, presets-major. Cell (p, i)
// derives its stream as rng.derive(rng_role::bench_cell, p, i).
std::vector<EvalRecord> cross_matrix(std::span<const TspInstance> instances,
                                     std::span<const ParamPreset> presets, int trials,
                                     int iterations, const Rng& rng,
                                     const BenchOptions& options = {},
                                     std::vector<TrialRecord>* raw = nullptr);

// Header preset,instance,trials,avg_length,min_length,avg_time_to_best_s,
// avg_total_time_s; lengths averaged to 2 decimals, times to 3.
std::string emit_csv(std::span<const EvalRecord> records);

std::string emit_raw_csv(std::span<const TrialRecord> records);

// Flat key-value block (name=, q0=, phi_exp=, beta=, rho=, alpha=,
// neighbor_frac=, num_ants=); doubles keep full precision.
std::string format_preset(const ParamPreset& preset);

// Parses one or more blank-line-separated preset blocks; validates ranges.
std::vector<ParamPreset> parse_presets(std::string_view text);

}  // namespace acstune
