#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "acstune/acs.hpp"
#include "acstune/rng.hpp"
#include "acstune/tsplib.hpp"

namespace acstune {

inline constexpr int kNumParams = 7;

// Order: (q0, phi_exp, beta, rho, alpha, neighbor_frac, num_ants).
using ParamVector = std::array<double, kNumParams>;

// Open box the particles move in; the open ends are realized as closed
// bounds shrunk by kBoundEps when clamping.
struct DomainBounds {
    std::array<double, kNumParams> low;
    std::array<double, kNumParams> high;

    static constexpr double kBoundEps = 1e-9;

    static DomainBounds acs_box() {
        return {{0.0, -1.0, -1.0, 0.0, 0.0, 0.0, 0.0},
                {1.0, 8.0, 8.0, 1.0, 1.0, 1.0, 40.0}};
    }
};

// Best tour length over one evaluation's trials; ties broken by the time
// field (ant-steps until the best trial first saw its best tour, so cheaper
// parameter sets win ties deterministically).
struct Fitness {
    std::int64_t length = std::numeric_limits<std::int64_t>::max();
    double time = std::numeric_limits<double>::infinity();

    friend bool operator<(const Fitness& a, const Fitness& b) {
        return a.length != b.length ? a.length < b.length : a.time < b.time;
    }
};

struct ParticleState {
    ParamVector position{};
    ParamVector velocity{};
    ParamVector best_position{};
    Fitness best_fitness{};  // recorded at evaluation time, never re-sampled
};

struct PsoConfig {
    double c1 = 2.0;
    double c2 = 2.0;
    double chi = 0.729;   // constriction factor
    double w0 = 1.0;      // initial inertia weight
    double w_decay = 0.99;
    double w_floor = 0.1;
    int swarm_size = 20;  // must be even and >= 2
    int pso_iterations = 500;
    int trials_per_eval = 5;
    int acs_iterations_per_trial = 1000;
    int threads = 0;      // 0 = resolve from env/hardware
};

void validate(const PsoConfig& cfg);

// Integer dimensions (phi_exp, beta, num_ants) are rounded up, then clamped
// into the AcsParams ranges; real dimensions pass through unchanged.
AcsParams round_position(const ParamVector& x);

// Embeds params back into the PSO domain (round_position is its left
// inverse on rounded values).
ParamVector to_position(const AcsParams& params);

// Runs cfg.trials_per_eval seeded ACS trials with the rounded parameters
// (trial t uses rng.derive(rng_role::trial, t)) and keeps the best result.
Fitness evaluate(const ParamVector& x, const TspInstance& inst, const PsoConfig& cfg,
                 const Rng& rng);

// One velocity update with explicit r1, r2 (deterministic core used by the
// unit oracles): v <- w*v + r1*c1*(bl - x) + r2*c2*(bg - x), clamped to
// +-(high - low) per dimension.
ParamVector velocity_step(const ParamVector& v, const ParamVector& x, const ParamVector& bl,
                          const ParamVector& bg, double w, double c1, double c2, double r1,
                          double r2, const DomainBounds& bounds);

// Draws fresh r1, r2 from `rng` and stores the new velocity in `p`.
void update_velocity(ParticleState& p, const ParamVector& global_best, const PsoConfig& cfg,
                     double w, const DomainBounds& bounds, Rng& rng);

// x <- x + chi*v, clamped into the (shrunk-open) bounds; stored in `p`.
void update_position(ParticleState& p, const PsoConfig& cfg, const DomainBounds& bounds);

/**
 * Half structured, half random initialization. Each dimension of the
 * structured half is a stratified grid over the full range, shuffled
 * per dimension, so every dimension is covered end to end. Velocities are
 * uniform in +-(high - low)/2.
 */
std::vector<ParticleState> init_swarm(const DomainBounds& bounds, const PsoConfig& cfg, Rng& rng);

struct IterationStats {
    int iteration;             // 1-based
    std::int64_t min_fitness;  // best evaluation of this iteration
    double mean_fitness;
    double mean_eval_seconds;  // wall clock; exempt from determinism
    double inertia;            // w applied to this iteration's velocity updates
    std::int64_t global_best;  // running best length (not part of the CSV)
};

struct OptimizeResult {
    AcsParams best_params;
    ParamVector best_position{};
    std::int64_t best_length = std::numeric_limits<std::int64_t>::max();
    std::vector<IterationStats> trace;
};

/**
 * Global-best PSO over the ACS parameter box. Per iteration: evaluate every
 * particle (in parallel, each with a stream derived from (master seed,
 * iteration, particle)), update recorded personal/global bests, decay the
 * inertia weight, then move the swarm.
 */
OptimizeResult optimize(const TspInstance& inst, const PsoConfig& cfg, const Rng& master);

// CSV with header iteration,min_fitness,mean_fitness,mean_eval_seconds,inertia
std::string trace_to_csv(const std::vector<IterationStats>& trace);

}  // namespace acstune
