#include "acstune/pso.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "acstune/parallel.hpp"

namespace acstune {

namespace {

int rounded_int(double raw, int lo, int hi) {
    const double up = std::ceil(raw);
    return static_cast<int>(std::clamp(up, static_cast<double>(lo), static_cast<double>(hi)));
}

double clamped(double v, double lo, double hi) { return std::clamp(v, lo, hi); }

}  // namespace

void validate(const PsoConfig& cfg) {
    if (cfg.swarm_size < 2 || cfg.swarm_size % 2 != 0) {
        throw std::invalid_argument("swarm_size must be even and >= 2");
    }
    if (cfg.pso_iterations < 1) throw std::invalid_argument("pso_iterations must be >= 1");
    if (cfg.trials_per_eval < 1) throw std::invalid_argument("trials_per_eval must be >= 1");
    if (cfg.acs_iterations_per_trial < 1) {
        throw std::invalid_argument("acs_iterations_per_trial must be >= 1");
    }
    if (cfg.c1 < 0 || cfg.c2 < 0 || cfg.chi <= 0) {
        throw std::invalid_argument("c1, c2 must be >= 0 and chi > 0");
    }
    if (cfg.w0 <= 0 || cfg.w_decay <= 0 || cfg.w_floor <= 0 || cfg.w_floor > cfg.w0) {
        throw std::invalid_argument("inertia schedule must be positive with w_floor <= w0");
    }
}

AcsParams round_position(const ParamVector& x) {
    AcsParams p;
    p.q0 = x[0];
    p.phi_exp = rounded_int(x[1], 0, 8);
    p.beta = rounded_int(x[2], 0, 8);
    p.rho = x[3];
    p.alpha = x[4];
    p.neighbor_frac = x[5];
    p.num_ants = rounded_int(x[6], 1, 40);
    return p;
}

ParamVector to_position(const AcsParams& params) {
    return {params.q0,
            static_cast<double>(params.phi_exp),
            static_cast<double>(params.beta),
            params.rho,
            params.alpha,
            params.neighbor_frac,
            static_cast<double>(params.num_ants)};
}

Fitness evaluate(const ParamVector& x, const TspInstance& inst, const PsoConfig& cfg,
                 const Rng& rng) {
    const AcsParams params = round_position(x);
    Fitness best;
    for (int t = 0; t < cfg.trials_per_eval; ++t) {
        Rng trial_rng = rng.derive(rng_role::trial, static_cast<std::uint64_t>(t));
        const TrialResult trial = run_trial(inst, params, cfg.acs_iterations_per_trial,
                                            trial_rng, {.time_mode = TimeMode::synthetic});
        const Fitness f{trial.best_length, trial.time_to_best};
        if (f < best) best = f;
    }
    return best;
}

ParamVector velocity_step(const ParamVector& v, const ParamVector& x, const ParamVector& bl,
                          const ParamVector& bg, double w, double c1, double c2, double r1,
                          double r2, const DomainBounds& bounds) {
    ParamVector out;
    for (int d = 0; d < kNumParams; ++d) {
        const double range = bounds.high[d] - bounds.low[d];
        const double nv = w * v[d] + r1 * c1 * (bl[d] - x[d]) + r2 * c2 * (bg[d] - x[d]);
        out[d] = clamped(nv, -range, range);
    }
    return out;
}

void update_velocity(ParticleState& p, const ParamVector& global_best, const PsoConfig& cfg,
                     double w, const DomainBounds& bounds, Rng& rng) {
    const double r1 = rng.uniform();
    const double r2 = rng.uniform();
    p.velocity = velocity_step(p.velocity, p.position, p.best_position, global_best, w, cfg.c1,
                               cfg.c2, r1, r2, bounds);
}

void update_position(ParticleState& p, const PsoConfig& cfg, const DomainBounds& bounds) {
    for (int d = 0; d < kNumParams; ++d) {
        const double moved = p.position[d] + cfg.chi * p.velocity[d];
        p.position[d] = clamped(moved, bounds.low[d] + DomainBounds::kBoundEps,
                                bounds.high[d] - DomainBounds::kBoundEps);
    }
}

std::vector<ParticleState> init_swarm(const DomainBounds& bounds, const PsoConfig& cfg, Rng& rng) {
    validate(cfg);
    const int size = cfg.swarm_size;
    const int half = size / 2;
    std::vector<ParticleState> swarm(static_cast<std::size_t>(size));

    // structured half: per-dimension stratified grid under a random shuffle,
    // so each dimension's full range is covered across these particles
    for (int d = 0; d < kNumParams; ++d) {
        std::vector<int> strata(static_cast<std::size_t>(half));
        std::iota(strata.begin(), strata.end(), 0);
        for (int i = half - 1; i > 0; --i) {
            const int j = static_cast<int>(rng.uniform_int(static_cast<std::uint32_t>(i + 1)));
            std::swap(strata[i], strata[j]);
        }
        const double range = bounds.high[d] - bounds.low[d];
        for (int k = 0; k < half; ++k) {
            swarm[k].position[d] =
                bounds.low[d] + (strata[k] + 0.5) / static_cast<double>(half) * range;
        }
    }
    for (int k = half; k < size; ++k) {
        for (int d = 0; d < kNumParams; ++d) {
            swarm[k].position[d] = rng.uniform(bounds.low[d] + DomainBounds::kBoundEps,
                                               bounds.high[d] - DomainBounds::kBoundEps);
        }
    }
    for (auto& p : swarm) {
        for (int d = 0; d < kNumParams; ++d) {
            const double range = bounds.high[d] - bounds.low[d];
            p.velocity[d] = rng.uniform(-range / 2.0, range / 2.0);
        }
        p.best_position = p.position;
    }
    return swarm;
}

OptimizeResult optimize(const TspInstance& inst, const PsoConfig& cfg, const Rng& master) {
    validate(cfg);
    const DomainBounds bounds = DomainBounds::acs_box();
    Rng init_rng = master.derive(rng_role::swarm_init);
    std::vector<ParticleState> swarm = init_swarm(bounds, cfg, init_rng);

    OptimizeResult result;
    ParamVector global_best_position{};
    Fitness global_best;
    double w = cfg.w0;

    std::vector<Fitness> fitness(static_cast<std::size_t>(cfg.swarm_size));
    std::vector<double> eval_seconds(static_cast<std::size_t>(cfg.swarm_size));

    for (int it = 1; it <= cfg.pso_iterations; ++it) {
        parallel_for(cfg.swarm_size, cfg.threads, [&](int p) {
            const auto t0 = std::chrono::steady_clock::now();
            const Rng eval_rng = master.derive(rng_role::pso_eval,
                                               static_cast<std::uint64_t>(it),
                                               static_cast<std::uint64_t>(p));
            fitness[p] = evaluate(swarm[p].position, inst, cfg, eval_rng);
            eval_seconds[p] =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        });

        std::int64_t iteration_min = std::numeric_limits<std::int64_t>::max();
        double length_sum = 0.0;
        for (int p = 0; p < cfg.swarm_size; ++p) {
            if (fitness[p] < swarm[p].best_fitness) {
                swarm[p].best_fitness = fitness[p];
                swarm[p].best_position = swarm[p].position;
            }
            if (fitness[p] < global_best) {
                global_best = fitness[p];
                global_best_position = swarm[p].position;
            }
            iteration_min = std::min(iteration_min, fitness[p].length);
            length_sum += static_cast<double>(fitness[p].length);
        }

        w = std::max(cfg.w_floor, cfg.w_decay * w);

        for (int p = 0; p < cfg.swarm_size; ++p) {
            Rng move_rng = master.derive(rng_role::velocity, static_cast<std::uint64_t>(it),
                                         static_cast<std::uint64_t>(p));
            update_velocity(swarm[p], global_best_position, cfg, w, bounds, move_rng);
            update_position(swarm[p], cfg, bounds);
        }

        result.trace.push_back({it, iteration_min,
                                length_sum / static_cast<double>(cfg.swarm_size),
                                std::accumulate(eval_seconds.begin(), eval_seconds.end(), 0.0) /
                                    static_cast<double>(cfg.swarm_size),
                                w, global_best.length});
    }

    result.best_params = round_position(global_best_position);
    result.best_position = global_best_position;
    result.best_length = global_best.length;
    return result;
}

std::string trace_to_csv(const std::vector<IterationStats>& trace) {
    std::string out = "iteration,min_fitness,mean_fitness,mean_eval_seconds,inertia\n";
    char buf[160];
    for (const auto& row : trace) {
        char wbuf[32];
        auto [wptr, wec] = std::to_chars(wbuf, wbuf + sizeof wbuf, row.inertia);
        *wptr = '\0';
        std::snprintf(buf, sizeof buf, "%d,%lld,%.2f,%.6f,%s\n", row.iteration,
                      static_cast<long long>(row.min_fitness), row.mean_fitness,
                      row.mean_eval_seconds, wbuf);
        out += buf;
    }
    return out;
}

}  // namespace acstune
