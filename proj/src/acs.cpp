#include "acstune/acs.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace acstune {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

double ipow(double base, int exp) {
    double out = 1.0;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

// eta(s,k); EUC_2D rounding can produce zero-cost edges for near-duplicate
// coordinates, so the cost is floored at 0.5.
double heuristic_value(std::int32_t cost) {
    return 1.0 / std::max(static_cast<double>(cost), 0.5);
}

// Precomputed eta^beta for every edge; one per trial (beta is fixed there).
struct HeuristicTable {
    HeuristicTable(const TspInstance& inst, int beta) : n(inst.dimension()) {
        values.resize(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                values[static_cast<std::size_t>(i) * n + j] =
                    ipow(heuristic_value(inst.distance(i, j)), beta);
            }
        }
    }

    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * n + j]; }

    int n;
    std::vector<double> values;
};

// tau^phi * eta^beta for one edge; `eta_pow` already carries the exponent.
inline double edge_weight(const PheromoneState& pheromone, int from, int to, int phi_exp,
                          double eta_pow) {
    return ipow(pheromone.get(from, to), phi_exp) * eta_pow;
}

// Shared decision core. `heur` may be null (weights then computed from the
// instance directly); scratch buffers are reused across calls per thread.
int choose_next_impl(const PheromoneState& pheromone, const TspInstance& inst,
                     const HeuristicTable* heur, const std::vector<char>& visited,
                     int current, const CandidateLists& candidates,
                     const AcsParams& params, Rng& rng) {
    static thread_local std::vector<int> feasible;
    static thread_local std::vector<double> weights;
    feasible.clear();
    weights.clear();

    auto eta_pow = [&](int to) {
        return heur ? heur->at(current, to)
                    : ipow(heuristic_value(inst.distance(current, to)), params.beta);
    };

    for (int v : candidates.of(current)) {
        if (!visited[static_cast<std::size_t>(v)]) feasible.push_back(v);
    }

    if (!feasible.empty()) {
        double total = 0.0;
        for (int v : feasible) {
            const double w = edge_weight(pheromone, current, v, params.phi_exp, eta_pow(v));
            weights.push_back(w);
            total += w;
        }
        const double q = rng.uniform();
        if (q <= params.q0) {
            // exploitation: argmax, ties to the lowest vertex index
            int best = feasible[0];
            double best_w = weights[0];
            for (std::size_t i = 1; i < feasible.size(); ++i) {
                if (weights[i] > best_w || (weights[i] == best_w && feasible[i] < best)) {
                    best = feasible[i];
                    best_w = weights[i];
                }
            }
            return best;
        }
        // biased exploration: proportional draw
        const double u = rng.uniform() * total;
        double acc = 0.0;
        for (std::size_t i = 0; i < feasible.size(); ++i) {
            acc += weights[i];
            if (u < acc) return feasible[i];
        }
        return feasible.back();
    }

    // No unvisited candidate: deterministic argmax over all unvisited
    // vertices (the q0 rule is not applied here).
    int best = -1;
    double best_w = -1.0;
    const int n = inst.dimension();
    for (int v = 0; v < n; ++v) {
        if (visited[static_cast<std::size_t>(v)] || v == current) continue;
        const double w = edge_weight(pheromone, current, v, params.phi_exp, eta_pow(v));
        if (w > best_w) {
            best = v;
            best_w = w;
        }
    }
    if (best < 0) throw std::logic_error("choose_next called with no unvisited vertex");
    return best;
}

}  // namespace

void validate(const AcsParams& params) {
    require(params.q0 >= 0.0 && params.q0 <= 1.0, "q0 must be in [0,1]");
    require(params.phi_exp >= 0 && params.phi_exp <= 8, "phi_exp must be in [0,8]");
    require(params.beta >= 0 && params.beta <= 8, "beta must be in [0,8]");
    require(params.rho >= 0.0 && params.rho <= 1.0, "rho must be in [0,1]");
    require(params.alpha >= 0.0 && params.alpha <= 1.0, "alpha must be in [0,1]");
    require(params.neighbor_frac >= 0.0 && params.neighbor_frac <= 1.0,
            "neighbor_frac must be in [0,1]");
    require(params.num_ants >= 1 && params.num_ants <= 40, "num_ants must be in [1,40]");
}

std::int64_t nearest_neighbor_length(const TspInstance& inst, int start) {
    const int n = inst.dimension();
    if (start < 0 || start >= n) throw std::out_of_range("start vertex out of range");
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    visited[static_cast<std::size_t>(start)] = 1;
    int current = start;
    std::int64_t total = 0;
    for (int step = 1; step < n; ++step) {
        int next = -1;
        std::int32_t best = 0;
        for (int v = 0; v < n; ++v) {
            if (visited[static_cast<std::size_t>(v)]) continue;
            const std::int32_t d = inst.distance(current, v);
            if (next < 0 || d < best) {
                next = v;
                best = d;
            }
        }
        visited[static_cast<std::size_t>(next)] = 1;
        total += best;
        current = next;
    }
    return total + inst.distance(current, start);
}

PheromoneState init_pheromone(const TspInstance& inst) {
    const std::int64_t nn = std::max<std::int64_t>(nearest_neighbor_length(inst, 0), 1);
    const double tau0 = 1.0 / (static_cast<double>(inst.dimension()) * static_cast<double>(nn));
    return PheromoneState(inst.dimension(), tau0);
}

CandidateLists build_candidates(const TspInstance& inst, double neighbor_frac) {
    if (neighbor_frac < 0.0 || neighbor_frac > 1.0) {
        throw std::invalid_argument("neighbor_frac must be in [0,1]");
    }
    const int n = inst.dimension();
    const int wanted = static_cast<int>(std::ceil(neighbor_frac * n));
    const int size = std::max(1, std::min(n - 1, wanted));

    CandidateLists lists;
    lists.neighbors.resize(static_cast<std::size_t>(n));
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const std::int32_t da = inst.distance(s, a);
            const std::int32_t db = inst.distance(s, b);
            return da != db ? da < db : a < b;
        });
        auto& list = lists.neighbors[static_cast<std::size_t>(s)];
        list.reserve(static_cast<std::size_t>(size));
        for (int v : order) {
            if (v == s) continue;
            list.push_back(v);
            if (static_cast<int>(list.size()) == size) break;
        }
    }
    return lists;
}

std::vector<double> transition_weights(const PheromoneState& pheromone, const TspInstance& inst,
                                       int from, std::span<const int> candidates,
                                       const AcsParams& params) {
    if (candidates.empty()) throw std::invalid_argument("empty candidate set");
    std::vector<double> weights;
    weights.reserve(candidates.size());
    double total = 0.0;
    for (int v : candidates) {
        const double w = edge_weight(pheromone, from, v, params.phi_exp,
                                     ipow(heuristic_value(inst.distance(from, v)), params.beta));
        weights.push_back(w);
        total += w;
    }
    for (double& w : weights) w /= total;
    return weights;
}

int choose_next(const PheromoneState& pheromone, const TspInstance& inst,
                const std::vector<char>& visited, int current,
                const CandidateLists& candidates, const AcsParams& params, Rng& rng) {
    return choose_next_impl(pheromone, inst, nullptr, visited, current, candidates, params, rng);
}

void local_update(PheromoneState& pheromone, int i, int j, const AcsParams& params) {
    const double value = (1.0 - params.rho) * pheromone.get(i, j) + params.rho * pheromone.tau0();
    pheromone.set(i, j, value);
}

void global_update(PheromoneState& pheromone, std::span<const int> best_tour,
                   std::int64_t best_length, const AcsParams& params) {
    const double deposit = 1.0 / static_cast<double>(best_length);
    int prev = best_tour.back();
    for (int v : best_tour) {
        const double value = (1.0 - params.alpha) * pheromone.get(prev, v) + params.alpha * deposit;
        pheromone.set(prev, v, value);
        prev = v;
    }
}

TrialResult run_trial(const TspInstance& inst, const AcsParams& params, int iterations,
                      Rng& rng, const TrialOptions& options) {
    validate(params);
    if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");

    const int n = inst.dimension();
    const int ants = params.num_ants;
    const CandidateLists candidates = build_candidates(inst, params.neighbor_frac);
    PheromoneState pheromone = init_pheromone(inst);
    const HeuristicTable heuristic(inst, params.beta);

    std::vector<std::vector<int>> tours(static_cast<std::size_t>(ants));
    std::vector<std::vector<char>> visited(static_cast<std::size_t>(ants));
    std::vector<std::int64_t> lengths(static_cast<std::size_t>(ants), 0);
    for (auto& t : tours) t.reserve(static_cast<std::size_t>(n));
    for (auto& v : visited) v.assign(static_cast<std::size_t>(n), 0);

    TrialResult result;
    const auto t0 = std::chrono::steady_clock::now();
    const double steps_per_iteration =
        static_cast<double>(ants) * static_cast<double>(n);
    auto elapsed = [&](int iterations_done) {
        if (options.time_mode == TimeMode::synthetic) {
            return steps_per_iteration * static_cast<double>(iterations_done);
        }
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    for (int it = 0; it < iterations; ++it) {
        for (int a = 0; a < ants; ++a) {
            tours[a].clear();
            std::fill(visited[a].begin(), visited[a].end(), 0);
            const int start = static_cast<int>(rng.uniform_int(static_cast<std::uint32_t>(n)));
            tours[a].push_back(start);
            visited[a][static_cast<std::size_t>(start)] = 1;
        }

        // all ants advance one step per round; local updates from one ant's
        // step influence the others' next choices
        for (int step = 1; step < n; ++step) {
            for (int a = 0; a < ants; ++a) {
                const int current = tours[a].back();
                const int next = choose_next_impl(pheromone, inst, &heuristic, visited[a],
                                                  current, candidates, params, rng);
                local_update(pheromone, current, next, params);
                tours[a].push_back(next);
                visited[a][static_cast<std::size_t>(next)] = 1;
            }
        }
        for (int a = 0; a < ants; ++a) {
            local_update(pheromone, tours[a].back(), tours[a].front(), params);
        }

        for (int a = 0; a < ants; ++a) {
            lengths[a] = inst.tour_length(tours[a]);
            if (lengths[a] < result.best_length) {
                result.best_length = lengths[a];
                result.best_tour = tours[a];
                result.iteration_of_best = it;
                result.time_to_best = elapsed(it + 1);
            }
        }

        global_update(pheromone, result.best_tour, result.best_length, params);

        if (options.observer && *options.observer) {
            (*options.observer)(IterationView{it, tours, lengths, result.best_length, pheromone});
        }
    }

    result.total_time = elapsed(iterations);
    return result;
}

}  // namespace acstune
