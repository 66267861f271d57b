#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "acstune/rng.hpp"
#include "acstune/tsplib.hpp"

namespace acstune {

/**
 * The seven ACS parameters, after integer rounding. Tour construction picks
 * the next vertex by the pseudorandom-proportional rule over the candidate
 * list: with probability q0 the argmax of tau^phi_exp * eta^beta, otherwise a
 * draw proportional to it; eta is the inverse edge cost.
 */
struct AcsParams {
    double q0 = 0.9;            // exploitation probability, [0,1]
    int phi_exp = 1;            // pheromone exponent, [0,8]
    int beta = 2;               // heuristic exponent, [0,8]
    double rho = 0.1;           // local pheromone update rate, [0,1]
    double alpha = 0.1;         // global pheromone update rate, [0,1]
    double neighbor_frac = 0.2; // candidate list fraction of |V|, [0,1]
    int num_ants = 10;          // [1,40]
};

// Throws std::invalid_argument when any field is outside its range.
void validate(const AcsParams& params);

/**
 * Symmetric per-edge pheromone levels. tau(i,j) == tau(j,i) at all times;
 * every update is a convex combination, so levels stay inside the interval
 * spanned by tau0 and the 1/L_gb deposits seen so far.
 */
class PheromoneState {
public:
    PheromoneState(int dimension, double tau0)
        : dimension_(dimension),
          tau0_(tau0),
          tau_(static_cast<std::size_t>(dimension) * dimension, tau0) {}

    int dimension() const { return dimension_; }
    double tau0() const { return tau0_; }

    double get(int i, int j) const {
        return tau_[static_cast<std::size_t>(i) * dimension_ + j];
    }

    void set(int i, int j, double value) {
        tau_[static_cast<std::size_t>(i) * dimension_ + j] = value;
        tau_[static_cast<std::size_t>(j) * dimension_ + i] = value;
    }

private:
    int dimension_;
    double tau0_;
    std::vector<double> tau_;
};

// Per-vertex candidate lists: the nearest max(1, min(|V|-1, ceil(frac*|V|)))
// vertices, sorted ascending by distance, ties by lower index.
struct CandidateLists {
    std::vector<std::vector<int>> neighbors;

    std::span<const int> of(int vertex) const {
        return neighbors[static_cast<std::size_t>(vertex)];
    }
};

struct TrialResult {
    std::vector<int> best_tour;      // 0-based permutation of the vertices
    std::int64_t best_length = std::numeric_limits<std::int64_t>::max();
    double time_to_best = 0.0;       // seconds, or ant-steps in synthetic mode
    double total_time = 0.0;
    int iteration_of_best = -1;
};

// Length of the greedy nearest-neighbor tour from `start` (ties broken by
// lowest vertex index), closing edge included.
std::int64_t nearest_neighbor_length(const TspInstance& inst, int start);

// Uniform trail tau0 = 1 / (|V| * L_nn), L_nn the nearest-neighbor tour
// length from vertex 0 (clamped to >= 1 for degenerate all-zero instances).
PheromoneState init_pheromone(const TspInstance& inst);

CandidateLists build_candidates(const TspInstance& inst, double neighbor_frac);

// Normalized transition weights over `candidates` (all assumed unvisited and
// distinct from `from`): tau^phi_exp * eta^beta, divided by the sum.
std::vector<double> transition_weights(const PheromoneState& pheromone,
                                       const TspInstance& inst, int from,
                                       std::span<const int> candidates,
                                       const AcsParams& params);

/**
 * Picks the next vertex for an ant at `current`. With unvisited candidates
 * present: exploitation (argmax, ties to the lowest index) when q <= q0,
 * otherwise a proportional draw. With none, falls back to the deterministic
 * argmax over all unvisited vertices.
 */
int choose_next(const PheromoneState& pheromone, const TspInstance& inst,
                const std::vector<char>& visited, int current,
                const CandidateLists& candidates, const AcsParams& params, Rng& rng);

// tau <- (1-rho)*tau + rho*tau0 on the undirected edge (i,j).
void local_update(PheromoneState& pheromone, int i, int j, const AcsParams& params);

// tau <- (1-alpha)*tau + alpha/best_length on the tour's edges only.
void global_update(PheromoneState& pheromone, std::span<const int> best_tour,
                   std::int64_t best_length, const AcsParams& params);

enum class TimeMode {
    wall,      // monotonic clock, seconds
    synthetic, // deterministic ant-step counter in place of wall time
};

// Snapshot handed to a trial observer at the end of each iteration.
struct IterationView {
    int iteration;
    std::span<const std::vector<int>> tours;  // one per ant, this iteration
    std::span<const std::int64_t> lengths;
    std::int64_t best_length;
    const PheromoneState& pheromone;
};

using TrialObserver = std::function<void(const IterationView&)>;

struct TrialOptions {
    TimeMode time_mode = TimeMode::wall;
    const TrialObserver* observer = nullptr;
};

/**
 * One full ACS trial. Each iteration places every ant on a uniform-random
 * start vertex, advances all ants one step at a time (local-updating each
 * inserted edge, closing edges included), then applies the global update
 * with the best tour found so far in this trial.
 */
TrialResult run_trial(const TspInstance& inst, const AcsParams& params, int iterations,
                      Rng& rng, const TrialOptions& options = {});

}  // namespace acstune
