#pragma once

// Test-only helpers: instance generators and independent oracles. These stay
// deliberately separate from the library implementation paths they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "acstune/rng.hpp"
#include "acstune/tsplib.hpp"

namespace testsupport {

inline acstune::TspInstance make_random_instance(int n, acstune::Rng& rng,
                                                 double coord_range = 1000.0,
                                                 const std::string& name = "random") {
    std::vector<acstune::Point> coords;
    coords.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        coords.push_back({rng.uniform(0.0, coord_range), rng.uniform(0.0, coord_range)});
    }
    return acstune::TspInstance(name, std::move(coords));
}

// independent EUC_2D oracle: round-half-up of the Euclidean norm
inline std::int32_t euc2d_oracle(double x1, double y1, double x2, double y2) {
    return static_cast<std::int32_t>(
        std::floor(std::sqrt((x1 - x2) * (x1 - x2) + (y1 - y2) * (y1 - y2)) + 0.5));
}

// naive summation oracle for closed-tour length
inline std::int64_t tour_length_oracle(const acstune::TspInstance& inst,
                                       const std::vector<int>& tour) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < tour.size(); ++i) {
        total += inst.distance(tour[i], tour[(i + 1) % tour.size()]);
    }
    return total;
}

// exhaustive optimum over all (n-1)! tours with vertex 0 fixed; n <= 10
inline std::int64_t brute_force_optimum(const acstune::TspInstance& inst) {
    const int n = inst.dimension();
    std::vector<int> rest(static_cast<std::size_t>(n - 1));
    std::iota(rest.begin(), rest.end(), 1);
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    do {
        std::int64_t len = inst.distance(0, rest.front());
        for (std::size_t i = 0; i + 1 < rest.size(); ++i) {
            len += inst.distance(rest[i], rest[i + 1]);
        }
        len += inst.distance(rest.back(), 0);
        best = std::min(best, len);
    } while (std::next_permutation(rest.begin(), rest.end()));
    return best;
}

// independent greedy replay: repeatedly visit the closest unvisited vertex,
// ties to the lowest index, then close the tour
inline std::int64_t nearest_neighbor_oracle(const acstune::TspInstance& inst, int start) {
    const int n = inst.dimension();
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    seen[static_cast<std::size_t>(start)] = true;
    int current = start;
    std::int64_t total = 0;
    for (int k = 1; k < n; ++k) {
        int pick = -1;
        for (int v = 0; v < n; ++v) {
            if (seen[static_cast<std::size_t>(v)]) continue;
            if (pick < 0 || inst.distance(current, v) < inst.distance(current, pick)) pick = v;
        }
        total += inst.distance(current, pick);
        seen[static_cast<std::size_t>(pick)] = true;
        current = pick;
    }
    return total + inst.distance(current, start);
}

inline bool is_permutation_of_all(const std::vector<int>& tour, int n) {
    if (static_cast<int>(tour.size()) != n) return false;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int v : tour) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = true;
    }
    return true;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace testsupport
