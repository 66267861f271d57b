#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace acstune {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line) : std::runtime_error(msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// TSPLIB EUC_2D edge cost: nearest integer of the Euclidean distance,
// halves rounded up.
std::int32_t euc2d_distance(Point a, Point b);

/**
 * One symmetric Euclidean TSP instance. Immutable after construction; safe
 * to share across threads. Distances are precomputed into a full matrix for
 * instances up to `precompute_limit` vertices and computed on demand above
 * that.
 */
class TspInstance {
public:
    static constexpr int kDefaultPrecomputeLimit = 4096;

    TspInstance(std::string name, std::vector<Point> coords,
                int precompute_limit = kDefaultPrecomputeLimit);

    const std::string& name() const { return name_; }
    int dimension() const { return static_cast<int>(coords_.size()); }
    const std::vector<Point>& coords() const { return coords_; }

    // 0-based vertex indices; throws std::out_of_range on invalid input.
    std::int32_t distance(int i, int j) const;

    // Cost of visiting `tour` in order and returning to its first vertex.
    std::int64_t tour_length(std::span<const int> tour) const;

private:
    std::int32_t at(int i, int j) const {
        return matrix_.empty() ? euc2d_distance(coords_[static_cast<std::size_t>(i)],
                                                coords_[static_cast<std::size_t>(j)])
                               : matrix_[static_cast<std::size_t>(i) * coords_.size() +
                                         static_cast<std::size_t>(j)];
    }

    std::string name_;
    std::vector<Point> coords_;
    std::vector<std::int32_t> matrix_;  // empty when computing on demand
};

/**
 * Parses a TSPLIB file with EDGE_WEIGHT_TYPE EUC_2D and a NODE_COORD_SECTION.
 * Vertex indices follow file order. Throws ParseError naming the offending
 * line for malformed headers, unsupported edge weight types, a missing
 * coordinate section, or a DIMENSION/coordinate-count mismatch.
 */
TspInstance parse_instance(std::string_view text,
                           int precompute_limit = TspInstance::kDefaultPrecomputeLimit);

// Canonical TSPLIB serialization (NAME/TYPE/DIMENSION/EDGE_WEIGHT_TYPE/
// NODE_COORD_SECTION/EOF); coordinates keep full precision.
std::string to_tsplib(const TspInstance& inst);

// Reads and parses a file; the instance name falls back to the file stem
// when the header carries none.
TspInstance load_instance(const std::filesystem::path& path);

}  // namespace acstune
