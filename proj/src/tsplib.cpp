#include "acstune/tsplib.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace acstune {

std::int32_t euc2d_distance(Point a, Point b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return static_cast<std::int32_t>(std::sqrt(dx * dx + dy * dy) + 0.5);
}

TspInstance::TspInstance(std::string name, std::vector<Point> coords, int precompute_limit)
    : name_(std::move(name)), coords_(std::move(coords)) {
    if (coords_.size() < 3) {
        throw std::invalid_argument("TSP instance needs at least 3 vertices, got " +
                                    std::to_string(coords_.size()));
    }
    const int n = dimension();
    if (n <= precompute_limit) {
        matrix_.resize(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                matrix_[static_cast<std::size_t>(i) * n + j] =
                    i == j ? 0 : euc2d_distance(coords_[i], coords_[j]);
            }
        }
    }
}

std::int32_t TspInstance::distance(int i, int j) const {
    const int n = dimension();
    if (i < 0 || i >= n || j < 0 || j >= n) {
        throw std::out_of_range("vertex index out of range: (" + std::to_string(i) + "," +
                                std::to_string(j) + ") for dimension " + std::to_string(n));
    }
    return i == j ? 0 : at(i, j);
}

std::int64_t TspInstance::tour_length(std::span<const int> tour) const {
    if (tour.empty()) return 0;
    std::int64_t total = 0;
    int prev = tour.back();
    for (int v : tour) {
        total += distance(prev, v);
        prev = v;
    }
    return total;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// "KEY : value" / "KEY: value" / "KEY:value"; returns false when the line has
// no colon (section markers, coordinate rows).
bool split_header(std::string_view line, std::string_view& key, std::string_view& value) {
    const auto pos = line.find(':');
    if (pos == std::string_view::npos) return false;
    key = trim(line.substr(0, pos));
    value = trim(line.substr(pos + 1));
    return true;
}

double parse_real(std::string_view token, int line_no, const char* what) {
    double out = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError("line " + std::to_string(line_no) + ": invalid " + what + " '" +
                             std::string(token) + "'",
                         line_no);
    }
    return out;
}

std::string format_real(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

TspInstance parse_instance(std::string_view text, int precompute_limit) {
    std::string name = "unnamed";
    long long dimension = -1;
    bool saw_weight_type = false;
    bool in_coords = false;
    std::vector<Point> coords;

    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim(raw);
        if (line.empty()) continue;
        if (line == "EOF") break;

        if (!in_coords) {
            if (line == "NODE_COORD_SECTION") {
                if (dimension < 0) {
                    throw ParseError("line " + std::to_string(line_no) +
                                         ": NODE_COORD_SECTION before DIMENSION",
                                     line_no);
                }
                in_coords = true;
                continue;
            }
            std::string_view key, value;
            if (!split_header(line, key, value)) {
                throw ParseError("line " + std::to_string(line_no) + ": unexpected line '" +
                                     std::string(line) + "' in header",
                                 line_no);
            }
            if (key == "NAME") {
                name = std::string(value);
            } else if (key == "TYPE") {
                if (value != "TSP") {
                    throw ParseError("line " + std::to_string(line_no) + ": unsupported TYPE '" +
                                         std::string(value) + "' (only TSP)",
                                     line_no);
                }
            } else if (key == "DIMENSION") {
                auto [ptr, ec] =
                    std::from_chars(value.data(), value.data() + value.size(), dimension);
                if (ec != std::errc{} || ptr != value.data() + value.size() || dimension < 3) {
                    throw ParseError("line " + std::to_string(line_no) + ": invalid DIMENSION '" +
                                         std::string(value) + "' (need an integer >= 3)",
                                     line_no);
                }
            } else if (key == "EDGE_WEIGHT_TYPE") {
                if (value != "EUC_2D") {
                    throw ParseError("line " + std::to_string(line_no) +
                                         ": unsupported EDGE_WEIGHT_TYPE '" + std::string(value) +
                                         "' (only EUC_2D)",
                                     line_no);
                }
                saw_weight_type = true;
            }
            // other header keys (COMMENT, DISPLAY_DATA_TYPE, ...) are ignored
        } else {
            if (static_cast<long long>(coords.size()) == dimension) {
                throw ParseError("line " + std::to_string(line_no) +
                                     ": more coordinates than DIMENSION " +
                                     std::to_string(dimension),
                                 line_no);
            }
            std::istringstream row{std::string(line)};
            std::string id, xs, ys, extra;
            row >> id >> xs >> ys;
            if (ys.empty() || (row >> extra)) {
                throw ParseError("line " + std::to_string(line_no) +
                                     ": expected 'index x y', got '" + std::string(line) + "'",
                                 line_no);
            }
            coords.push_back({parse_real(xs, line_no, "x coordinate"),
                              parse_real(ys, line_no, "y coordinate")});
        }
    }

    if (dimension < 0) throw ParseError("missing DIMENSION header", line_no);
    if (!saw_weight_type) throw ParseError("missing EDGE_WEIGHT_TYPE header", line_no);
    if (!in_coords) throw ParseError("missing NODE_COORD_SECTION", line_no);
    if (static_cast<long long>(coords.size()) != dimension) {
        throw ParseError("line " + std::to_string(line_no) + ": DIMENSION is " +
                             std::to_string(dimension) + " but " +
                             std::to_string(coords.size()) + " coordinates were listed",
                         line_no);
    }
    return TspInstance(std::move(name), std::move(coords), precompute_limit);
}

std::string to_tsplib(const TspInstance& inst) {
    std::string out;
    out += "NAME : " + inst.name() + "\n";
    out += "TYPE : TSP\n";
    out += "DIMENSION : " + std::to_string(inst.dimension()) + "\n";
    out += "EDGE_WEIGHT_TYPE : EUC_2D\n";
    out += "NODE_COORD_SECTION\n";
    for (int i = 0; i < inst.dimension(); ++i) {
        const Point& p = inst.coords()[static_cast<std::size_t>(i)];
        out += std::to_string(i + 1) + " " + format_real(p.x) + " " + format_real(p.y) + "\n";
    }
    out += "EOF\n";
    return out;
}

TspInstance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open instance file: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    TspInstance inst = parse_instance(buf.str());
    if (inst.name() == "unnamed") {
        return TspInstance(path.stem().string(), inst.coords());
    }
    return inst;
}

}  // namespace acstune
