#include "eutsp/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <mutex>
#include <numbers>
#include <optional>
#include <ostream>
#include <limits>
#include <stdexcept>
#include <string_view>

#include "eutsp/errors.hpp"
#include "eutsp/rng.hpp"

namespace eutsp {

struct Instance::MetricsCache {
    std::once_flag once;
    InstanceMetrics value;
};

Instance Instance::validate(std::vector<Point> points, int grid_size) {
    const std::size_t n = points.size();
    if (n < 3) throw TooSmall(n);
    if (grid_size < 0) throw std::invalid_argument("grid size must be >= 0");
    for (std::size_t i = 0; i < n; ++i) {
        points[i].id = static_cast<int>(i + 1);
        if (grid_size > 0) {
            const Point& p = points[i];
            if (p.x < 0 || p.y < 0 || p.x >= grid_size || p.y >= grid_size) {
                throw std::invalid_argument("point " + std::to_string(i + 1) +
                                            " lies outside the " + std::to_string(grid_size) +
                                            "x" + std::to_string(grid_size) + " grid");
            }
        }
    }

    std::vector<Point> by_coord = points;
    std::sort(by_coord.begin(), by_coord.end(), [](const Point& a, const Point& b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.y != b.y) return a.y < b.y;
        return a.id < b.id;
    });
    for (std::size_t i = 1; i < n; ++i) {
        if (by_coord[i].x == by_coord[i - 1].x && by_coord[i].y == by_coord[i - 1].y) {
            throw DuplicatePoint(by_coord[i - 1].id, by_coord[i].id);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                if (orient(points[i], points[j], points[k]) == 0) {
                    throw CollinearTriple(points[i].id, points[j].id, points[k].id);
                }
            }
        }
    }

    Instance inst;
    inst.points_ = std::move(points);
    inst.grid_size_ = grid_size;
    inst.hull_ = convex_hull(inst.points_);
    inst.on_hull_.assign(n, 0);
    for (int label : inst.hull_) inst.on_hull_[static_cast<std::size_t>(label - 1)] = 1;
    inst.xs_.reserve(n);
    inst.ys_.reserve(n);
    std::int64_t max_abs = 0;
    for (const Point& p : inst.points_) {
        inst.xs_.push_back(p.x);
        inst.ys_.push_back(p.y);
        max_abs = std::max({max_abs, std::abs(std::int64_t{p.x}), std::abs(std::int64_t{p.y})});
    }
    inst.kernels_ = &kernels::for_coordinates(max_abs);
    inst.metrics_ = std::make_shared<MetricsCache>();
    return inst;
}

const InstanceMetrics& Instance::metrics() const {
    std::call_once(metrics_->once, [this] { metrics_->value = instance_metrics(points_); });
    return metrics_->value;
}

// ---------------------------------------------------------------------------
// Generators

namespace {

class DrawBudget {
public:
    explicit DrawBudget(std::string what) : what_(std::move(what)) {}

    void spend() {
        if (++used_ > kGenerationDrawBudget) {
            throw GenerationExhausted(what_ + ": no valid point set after " +
                                      std::to_string(kGenerationDrawBudget) + " draws");
        }
    }

private:
    std::string what_;
    std::int64_t used_ = 0;
};

// True iff `p` differs from every placed point and forms no collinear triple
// with any two of them.
bool admissible(std::span<const Point> placed, const Point& p) {
    for (const Point& q : placed) {
        if (q.x == p.x && q.y == p.y) return false;
    }
    for (std::size_t i = 0; i < placed.size(); ++i) {
        for (std::size_t j = i + 1; j < placed.size(); ++j) {
            if (orient(placed[i], placed[j], p) == 0) return false;
        }
    }
    return true;
}

constexpr std::int64_t kJitterSteps = std::int64_t{1} << 20;

std::vector<Point> convex_points(int n, int m, Rng& rng, DrawBudget& budget) {
    const double centre = (m - 1) / 2.0;
    const double radius = (m - 1) / 2.0;
    const double spacing = 2.0 * std::numbers::pi / n;
    const double max_jitter = std::numbers::pi / (4.0 * n);
    const double phase =
        static_cast<double>(rng.below(static_cast<std::uint64_t>(kJitterSteps))) / kJitterSteps *
        spacing;

    auto sample_slot = [&](int slot) {
        const auto step = static_cast<std::int64_t>(
                              rng.below(static_cast<std::uint64_t>(2 * kJitterSteps + 1))) -
                          kJitterSteps;
        const double theta = phase + slot * spacing +
                             static_cast<double>(step) / kJitterSteps * max_jitter;
        const auto clamp = [m](double v) {
            return static_cast<std::int32_t>(std::clamp<long long>(std::llround(v), 0, m - 1));
        };
        return Point{0, clamp(centre + radius * std::cos(theta)),
                     clamp(centre + radius * std::sin(theta))};
    };

    std::vector<std::optional<Point>> slots(static_cast<std::size_t>(n));
    std::vector<int> pending(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pending[static_cast<std::size_t>(i)] = i;

    std::vector<Point> placed;
    while (!pending.empty()) {
        for (int slot : pending) {
            placed.clear();
            for (const auto& s : slots) {
                if (s) placed.push_back(*s);
            }
            Point p;
            do {
                budget.spend();
                p = sample_slot(slot);
            } while (!admissible(placed, p));
            slots[static_cast<std::size_t>(slot)] = p;
        }

        placed.clear();
        for (std::size_t i = 0; i < slots.size(); ++i) {
            Point p = *slots[i];
            p.id = static_cast<int>(i + 1);
            placed.push_back(p);
        }
        const std::vector<int> hull = convex_hull(placed);
        std::vector<char> on_hull(slots.size(), 0);
        for (int label : hull) on_hull[static_cast<std::size_t>(label - 1)] = 1;
        pending.clear();
        for (std::size_t i = 0; i < slots.size(); ++i) {
            if (!on_hull[i]) {
                pending.push_back(static_cast<int>(i));
                slots[i].reset();
            }
        }
    }

    std::vector<Point> out;
    out.reserve(slots.size());
    for (const auto& s : slots) out.push_back(*s);
    return out;
}

void check_grid_args(int n, int m) {
    if (n < 3) throw std::invalid_argument("need at least 3 points");
    if (m < 3) throw std::invalid_argument("grid size m must be >= 3");
}

}  // namespace

Instance generate_grid(int n, int m, std::uint64_t seed) {
    check_grid_args(n, m);
    Rng rng(seed);
    DrawBudget budget("generate_grid(n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")");
    std::vector<Point> points;
    points.reserve(static_cast<std::size_t>(n));
    while (points.size() < static_cast<std::size_t>(n)) {
        budget.spend();
        const Point p{0, static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(m))),
                      static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(m)))};
        if (admissible(points, p)) points.push_back(p);
    }
    return Instance::validate(std::move(points), m);
}

Instance generate_convex(int n, int m, std::uint64_t seed) {
    check_grid_args(n, m);
    Rng rng(seed);
    DrawBudget budget("generate_convex(n=" + std::to_string(n) + ", m=" + std::to_string(m) +
                      ")");
    std::vector<Point> points = convex_points(n, m, rng, budget);
    rng.shuffle(std::span<Point>(points));
    return Instance::validate(std::move(points), m);
}

Instance generate_with_inner(int h, int k, int m, std::uint64_t seed) {
    check_grid_args(h, m);
    if (k < 0) throw std::invalid_argument("inner point count must be >= 0");
    Rng rng(seed);
    DrawBudget budget("generate_with_inner(h=" + std::to_string(h) + ", k=" + std::to_string(k) +
                      ", m=" + std::to_string(m) + ")");
    std::vector<Point> points = convex_points(h, m, rng, budget);

    std::vector<Point> hull_ccw = points;
    for (std::size_t i = 0; i < hull_ccw.size(); ++i) hull_ccw[i].id = static_cast<int>(i + 1);
    {
        const std::vector<int> order = convex_hull(hull_ccw);
        std::vector<Point> sorted;
        for (int label : order) sorted.push_back(hull_ccw[static_cast<std::size_t>(label - 1)]);
        hull_ccw = std::move(sorted);
    }
    std::int32_t min_x = m, min_y = m, max_x = 0, max_y = 0;
    for (const Point& p : hull_ccw) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const auto strictly_inside = [&](const Point& p) {
        for (std::size_t i = 0; i < hull_ccw.size(); ++i) {
            if (orient(hull_ccw[i], hull_ccw[(i + 1) % hull_ccw.size()], p) <= 0) return false;
        }
        return true;
    };

    for (int added = 0; added < k;) {
        budget.spend();
        const Point p{
            0,
            min_x + static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(max_x - min_x + 1))),
            min_y + static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(max_y - min_y + 1)))};
        if (strictly_inside(p) && admissible(points, p)) {
            points.push_back(p);
            ++added;
        }
    }
    rng.shuffle(std::span<Point>(points));
    return Instance::validate(std::move(points), m);
}

// ---------------------------------------------------------------------------
// File I/O

namespace {

// Parses "a b" with exactly one space and nothing else on the line.
std::pair<long long, long long> parse_pair(std::string_view line, int line_no) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto space = line.find(' ');
    if (space == std::string_view::npos) throw ParseError("expected two integers", line_no);
    const auto parse = [&](std::string_view field) {
        long long value = 0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
        if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
            throw ParseError("malformed integer '" + std::string(field) + "'", line_no);
        }
        return value;
    };
    return {parse(line.substr(0, space)), parse(line.substr(space + 1))};
}

}  // namespace

void write_instance(const Instance& instance, std::ostream& out) {
    out << instance.size() << ' ' << instance.grid_size() << '\n';
    for (const Point& p : instance.points()) out << p.x << ' ' << p.y << '\n';
}

void write_instance(const Instance& instance, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    write_instance(instance, out);
    if (!out) throw Error("failed writing " + path.string());
}

Instance read_instance(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty instance file", 1);
    const auto [n, m] = parse_pair(line, 1);
    if (n < 0 || n > 1'000'000) throw ParseError("bad point count " + std::to_string(n), 1);
    if (m < 0 || m > std::numeric_limits<std::int32_t>::max()) {
        throw ParseError("bad grid size " + std::to_string(m), 1);
    }

    std::vector<Point> points;
    points.reserve(static_cast<std::size_t>(n));
    int line_no = 1;
    while (points.size() < static_cast<std::size_t>(n) && std::getline(in, line)) {
        ++line_no;
        const auto [x, y] = parse_pair(line, line_no);
        const auto in_range = [m](long long v) {
            return m > 0 ? (v >= 0 && v < m)
                         : (v >= std::numeric_limits<std::int32_t>::min() &&
                            v <= std::numeric_limits<std::int32_t>::max());
        };
        if (!in_range(x) || !in_range(y)) throw ParseError("coordinate out of range", line_no);
        points.push_back(Point{0, static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)});
    }
    if (points.size() != static_cast<std::size_t>(n)) {
        throw ParseError("header declares " + std::to_string(n) + " points but file has " +
                         std::to_string(points.size()));
    }
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty()) throw ParseError("trailing content after the last point", line_no);
    }
    return Instance::validate(std::move(points), static_cast<int>(m));
}

Instance read_instance(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    return read_instance(in);
}

}  // namespace eutsp
