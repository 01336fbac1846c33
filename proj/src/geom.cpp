#include "eutsp/geom.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "eutsp/errors.hpp"

namespace eutsp {

double angle_at(const Point& u, const Point& v, const Point& w) noexcept {
    const std::int64_t ax = std::int64_t{u.x} - v.x;
    const std::int64_t ay = std::int64_t{u.y} - v.y;
    const std::int64_t bx = std::int64_t{w.x} - v.x;
    const std::int64_t by = std::int64_t{w.y} - v.y;
    const __int128 cross = static_cast<__int128>(ax) * by - static_cast<__int128>(ay) * bx;
    const __int128 dot = static_cast<__int128>(ax) * bx + static_cast<__int128>(ay) * by;
    const auto abs_cross = static_cast<double>(cross < 0 ? -cross : cross);
    return std::atan2(abs_cross, static_cast<double>(dot));
}

std::vector<int> convex_hull(std::span<const Point> points) {
    if (points.size() < 3) {
        throw DegenerateInstance("convex hull needs at least 3 points");
    }
    std::vector<Point> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end(), [](const Point& a, const Point& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });

    // Andrew's monotone chain; lower chain then upper chain gives CCW order.
    std::vector<Point> hull(2 * sorted.size());
    std::size_t count = 0;
    for (const Point& p : sorted) {
        while (count >= 2 && orient(hull[count - 2], hull[count - 1], p) <= 0) --count;
        hull[count++] = p;
    }
    const std::size_t lower = count + 1;
    for (auto it = sorted.rbegin() + 1; it != sorted.rend(); ++it) {
        while (count >= lower && orient(hull[count - 2], hull[count - 1], *it) <= 0) --count;
        hull[count++] = *it;
    }
    --count;  // last point repeats the first
    if (count < 3) {
        throw DegenerateInstance("all points are collinear");
    }

    std::vector<int> labels;
    labels.reserve(count);
    for (std::size_t i = 0; i < count; ++i) labels.push_back(hull[i].id);
    return labels;
}

double one_minus_cos(double angle) {
    // 1 - cos cancels to zero for angles below ~1e-8; the half-angle form
    // keeps full relative precision.
    const double s = std::sin(0.5 * angle);
    return 2.0 * s * s;
}

double angle_factor(double epsilon) {
    return std::cos(epsilon) / one_minus_cos(epsilon);
}

double gamma_of(double d_min, double d_max, double epsilon) {
    return (d_max / d_min - 1.0) * angle_factor(epsilon);
}

double min_uncross_gain_of(double d_min, double epsilon) {
    return 2.0 * d_min * one_minus_cos(epsilon) / std::cos(epsilon);
}

InstanceMetrics instance_metrics(std::span<const Point> points) {
    const std::size_t n = points.size();
    if (n < 3) throw TooSmall(n);

    InstanceMetrics m;
    m.d_min = std::numeric_limits<double>::infinity();
    m.d_max = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = distance(points[i], points[j]);
            m.d_min = std::min(m.d_min, d);
            m.d_max = std::max(m.d_max, d);
        }
    }

    // The angle at v and its supplement are both covered because every
    // ordered triple is visited; the smallest angle is always < pi/2.
    double eps = std::numbers::pi;
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t u = 0; u < n; ++u) {
            if (u == v) continue;
            for (std::size_t w = u + 1; w < n; ++w) {
                if (w == v) continue;
                if (orient(points[u], points[v], points[w]) == 0) {
                    throw CollinearTriple(points[u].id, points[v].id, points[w].id);
                }
                eps = std::min(eps, angle_at(points[u], points[v], points[w]));
            }
        }
    }
    m.epsilon = eps;
    m.gamma = gamma_of(m.d_min, m.d_max, eps);
    m.min_uncross_gain = min_uncross_gain_of(m.d_min, eps);
    return m;
}

double grid_angle_lower_bound(int m) {
    if (m < 3) throw std::domain_error("grid_angle_lower_bound: m must be >= 3");
    const double side = static_cast<double>(m - 2);
    return std::atan(1.0 / (2.0 * side * side));
}

}  // namespace eutsp
