#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace eutsp {

/// A labeled grid point. Labels are 1-based.
struct Point {
    int id = 0;
    std::int32_t x = 0;
    std::int32_t y = 0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Derived quantities that drive the runtime bounds of the search heuristics.
struct InstanceMetrics {
    double d_min = 0.0;
    double d_max = 0.0;
    double epsilon = 0.0;           ///< smallest angle over all point triples, radians
    double gamma = 0.0;             ///< (d_max/d_min - 1) * cos(eps) / (1 - cos(eps))
    double min_uncross_gain = 0.0;  ///< 2 * d_min * (1 - cos(eps)) / cos(eps)
};

/// Sign of (q - p) x (r - p): +1 left turn, -1 right turn, 0 collinear. Exact.
inline int orient(const Point& p, const Point& q, const Point& r) noexcept {
    const std::int64_t ux = std::int64_t{q.x} - p.x;
    const std::int64_t uy = std::int64_t{q.y} - p.y;
    const std::int64_t vx = std::int64_t{r.x} - p.x;
    const std::int64_t vy = std::int64_t{r.y} - p.y;
    // Each product fits in 66 bits in the worst case; widen to 128 to stay exact.
    const __int128 cross = static_cast<__int128>(ux) * vy - static_cast<__int128>(uy) * vx;
    return (cross > 0) - (cross < 0);
}

/// True iff the open segments ab and cd cross at a single interior point.
/// Segments that share an endpoint never count.
inline bool segments_properly_intersect(const Point& a, const Point& b, const Point& c,
                                        const Point& d) noexcept {
    const int o1 = orient(a, b, c);
    const int o2 = orient(a, b, d);
    const int o3 = orient(c, d, a);
    const int o4 = orient(c, d, b);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

/// Euclidean length between two coordinate pairs.
///
/// Every length in the library goes through this expression, so the scalar
/// and vector kernels agree to the last bit.
inline double edge_length(double x1, double y1, double x2, double y2) noexcept {
    const double dx = x2 - x1;
    const double dy = y2 - y1;
    return std::sqrt(dx * dx + dy * dy);
}

inline double distance(const Point& a, const Point& b) noexcept {
    return edge_length(a.x, a.y, b.x, b.y);
}

/// Angle at `v` between the rays towards `u` and `w`, in [0, pi].
double angle_at(const Point& u, const Point& v, const Point& w) noexcept;

/// Convex hull labels in counterclockwise order, starting from the
/// lexicographically smallest (x, then y) point. Requires >= 3 points and no
/// collinear triple; throws DegenerateInstance otherwise.
std::vector<int> convex_hull(std::span<const Point> points);

/// O(n^3) scan of distances and angles. Throws CollinearTriple when an angle
/// is zero and TooSmall for fewer than three points.
InstanceMetrics instance_metrics(std::span<const Point> points);

/// 1 - cos(angle), evaluated as 2 sin^2(angle / 2).
double one_minus_cos(double angle);
/// cos(eps) / (1 - cos(eps)), the angle term of gamma.
double angle_factor(double epsilon);
double gamma_of(double d_min, double d_max, double epsilon);
double min_uncross_gain_of(double d_min, double epsilon);

/// arctan(1 / (2 (m - 2)^2)); throws std::domain_error for m < 3.
///
/// For m >= 4 this is exactly the smallest angle realisable on the grid. At
/// m = 3 the grid admits a smaller angle (arctan(1/3)), so the value is not a
/// valid lower bound there.
double grid_angle_lower_bound(int m);

}  // namespace eutsp
