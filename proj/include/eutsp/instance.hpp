#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "eutsp/geom.hpp"
#include "eutsp/kernels.hpp"

namespace eutsp {

/// A validated planar point set: distinct points, no three collinear.
///
/// Labels run 1..n in the order the points were given. The hull and the
/// inner-point count are computed on construction; the O(n^3) metrics are
/// computed on first use and shared between copies.
class Instance {
public:
    /// Checks the point set and assigns labels 1..n. Throws TooSmall,
    /// DuplicatePoint or CollinearTriple. `grid_size` is the side m of the
    /// grid the points live on (0 for free-form); coordinates must then lie in
    /// [0, m - 1] or std::invalid_argument is thrown.
    static Instance validate(std::vector<Point> points, int grid_size = 0);

    std::size_t size() const noexcept { return points_.size(); }
    std::span<const Point> points() const noexcept { return points_; }
    const Point& point(int label) const { return points_.at(static_cast<std::size_t>(label - 1)); }
    int grid_size() const noexcept { return grid_size_; }

    /// Hull labels, counterclockwise from the lexicographically smallest point.
    std::span<const int> hull() const noexcept { return hull_; }
    bool on_hull(int label) const { return on_hull_.at(static_cast<std::size_t>(label - 1)) != 0; }
    int inner_count() const noexcept { return static_cast<int>(points_.size() - hull_.size()); }

    const InstanceMetrics& metrics() const;

    double distance(int a, int b) const noexcept {
        return edge_length(xs_[a - 1], ys_[a - 1], xs_[b - 1], ys_[b - 1]);
    }

    /// Coordinates as doubles, indexed by label - 1.
    std::span<const double> xs() const noexcept { return xs_; }
    std::span<const double> ys() const noexcept { return ys_; }

    /// Kernel set whose crossing test is exact for this instance.
    const kernels::KernelSet& kernels() const noexcept { return *kernels_; }

    friend bool operator==(const Instance& a, const Instance& b) {
        return a.grid_size_ == b.grid_size_ && a.points_ == b.points_;
    }

private:
    struct MetricsCache;

    Instance() = default;

    std::vector<Point> points_;
    int grid_size_ = 0;
    std::vector<int> hull_;
    std::vector<char> on_hull_;
    std::vector<double> xs_;
    std::vector<double> ys_;
    const kernels::KernelSet* kernels_ = nullptr;
    std::shared_ptr<MetricsCache> metrics_;
};

/// n distinct points drawn uniformly from the m x m grid, one at a time,
/// redrawing any point that repeats or completes a collinear triple.
/// Throws GenerationExhausted after 10^6 draws.
Instance generate_grid(int n, int m, std::uint64_t seed);

/// n points in convex position near the circle of radius (m - 1) / 2 centred
/// in the grid, at equally spaced angles with +-pi/(4n) jitter. Points that
/// collide, are collinear with two others, or fall off the hull are redrawn.
Instance generate_convex(int n, int m, std::uint64_t seed);

/// h points in convex position as in generate_convex, then k points drawn
/// strictly inside their hull. The result has exactly h hull vertices.
Instance generate_with_inner(int h, int k, int m, std::uint64_t seed);

/// Maximum number of point draws a generator may spend.
inline constexpr std::int64_t kGenerationDrawBudget = 1'000'000;

/// Text format: "n m" header, then n rows "x y".
void write_instance(const Instance& instance, std::ostream& out);
void write_instance(const Instance& instance, const std::filesystem::path& path);
Instance read_instance(std::istream& in);
Instance read_instance(const std::filesystem::path& path);

}  // namespace eutsp
