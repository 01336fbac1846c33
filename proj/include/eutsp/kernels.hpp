#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

// Data-parallel inner loops of the tour predicates.
//
// All kernels read "closed" tour-ordered coordinate arrays: entry p holds the
// coordinates of the point at tour position p, with position 0 aliasing
// position n and position n + 1 aliasing position 1. Edge p joins entries p
// and p + 1. Coordinates are integers stored as doubles.
//
// Every vector variant must return exactly what the scalar reference returns;
// tests/test_kernels.cpp checks this on random inputs.

namespace eutsp::kernels {

enum class Compare { less, less_equal };

struct KernelSet {
    std::string_view name;

    /// out[p] = length of edge p for p in [0, count).
    void (*edge_lengths)(const double* xs, const double* ys, std::size_t count, double* out);

    /// First j in [j_begin, j_end) whose inversion (i, j) changes the tour by
    /// delta = (d(i-1, j) + d(i, j+1)) - (d(i-1, i) + d(j, j+1)) with
    /// delta < 0 (or <= 0); -1 when there is none.
    std::ptrdiff_t (*first_inversion_below)(const double* xs, const double* ys, std::size_t i,
                                            std::size_t j_begin, std::size_t j_end, Compare cmp);

    /// Writes every t in [begin, end) whose edge properly crosses edge `edge`
    /// into `hits` and returns how many there were.
    std::size_t (*crossing_row)(const double* xs, const double* ys, std::size_t edge,
                                std::size_t begin, std::size_t end, std::uint32_t* hits);

    /// True iff some t in [begin, end) has an edge properly crossing `edge`.
    bool (*any_crossing_row)(const double* xs, const double* ys, std::size_t edge,
                             std::size_t begin, std::size_t end);
};

const KernelSet& scalar();

/// AVX2 variant, or nullptr when this build or this CPU lacks it.
const KernelSet* avx2();

/// Variant picked once per process: the EUTSP_KERNELS environment variable
/// ("scalar" or "avx2") wins, otherwise the widest one the CPU supports.
const KernelSet& active();

/// The vector crossing kernels evaluate orientation determinants in binary64,
/// which is exact only while every |coordinate| stays below this limit.
inline constexpr std::int64_t kExactCoordinateLimit = std::int64_t{1} << 25;

/// Kernels for a point set whose largest |coordinate| is `max_abs_coord`:
/// active() when its crossing test is exact there, scalar() otherwise.
const KernelSet& for_coordinates(std::int64_t max_abs_coord);

}  // namespace eutsp::kernels
