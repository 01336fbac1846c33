#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "eutsp/instance.hpp"
#include "eutsp/tour.hpp"

namespace eutsp {

enum class OracleMethod { brute, held_karp, hull_order };

std::string_view to_string(OracleMethod method) noexcept;
/// Accepts "brute", "held_karp" and "hull_order".
OracleMethod parse_oracle_method(std::string_view text);

/// Exact optimum. The value is tour_length of the canonical tour, so results
/// from different oracles compare equal bit for bit.
struct OracleResult {
    double optimum_value = 0.0;
    Tour optimum_tour;
    OracleMethod method = OracleMethod::brute;
};

inline constexpr std::size_t kBruteForceMaxPoints = 11;
inline constexpr std::size_t kHeldKarpMaxPoints = 18;
inline constexpr std::uint64_t kInterleavingBudget = 1'000'000;

/// Scans all (n-1)!/2 cycles. Ties go to the lexicographically smallest
/// canonical tour. Throws TooLarge for n > 11.
OracleResult brute_force_optimum(const Instance& instance);

/// Bitmask dynamic program. Throws TooLarge for n > 18.
OracleResult held_karp_optimum(const Instance& instance);

/// binom(n, k) * k!, saturating at UINT64_MAX.
std::uint64_t interleaving_bound(std::size_t n, std::size_t k);

/// Every intersection-free tour, canonical and sorted. Candidates are the
/// tours that keep the hull labels in hull order with the k inner points
/// inserted anywhere. Throws TooLarge unless n <= 10 or the bound
/// binom(n, k) * k! is at most 10^6.
std::vector<Tour> enumerate_intersection_free(const Instance& instance);

/// Shortest tour among the hull-order interleavings. Throws TooLarge when
/// n > 11 and binom(n, k) * k! exceeds 10^6.
OracleResult hull_order_optimum(const Instance& instance);

/// Runs the cheapest oracle that accepts the instance, or returns nullopt.
std::optional<OracleResult> strongest_oracle(const Instance& instance);

/// A sequence of at most k jumps taking an intersection-free tour to an
/// optimal permutation whose cycle is `optimum`. Hull points never move; each
/// inner point moves at most once. Requires `tour` to respect hull order.
std::vector<Jump> jumps_to_optimum(const Instance& instance, const Tour& tour,
                                   const Tour& optimum);

}  // namespace eutsp
