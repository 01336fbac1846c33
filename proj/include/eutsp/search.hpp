#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "eutsp/instance.hpp"
#include "eutsp/rng.hpp"
#include "eutsp/tour.hpp"

namespace eutsp {

enum class MutationKind { two_opt, mixed };

std::string_view to_string(MutationKind kind) noexcept;
/// Accepts "two_opt" and "mixed"; throws std::invalid_argument otherwise.
MutationKind parse_mutation_kind(std::string_view text);

struct MutationSpec {
    MutationKind kind = MutationKind::two_opt;
    /// The number of elementary moves is 1 + Poisson(poisson_mean).
    static constexpr double poisson_mean = 1.0;
};

/// Source of the random decisions a mutation makes. RandomMoves draws them
/// from an Rng; tests substitute scripted sources.
template <class S>
concept MoveSource = requires(S& source, int n) {
    { source.unit_uniform() } -> std::convertible_to<double>;
    { source.poisson_plus_one() } -> std::convertible_to<int>;
    { source.inversion(n) } -> std::same_as<Inversion>;
    { source.jump(n) } -> std::same_as<Jump>;
};

/// 1 + s with s ~ Poisson(1), by multiplying uniforms until the product
/// drops to e^-1 or below.
inline int poisson_plus_one(Rng& rng) noexcept {
    static const double threshold = std::exp(-MutationSpec::poisson_mean);
    int count = 0;
    double product = 1.0;
    do {
        ++count;
        product *= rng.uniform01();
    } while (product > threshold);
    return count;
}

/// Unordered pair i < j, uniform over the n(n-1)/2 choices.
inline Inversion random_inversion(Rng& rng, int n) noexcept {
    const auto first = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    auto second = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    if (second >= first) ++second;
    return first < second ? Inversion{first + 1, second + 1} : Inversion{second + 1, first + 1};
}

/// Ordered pair i != j, uniform over the n(n-1) choices.
inline Jump random_jump(Rng& rng, int n) noexcept {
    const auto from = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    auto to = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    if (to >= from) ++to;
    return Jump{from + 1, to + 1};
}

class RandomMoves {
public:
    explicit RandomMoves(Rng& rng) noexcept : rng_(&rng) {}
    double unit_uniform() noexcept { return rng_->uniform01(); }
    int poisson_plus_one() noexcept { return eutsp::poisson_plus_one(*rng_); }
    Inversion inversion(int n) noexcept { return random_inversion(*rng_, n); }
    Jump jump(int n) noexcept { return random_jump(*rng_, n); }

private:
    Rng* rng_;
};

/// What a mutation did; filled only when a trace is passed.
struct MutationTrace {
    int moves = 0;                       ///< s + 1
    bool used_jumps = false;             ///< mixed mutation took the jump branch
    std::optional<Inversion> first_inversion;
    std::optional<Jump> first_jump;
};

/// Applies s + 1 uniformly drawn inversions. Needs n >= 2.
template <MoveSource Source>
void two_opt_mutation_in_place(std::span<int> labels, Source& source,
                               MutationTrace* trace = nullptr) {
    const int n = static_cast<int>(labels.size());
    const int moves = source.poisson_plus_one();
    if (trace) *trace = MutationTrace{moves, false, std::nullopt, std::nullopt};
    for (int m = 0; m < moves; ++m) {
        const Inversion inv = source.inversion(n);
        if (trace && m == 0) trace->first_inversion = inv;
        invert_in_place(labels, inv);
    }
}

/// With probability 1/2 applies s + 1 random inversions, otherwise s + 1
/// random jumps. The branch is drawn before s.
template <MoveSource Source>
void mixed_mutation_in_place(std::span<int> labels, Source& source,
                             MutationTrace* trace = nullptr) {
    const int n = static_cast<int>(labels.size());
    const double r = source.unit_uniform();
    const int moves = source.poisson_plus_one();
    const bool inversions = r < 0.5;
    if (trace) *trace = MutationTrace{moves, !inversions, std::nullopt, std::nullopt};
    for (int m = 0; m < moves; ++m) {
        if (inversions) {
            const Inversion inv = source.inversion(n);
            if (trace && m == 0) trace->first_inversion = inv;
            invert_in_place(labels, inv);
        } else {
            const Jump jmp = source.jump(n);
            if (trace && m == 0) trace->first_jump = jmp;
            jump_in_place(labels, jmp);
        }
    }
}

template <MoveSource Source>
Tour two_opt_mutation(Tour tour, Source& source, MutationTrace* trace = nullptr) {
    two_opt_mutation_in_place(tour.mutable_labels(), source, trace);
    return tour;
}

template <MoveSource Source>
Tour mixed_mutation(Tour tour, Source& source, MutationTrace* trace = nullptr) {
    mixed_mutation_in_place(tour.mutable_labels(), source, trace);
    return tour;
}

inline Tour two_opt_mutation(Tour tour, Rng& rng, MutationTrace* trace = nullptr) {
    RandomMoves source(rng);
    return two_opt_mutation(std::move(tour), source, trace);
}

inline Tour mixed_mutation(Tour tour, Rng& rng, MutationTrace* trace = nullptr) {
    RandomMoves source(rng);
    return mixed_mutation(std::move(tour), source, trace);
}

Tour random_tour(std::size_t n, Rng& rng);

// ---------------------------------------------------------------------------
// Runs

enum class SearchState { alpha, beta, optimal };

std::string_view to_string(SearchState state) noexcept;

/// Relative slack allowed when matching a tour length against an optimum.
inline constexpr double kOptimumRelativeSlack = 1e-12;

inline bool matches_optimum(double length, double optimum) noexcept {
    return length <= optimum + kOptimumRelativeSlack * std::abs(optimum);
}

/// optimal when the length matches `optimum`; otherwise alpha if the tour
/// has crossings, beta if not.
SearchState classify_state(const Instance& instance, const Tour& tour,
                           std::optional<double> optimum);

struct FitnessPoint {
    std::int64_t generation = 0;
    double fitness = 0.0;
};

/// Record of one run. Generation t classifies the best-so-far tour held at
/// the start of t; a run that hits the optimum stops before counting it.
struct Trajectory {
    std::int64_t generations = 0;
    bool reached_optimum = false;
    bool reached_local_optimum = false;
    std::int64_t fitness_evals = 0;
    std::int64_t alpha_steps = 0;
    std::int64_t beta_steps = 0;
    /// Generation of the last cycle-changing improvement (RLS, when a local
    /// optimum was certified).
    std::optional<std::int64_t> local_optimum_generation;
    /// Best-so-far fitness, one entry per strict improvement plus the start.
    std::vector<FitnessPoint> best_fitness_series;
    Tour final_tour;
    double final_length = 0.0;
};

struct RlsConfig {
    std::int64_t budget = 1;
    std::uint64_t seed = 0;
    std::optional<double> optimum;
    std::optional<Tour> start;   ///< replaces the random initial permutation
    bool record_series = true;
};

/// Randomized local search over single inversions with <= acceptance.
///
/// Stops at the supplied optimum, at the budget, or when a periodic full
/// neighbourhood scan (every n^2 steps) proves no further accepting move can
/// change the cycle.
Trajectory run_rls(const Instance& instance, const RlsConfig& config);

struct EAConfig {
    int mu = 1;
    int lambda = 1;
    MutationSpec mutation;
    std::int64_t max_generations = 1;
    std::uint64_t seed = 0;
    bool record_series = true;
};

/// (mu + lambda) EA with elitist plus-selection. Ties in fitness prefer
/// offspring over parents, then earlier creation.
Trajectory run_ea(const Instance& instance, const EAConfig& config,
                  std::optional<double> optimum = std::nullopt);

}  // namespace eutsp
