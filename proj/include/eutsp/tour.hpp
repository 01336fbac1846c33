#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "eutsp/instance.hpp"

namespace eutsp {

/// Segment reversal of positions i..j, 1 <= i < j <= n.
struct Inversion {
    int i = 0;
    int j = 0;
    friend bool operator==(const Inversion&, const Inversion&) = default;
};

/// Moves the element at position `from` to position `to`, shifting the span
/// between. Positions are 1-based.
struct Jump {
    int from = 0;
    int to = 0;
    friend bool operator==(const Jump&, const Jump&) = default;
};

/// Edge p joins the points at positions p and p + 1 (position n + 1 is 1).
struct CrossingPair {
    int first = 0;
    int second = 0;
    friend bool operator==(const CrossingPair&, const CrossingPair&) = default;
};

/// A permutation of the labels 1..n read as the Hamiltonian cycle
/// x_1 -> x_2 -> ... -> x_n -> x_1. Positions are 1-based.
class Tour {
public:
    Tour() = default;
    /// Throws std::invalid_argument unless `labels` is a permutation of 1..n.
    explicit Tour(std::vector<int> labels);

    static Tour identity(std::size_t n);

    std::size_t size() const noexcept { return labels_.size(); }
    std::span<const int> labels() const noexcept { return labels_; }

    /// Label at 1-based position `pos`; positions wrap modulo n.
    int at(int pos) const noexcept {
        const int n = static_cast<int>(labels_.size());
        return labels_[static_cast<std::size_t>(((pos - 1) % n + n) % n)];
    }

    /// Unchecked mutable access for the in-place move routines.
    std::vector<int>& mutable_labels() noexcept { return labels_; }

    friend bool operator==(const Tour&, const Tour&) = default;

private:
    std::vector<int> labels_;
};

/// Total Euclidean length of the cycle.
///
/// Edges are summed in canonical cycle order (from label 1 towards its
/// smaller neighbour), so every rotation and reflection of a tour has the same
/// length to the last bit.
double tour_length(const Instance& instance, const Tour& tour);

/// Validates an inversion against tour size n; throws std::invalid_argument.
void check_inversion(std::size_t n, Inversion inv);
void check_jump(std::size_t n, Jump jmp);

Tour apply_inversion(Tour tour, Inversion inv);
Tour apply_jump(Tour tour, Jump jmp);

// In-place forms without argument checks.
void invert_in_place(std::span<int> labels, Inversion inv) noexcept;
void jump_in_place(std::span<int> labels, Jump jmp) noexcept;

/// True for (1, n), (2, n) and (1, n - 1): the cycle is left unchanged.
inline bool is_cycle_preserving(std::size_t n, Inversion inv) noexcept {
    const int last = static_cast<int>(n);
    return (inv.i == 1 && inv.j == last) || (inv.i == 2 && inv.j == last) ||
           (inv.i == 1 && inv.j == last - 1);
}

/// Change in tour length caused by `inv`, from the two removed and two added
/// edges. Exactly zero for the cycle-preserving inversions.
double inversion_delta(const Instance& instance, const Tour& tour, Inversion inv);

/// One or two inversions whose composition equals the jump.
/// Throws std::invalid_argument when from == to.
std::vector<Inversion> jump_as_inversions(Jump jmp);

/// All pairs of non-adjacent edges that properly cross, sorted.
std::vector<CrossingPair> crossing_pairs(const Instance& instance, const Tour& tour);
bool is_intersection_free(const Instance& instance, const Tour& tour);

/// Inversion that removes the lexicographically first crossing pair, or
/// nullopt when the tour is intersection-free.
std::optional<Inversion> find_uncrossing_inversion(const Instance& instance, const Tour& tour);

/// True iff the hull labels appear in the tour in hull order, up to rotation
/// and reflection.
bool respects_hull_order(const Instance& instance, const Tour& tour);

/// True iff no inversion gives a strictly shorter tour.
bool is_two_opt_local_optimum(const Instance& instance, const Tour& tour);

/// First inversion (row-major over i < j) with delta < 0, skipping the
/// cycle-preserving ones.
std::optional<Inversion> first_improving_inversion(const Instance& instance, const Tour& tour);

/// First non-trivial inversion with delta <= 0; used to decide whether RLS can
/// still move the cycle at all.
std::optional<Inversion> first_non_worsening_inversion(const Instance& instance,
                                                       const Tour& tour);

/// Lexicographically smallest rotation/reflection; starts with label 1.
Tour canonical_form(const Tour& tour);

/// Tour file: one line of n space-separated labels.
void write_tour(const Tour& tour, std::ostream& out);
void write_tour(const Tour& tour, const std::filesystem::path& path);
Tour read_tour(std::istream& in);
Tour read_tour(const std::filesystem::path& path);

}  // namespace eutsp
