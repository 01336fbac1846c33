#include "eutsp/oracle.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "eutsp/errors.hpp"

namespace eutsp {

std::string_view to_string(OracleMethod method) noexcept {
    switch (method) {
        case OracleMethod::brute: return "brute";
        case OracleMethod::held_karp: return "held_karp";
        case OracleMethod::hull_order: return "hull_order";
    }
    return "?";
}

OracleMethod parse_oracle_method(std::string_view text) {
    if (text == "brute") return OracleMethod::brute;
    if (text == "held_karp") return OracleMethod::held_karp;
    if (text == "hull_order") return OracleMethod::hull_order;
    throw std::invalid_argument("unknown oracle method '" + std::string(text) +
                                "' (expected brute, held_karp or hull_order)");
}

namespace {

// Keeps the shortest canonical tour seen, breaking exact ties towards the
// lexicographically smaller label sequence.
class BestTour {
public:
    void offer(const Instance& instance, const Tour& candidate) {
        Tour canon = canonical_form(candidate);
        const double length = tour_length(instance, canon);
        if (!best_ || length < length_ ||
            (length == length_ && std::ranges::lexicographical_compare(canon.labels(),
                                                                       best_->labels()))) {
            best_ = std::move(canon);
            length_ = length;
        }
    }

    OracleResult result(OracleMethod method) const {
        return OracleResult{length_, *best_, method};
    }

private:
    std::optional<Tour> best_;
    double length_ = std::numeric_limits<double>::infinity();
};

// Calls `visit` on every sequence that starts with hull[0], keeps the hull
// labels in counterclockwise order and places the inner labels anywhere.
void for_each_interleaving(const Instance& instance,
                           const std::function<void(const Tour&)>& visit) {
    const auto hull = instance.hull();
    std::vector<int> inner;
    for (const Point& p : instance.points()) {
        if (!instance.on_hull(p.id)) inner.push_back(p.id);
    }
    const std::size_t n = instance.size();
    Tour tour = Tour::identity(n);
    std::vector<int>& seq = tour.mutable_labels();
    std::vector<char> used(inner.size(), 0);

    std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t filled,
                                                               std::size_t next_hull) {
        if (filled == n) {
            visit(tour);
            return;
        }
        if (next_hull < hull.size()) {
            seq[filled] = hull[next_hull];
            extend(filled + 1, next_hull + 1);
        }
        for (std::size_t q = 0; q < inner.size(); ++q) {
            if (used[q]) continue;
            used[q] = 1;
            seq[filled] = inner[q];
            extend(filled + 1, next_hull);
            used[q] = 0;
        }
    };
    seq[0] = hull[0];
    extend(1, 1);
}

}  // namespace

OracleResult brute_force_optimum(const Instance& instance) {
    const std::size_t n = instance.size();
    if (n > kBruteForceMaxPoints) {
        throw TooLarge("brute force accepts at most " + std::to_string(kBruteForceMaxPoints) +
                       " points, got " + std::to_string(n));
    }
    // Label 1 first and second label < last label: each cycle exactly once,
    // already in canonical form, visited in lexicographic order.
    Tour tour = Tour::identity(n);
    std::vector<int>& labels = tour.mutable_labels();
    std::optional<Tour> best;
    double best_length = std::numeric_limits<double>::infinity();
    do {
        if (labels[1] > labels[n - 1]) continue;
        const double length = tour_length(instance, tour);
        if (length < best_length) {
            best_length = length;
            best = tour;
        }
    } while (std::next_permutation(labels.begin() + 1, labels.end()));
    return OracleResult{best_length, *best, OracleMethod::brute};
}

OracleResult held_karp_optimum(const Instance& instance) {
    const std::size_t n = instance.size();
    if (n > kHeldKarpMaxPoints) {
        throw TooLarge("Held-Karp accepts at most " + std::to_string(kHeldKarpMaxPoints) +
                       " points, got " + std::to_string(n));
    }
    // City 0 is label 1 and anchors the cycle; the subset ranges over the
    // other m = n - 1 cities.
    const std::size_t m = n - 1;
    const std::size_t subsets = std::size_t{1} << m;
    std::vector<double> dist(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            dist[a * n + b] = instance.distance(static_cast<int>(a + 1), static_cast<int>(b + 1));
        }
    }
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> cost(subsets * m, kInf);
    std::vector<std::uint8_t> parent(subsets * m, 0);
    for (std::size_t j = 0; j < m; ++j) cost[(std::size_t{1} << j) * m + j] = dist[j + 1];

    for (std::size_t mask = 1; mask < subsets; ++mask) {
        for (std::size_t j = 0; j < m; ++j) {
            if (!(mask >> j & 1)) continue;
            const double here = cost[mask * m + j];
            if (here == kInf) continue;
            for (std::size_t next = 0; next < m; ++next) {
                if (mask >> next & 1) continue;
                const std::size_t grown = mask | (std::size_t{1} << next);
                const double candidate = here + dist[(j + 1) * n + next + 1];
                if (candidate < cost[grown * m + next]) {
                    cost[grown * m + next] = candidate;
                    parent[grown * m + next] = static_cast<std::uint8_t>(j);
                }
            }
        }
    }

    const std::size_t full = subsets - 1;
    std::size_t last = 0;
    double best = kInf;
    for (std::size_t j = 0; j < m; ++j) {
        const double closed = cost[full * m + j] + dist[(j + 1) * n];
        if (closed < best) {
            best = closed;
            last = j;
        }
    }

    std::vector<int> labels(n);
    labels[0] = 1;
    std::size_t mask = full;
    std::size_t city = last;
    for (std::size_t pos = n - 1; pos >= 1; --pos) {
        labels[pos] = static_cast<int>(city + 2);
        const std::size_t prev = parent[mask * m + city];
        mask &= ~(std::size_t{1} << city);
        city = prev;
    }

    Tour canon = canonical_form(Tour(std::move(labels)));
    const double value = tour_length(instance, canon);
    return OracleResult{value, std::move(canon), OracleMethod::held_karp};
}

std::uint64_t interleaving_bound(std::size_t n, std::size_t k) {
    // binom(n, k) * k! = n * (n - 1) * ... * (n - k + 1)
    std::uint64_t product = 1;
    for (std::size_t f = n - k + 1; f <= n; ++f) {
        if (product > std::numeric_limits<std::uint64_t>::max() / f) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        product *= f;
    }
    return product;
}

std::vector<Tour> enumerate_intersection_free(const Instance& instance) {
    const std::size_t n = instance.size();
    const auto k = static_cast<std::size_t>(instance.inner_count());
    const std::uint64_t bound = interleaving_bound(n, k);
    if (n > 10 && bound > kInterleavingBudget) {
        throw TooLarge("enumeration bound binom(n,k)*k! = " + std::to_string(bound) +
                       " exceeds the budget");
    }
    std::vector<Tour> tours;
    for_each_interleaving(instance, [&](const Tour& candidate) {
        if (is_intersection_free(instance, candidate)) tours.push_back(canonical_form(candidate));
    });
    std::ranges::sort(tours, [](const Tour& a, const Tour& b) {
        return std::ranges::lexicographical_compare(a.labels(), b.labels());
    });
    tours.erase(std::unique(tours.begin(), tours.end()), tours.end());
    return tours;
}

OracleResult hull_order_optimum(const Instance& instance) {
    const std::size_t n = instance.size();
    const auto k = static_cast<std::size_t>(instance.inner_count());
    const std::uint64_t bound = interleaving_bound(n, k);
    if (n > kBruteForceMaxPoints && bound > kInterleavingBudget) {
        throw TooLarge("hull-order oracle bound binom(n,k)*k! = " + std::to_string(bound) +
                       " exceeds the budget");
    }
    BestTour best;
    for_each_interleaving(instance, [&](const Tour& candidate) { best.offer(instance, candidate); });
    return best.result(OracleMethod::hull_order);
}

std::optional<OracleResult> strongest_oracle(const Instance& instance) {
    const std::size_t n = instance.size();
    const auto k = static_cast<std::size_t>(instance.inner_count());
    if (interleaving_bound(n, k) <= kInterleavingBudget) return hull_order_optimum(instance);
    if (n <= kHeldKarpMaxPoints) return held_karp_optimum(instance);
    return std::nullopt;
}

std::vector<Jump> jumps_to_optimum(const Instance& instance, const Tour& tour,
                                   const Tour& optimum) {
    const std::size_t n = tour.size();
    if (optimum.size() != n || instance.size() != n) {
        throw std::invalid_argument("tour sizes do not match");
    }
    const auto hull_subsequence = [&](std::span<const int> labels) {
        std::vector<int> out;
        for (int label : labels) {
            if (instance.on_hull(label)) out.push_back(label);
        }
        return out;
    };

    // Pick the rotation/reflection of the optimum whose hull labels appear in
    // the same linear order as in `tour`.
    const std::vector<int> wanted = hull_subsequence(tour.labels());
    std::vector<int> target;
    const auto opt = optimum.labels();
    for (int dir = 0; dir < 2 && target.empty(); ++dir) {
        for (std::size_t shift = 0; shift < n; ++shift) {
            std::vector<int> candidate(n);
            for (std::size_t q = 0; q < n; ++q) {
                candidate[q] = dir == 0 ? opt[(shift + q) % n] : opt[(shift + n - q) % n];
            }
            if (hull_subsequence(candidate) == wanted) {
                target = std::move(candidate);
                break;
            }
        }
    }
    if (target.empty()) {
        throw std::invalid_argument("tour and optimum disagree on the hull order");
    }

    // Insert each inner point right after its target predecessor, in target
    // order. Afterwards the hull points and every processed inner point sit in
    // target order with no foreign label between neighbours, so the final
    // sequence equals the target.
    std::vector<int> work(tour.labels().begin(), tour.labels().end());
    const auto position_of = [&](int label) {
        return static_cast<int>(std::find(work.begin(), work.end(), label) - work.begin()) + 1;
    };
    std::vector<Jump> jumps;
    for (std::size_t t = 0; t < n; ++t) {
        const int label = target[t];
        if (instance.on_hull(label)) continue;
        const int from = position_of(label);
        int to = 1;
        if (t > 0) {
            const int pred = position_of(target[t - 1]);
            to = from > pred ? pred + 1 : pred;
        }
        if (from == to) continue;
        jump_in_place(work, Jump{from, to});
        jumps.push_back(Jump{from, to});
    }
    return jumps;
}

}  // namespace eutsp
