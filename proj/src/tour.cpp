#include "eutsp/tour.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "eutsp/errors.hpp"

namespace eutsp {

namespace {

bool is_permutation_of_1_to_n(std::span<const int> labels) {
    std::vector<char> seen(labels.size() + 1, 0);
    for (int label : labels) {
        if (label < 1 || static_cast<std::size_t>(label) > labels.size() ||
            seen[static_cast<std::size_t>(label)]) {
            return false;
        }
        seen[static_cast<std::size_t>(label)] = 1;
    }
    return true;
}

void check_sizes(const Instance& instance, const Tour& tour) {
    if (tour.size() != instance.size()) {
        throw std::invalid_argument("tour has " + std::to_string(tour.size()) +
                                    " labels but the instance has " +
                                    std::to_string(instance.size()) + " points");
    }
}

// Tour-ordered coordinates with one wrap-around entry at each end; see
// kernels.hpp for the layout.
struct ClosedCoords {
    std::vector<double> xs;
    std::vector<double> ys;

    void fill(const Instance& instance, std::span<const int> labels) {
        const std::size_t n = labels.size();
        xs.resize(n + 2);
        ys.resize(n + 2);
        const auto px = instance.xs();
        const auto py = instance.ys();
        for (std::size_t p = 0; p < n; ++p) {
            const auto idx = static_cast<std::size_t>(labels[p] - 1);
            xs[p + 1] = px[idx];
            ys[p + 1] = py[idx];
        }
        xs[0] = xs[n];
        ys[0] = ys[n];
        xs[n + 1] = xs[1];
        ys[n + 1] = ys[1];
    }
};

ClosedCoords& scratch() {
    thread_local ClosedCoords coords;
    return coords;
}

// Half-open range of edges t that can properly cross edge e (non-adjacent,
// t > e). Empty when begin >= end.
std::pair<std::size_t, std::size_t> crossing_candidates(std::size_t n, std::size_t e) {
    const std::size_t begin = e + 2;
    const std::size_t end = e == 1 ? n : n + 1;
    return {begin, end};
}

// Half-open j range for row i that skips the cycle-preserving inversions.
std::pair<std::size_t, std::size_t> inversion_row(std::size_t n, std::size_t i) {
    if (i == 1) return {2, n - 1};
    if (i == 2) return {3, n};
    return {i + 1, n + 1};
}

std::optional<Inversion> first_inversion(const Instance& instance, const Tour& tour,
                                         kernels::Compare cmp) {
    check_sizes(instance, tour);
    const std::size_t n = tour.size();
    if (n < 4) return std::nullopt;
    ClosedCoords& c = scratch();
    c.fill(instance, tour.labels());
    const auto& k = instance.kernels();
    for (std::size_t i = 1; i < n; ++i) {
        const auto [begin, end] = inversion_row(n, i);
        if (begin >= end) continue;
        const std::ptrdiff_t j = k.first_inversion_below(c.xs.data(), c.ys.data(), i, begin, end, cmp);
        if (j >= 0) return Inversion{static_cast<int>(i), static_cast<int>(j)};
    }
    return std::nullopt;
}

}  // namespace

Tour::Tour(std::vector<int> labels) : labels_(std::move(labels)) {
    if (!is_permutation_of_1_to_n(labels_)) {
        throw std::invalid_argument("tour labels are not a permutation of 1..n");
    }
}

Tour Tour::identity(std::size_t n) {
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i + 1);
    return Tour(std::move(labels));
}

double tour_length(const Instance& instance, const Tour& tour) {
    check_sizes(instance, tour);
    const auto labels = tour.labels();
    const std::size_t n = labels.size();
    const auto start = static_cast<std::size_t>(std::find(labels.begin(), labels.end(), 1) -
                                                labels.begin());
    const bool forward = labels[(start + 1) % n] < labels[(start + n - 1) % n];

    thread_local std::vector<double> xs, ys, lengths;
    xs.resize(n + 1);
    ys.resize(n + 1);
    lengths.resize(n);
    const auto px = instance.xs();
    const auto py = instance.ys();
    for (std::size_t q = 0; q <= n; ++q) {
        const std::size_t pos = forward ? (start + q) % n : (start + n - q % n) % n;
        const auto idx = static_cast<std::size_t>(labels[pos] - 1);
        xs[q] = px[idx];
        ys[q] = py[idx];
    }
    instance.kernels().edge_lengths(xs.data(), ys.data(), n, lengths.data());
    double total = 0.0;
    for (double len : lengths) total += len;
    return total;
}

void check_inversion(std::size_t n, Inversion inv) {
    if (inv.i < 1 || inv.j > static_cast<int>(n) || inv.i >= inv.j) {
        throw std::invalid_argument("inversion (" + std::to_string(inv.i) + ", " +
                                    std::to_string(inv.j) + ") invalid for n = " +
                                    std::to_string(n));
    }
}

void check_jump(std::size_t n, Jump jmp) {
    const int last = static_cast<int>(n);
    if (jmp.from < 1 || jmp.to < 1 || jmp.from > last || jmp.to > last || jmp.from == jmp.to) {
        throw std::invalid_argument("jump (" + std::to_string(jmp.from) + ", " +
                                    std::to_string(jmp.to) + ") invalid for n = " +
                                    std::to_string(n));
    }
}

void invert_in_place(std::span<int> labels, Inversion inv) noexcept {
    std::reverse(labels.begin() + (inv.i - 1), labels.begin() + inv.j);
}

void jump_in_place(std::span<int> labels, Jump jmp) noexcept {
    const auto at = [&](int pos) { return labels.begin() + (pos - 1); };
    if (jmp.from < jmp.to) {
        std::rotate(at(jmp.from), at(jmp.from + 1), at(jmp.to + 1));
    } else {
        std::rotate(at(jmp.to), at(jmp.from), at(jmp.from + 1));
    }
}

Tour apply_inversion(Tour tour, Inversion inv) {
    check_inversion(tour.size(), inv);
    invert_in_place(tour.mutable_labels(), inv);
    return tour;
}

Tour apply_jump(Tour tour, Jump jmp) {
    check_jump(tour.size(), jmp);
    jump_in_place(tour.mutable_labels(), jmp);
    return tour;
}

double inversion_delta(const Instance& instance, const Tour& tour, Inversion inv) {
    check_sizes(instance, tour);
    check_inversion(tour.size(), inv);
    if (is_cycle_preserving(tour.size(), inv)) return 0.0;
    const int a = tour.at(inv.i - 1);
    const int b = tour.at(inv.i);
    const int c = tour.at(inv.j);
    const int d = tour.at(inv.j + 1);
    return (instance.distance(a, c) + instance.distance(b, d)) -
           (instance.distance(a, b) + instance.distance(c, d));
}

std::vector<Inversion> jump_as_inversions(Jump jmp) {
    const int i = jmp.from;
    const int j = jmp.to;
    if (i == j) throw std::invalid_argument("jump needs distinct positions");
    if (std::abs(i - j) == 1) return {Inversion{std::min(i, j), std::max(i, j)}};
    if (i < j) return {Inversion{i, j}, Inversion{i, j - 1}};
    return {Inversion{j, i}, Inversion{j + 1, i}};
}

std::vector<CrossingPair> crossing_pairs(const Instance& instance, const Tour& tour) {
    check_sizes(instance, tour);
    const std::size_t n = tour.size();
    std::vector<CrossingPair> pairs;
    if (n < 4) return pairs;
    ClosedCoords& c = scratch();
    c.fill(instance, tour.labels());
    std::vector<std::uint32_t> hits(n);
    const auto& k = instance.kernels();
    for (std::size_t e = 1; e + 2 <= n; ++e) {
        const auto [begin, end] = crossing_candidates(n, e);
        if (begin >= end) continue;
        const std::size_t count = k.crossing_row(c.xs.data(), c.ys.data(), e, begin, end, hits.data());
        for (std::size_t h = 0; h < count; ++h) {
            pairs.push_back(CrossingPair{static_cast<int>(e), static_cast<int>(hits[h])});
        }
    }
    return pairs;
}

bool is_intersection_free(const Instance& instance, const Tour& tour) {
    check_sizes(instance, tour);
    const std::size_t n = tour.size();
    if (n < 4) return true;
    ClosedCoords& c = scratch();
    c.fill(instance, tour.labels());
    const auto& k = instance.kernels();
    for (std::size_t e = 1; e + 2 <= n; ++e) {
        const auto [begin, end] = crossing_candidates(n, e);
        if (begin < end && k.any_crossing_row(c.xs.data(), c.ys.data(), e, begin, end)) {
            return false;
        }
    }
    return true;
}

std::optional<Inversion> find_uncrossing_inversion(const Instance& instance, const Tour& tour) {
    check_sizes(instance, tour);
    const std::size_t n = tour.size();
    if (n < 4) return std::nullopt;
    ClosedCoords& c = scratch();
    c.fill(instance, tour.labels());
    std::vector<std::uint32_t> hits(n);
    const auto& k = instance.kernels();
    for (std::size_t e = 1; e + 2 <= n; ++e) {
        const auto [begin, end] = crossing_candidates(n, e);
        if (begin >= end) continue;
        if (k.crossing_row(c.xs.data(), c.ys.data(), e, begin, end, hits.data()) > 0) {
            // Reversing positions e+1..t swaps edges e and t for the
            // reconnection {x_e, x_t}, {x_{e+1}, x_{t+1}}.
            return Inversion{static_cast<int>(e) + 1, static_cast<int>(hits[0])};
        }
    }
    return std::nullopt;
}

bool respects_hull_order(const Instance& instance, const Tour& tour) {
    check_sizes(instance, tour);
    const auto hull = instance.hull();
    std::vector<int> seen;
    seen.reserve(hull.size());
    for (int label : tour.labels()) {
        if (instance.on_hull(label)) seen.push_back(label);
    }
    const std::size_t h = hull.size();
    const auto start =
        static_cast<std::size_t>(std::find(seen.begin(), seen.end(), hull[0]) - seen.begin());
    bool ccw = true;
    bool cw = true;
    for (std::size_t q = 0; q < h; ++q) {
        ccw = ccw && seen[(start + q) % h] == hull[q];
        cw = cw && seen[(start + h - q) % h] == hull[q];
    }
    return ccw || cw;
}

std::optional<Inversion> first_improving_inversion(const Instance& instance, const Tour& tour) {
    return first_inversion(instance, tour, kernels::Compare::less);
}

std::optional<Inversion> first_non_worsening_inversion(const Instance& instance,
                                                       const Tour& tour) {
    return first_inversion(instance, tour, kernels::Compare::less_equal);
}

bool is_two_opt_local_optimum(const Instance& instance, const Tour& tour) {
    return !first_improving_inversion(instance, tour).has_value();
}

Tour canonical_form(const Tour& tour) {
    const auto labels = tour.labels();
    const std::size_t n = labels.size();
    if (n == 0) return tour;
    const auto start = static_cast<std::size_t>(std::find(labels.begin(), labels.end(), 1) -
                                                labels.begin());
    const bool forward = n < 2 || labels[(start + 1) % n] <= labels[(start + n - 1) % n];
    std::vector<int> out(n);
    for (std::size_t q = 0; q < n; ++q) {
        out[q] = labels[forward ? (start + q) % n : (start + n - q) % n];
    }
    Tour result;
    result.mutable_labels() = std::move(out);
    return result;
}

void write_tour(const Tour& tour, std::ostream& out) {
    const auto labels = tour.labels();
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i > 0) out << ' ';
        out << labels[i];
    }
    out << '\n';
}

void write_tour(const Tour& tour, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    write_tour(tour, out);
}

Tour read_tour(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty tour file", 1);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<int> labels;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p < end) {
        int value = 0;
        const auto [next, ec] = std::from_chars(p, end, value);
        if (ec != std::errc{}) throw ParseError("malformed label", 1);
        labels.push_back(value);
        p = next;
        if (p < end) {
            if (*p != ' ' || p + 1 == end) throw ParseError("labels must be separated by one space", 1);
            ++p;
        }
    }
    while (std::getline(in, line)) {
        if (!line.empty()) throw ParseError("tour file must be a single line", 2);
    }
    if (!is_permutation_of_1_to_n(labels)) {
        throw ParseError("tour labels are not a permutation of 1..n", 1);
    }
    return Tour(std::move(labels));
}

Tour read_tour(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    return read_tour(in);
}

}  // namespace eutsp
