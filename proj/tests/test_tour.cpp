#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "eutsp/errors.hpp"
#include "eutsp/geom.hpp"
#include "eutsp/instance.hpp"
#include "eutsp/oracle.hpp"
#include "eutsp/search.hpp"
#include "eutsp/tour.hpp"
#include "helpers.hpp"

using namespace eutsp;
using eutsp::testing::make_instance;
using eutsp::testing::tour_of;
using eutsp::testing::unit_square;

namespace {

std::vector<CrossingPair> brute_crossings(const Instance& inst, const Tour& t) {
    const int n = static_cast<int>(t.size());
    std::vector<CrossingPair> out;
    for (int e = 1; e <= n; ++e) {
        for (int f = e + 1; f <= n; ++f) {
            const int a = t.at(e), b = t.at(e + 1), c = t.at(f), d = t.at(f + 1);
            if (a == c || a == d || b == c || b == d) continue;
            if (segments_properly_intersect(inst.point(a), inst.point(b), inst.point(c),
                                            inst.point(d))) {
                out.push_back({e, f});
            }
        }
    }
    return out;
}

double naive_length(const Instance& inst, const Tour& t) {
    double sum = 0.0;
    for (int p = 1; p <= static_cast<int>(t.size()); ++p) sum += inst.distance(t.at(p), t.at(p + 1));
    return sum;
}

}  // namespace

TEST_SUITE("tour") {

TEST_CASE("tour construction validates permutations") {
    CHECK_NOTHROW(tour_of({2, 1, 3}));
    CHECK_THROWS_AS(tour_of({1, 1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(tour_of({0, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(tour_of({1, 2, 4}), std::invalid_argument);
    const Tour t = Tour::identity(5);
    CHECK(t.at(1) == 1);
    CHECK(t.at(6) == 1);
    CHECK(t.at(0) == 5);
}

TEST_CASE("tour length") {
    const Instance sq = unit_square();
    CHECK(tour_length(sq, Tour::identity(4)) == 4.0);
    CHECK(tour_length(sq, tour_of({1, 3, 2, 4})) == doctest::Approx(2 + 2 * std::sqrt(2.0)));
    CHECK_THROWS_AS(tour_length(sq, Tour::identity(5)), std::invalid_argument);
}

TEST_CASE("tour length is bitwise invariant under rotation and reflection") {
    Rng rng(1);
    for (std::uint64_t s = 0; s < 50; ++s) {
        const Instance inst = generate_grid(12, 1000, s);
        const Tour t = random_tour(12, rng);
        const double base = tour_length(inst, t);
        CHECK(base == doctest::Approx(naive_length(inst, t)).epsilon(1e-12));
        std::vector<int> labels(t.labels().begin(), t.labels().end());
        for (int r = 0; r < 12; ++r) {
            std::rotate(labels.begin(), labels.begin() + 1, labels.end());
            CHECK(tour_length(inst, Tour(labels)) == base);
            std::vector<int> rev(labels.rbegin(), labels.rend());
            CHECK(tour_length(inst, Tour(rev)) == base);
        }
    }
}

TEST_CASE("inversion and jump examples") {
    CHECK(apply_inversion(Tour::identity(5), {2, 4}) == tour_of({1, 4, 3, 2, 5}));
    CHECK(apply_jump(Tour::identity(5), {2, 4}) == tour_of({1, 3, 4, 2, 5}));
    CHECK(apply_jump(Tour::identity(5), {4, 2}) == tour_of({1, 4, 2, 3, 5}));
    CHECK(apply_jump(Tour::identity(5), {5, 1}) == tour_of({5, 1, 2, 3, 4}));
    CHECK_THROWS_AS(apply_inversion(Tour::identity(5), {3, 3}), std::invalid_argument);
    CHECK_THROWS_AS(apply_inversion(Tour::identity(5), {4, 2}), std::invalid_argument);
    CHECK_THROWS_AS(apply_inversion(Tour::identity(5), {0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(apply_jump(Tour::identity(5), {2, 6}), std::invalid_argument);
    CHECK_THROWS_AS(apply_jump(Tour::identity(5), {2, 2}), std::invalid_argument);
}

TEST_CASE("jump equals its inversion decomposition") {
    Rng rng(8);
    for (int n = 2; n <= 9; ++n) {
        const Tour t = random_tour(static_cast<std::size_t>(n), rng);
        for (int i = 1; i <= n; ++i) {
            for (int j = 1; j <= n; ++j) {
                if (i == j) continue;
                Tour composed = t;
                const auto invs = jump_as_inversions({i, j});
                CHECK(invs.size() <= 2);
                for (const Inversion& inv : invs) composed = apply_inversion(composed, inv);
                CHECK(composed == apply_jump(t, {i, j}));
            }
        }
    }
}

TEST_CASE("inversion delta matches the length difference") {
    Rng rng(2);
    for (std::uint64_t s = 0; s < 20; ++s) {
        const int n = 4 + static_cast<int>(s % 9);
        const Instance inst = generate_grid(n, 200, s);
        const Tour t = random_tour(static_cast<std::size_t>(n), rng);
        const double base = tour_length(inst, t);
        for (int i = 1; i <= n; ++i) {
            for (int j = i + 1; j <= n; ++j) {
                const Tour y = apply_inversion(t, {i, j});
                const double delta = inversion_delta(inst, t, {i, j});
                CHECK(delta == doctest::Approx(tour_length(inst, y) - base).epsilon(1e-9).scale(base));
                if (is_cycle_preserving(static_cast<std::size_t>(n), {i, j})) {
                    CHECK(delta == 0.0);
                    CHECK(canonical_form(y) == canonical_form(t));
                } else if (n >= 5) {
                    CHECK(canonical_form(y) != canonical_form(t));
                }
            }
        }
    }
}

TEST_CASE("crossing detection agrees with the pairwise predicate") {
    const Instance sq = unit_square();
    CHECK(crossing_pairs(sq, tour_of({1, 3, 2, 4})) == std::vector<CrossingPair>{{1, 3}});
    CHECK(is_intersection_free(sq, Tour::identity(4)));
    Rng rng(4);
    for (std::uint64_t s = 0; s < 40; ++s) {
        const int n = 4 + static_cast<int>(s % 20);
        const Instance inst = generate_grid(n, 300, s);
        for (int rep = 0; rep < 5; ++rep) {
            const Tour t = random_tour(static_cast<std::size_t>(n), rng);
            const auto expected = brute_crossings(inst, t);
            CHECK(crossing_pairs(inst, t) == expected);
            CHECK(is_intersection_free(inst, t) == expected.empty());
        }
    }
}

TEST_CASE("uncrossing inversion removes the first crossing and shortens the tour") {
    const Instance sq = unit_square();
    const auto inv = find_uncrossing_inversion(sq, tour_of({1, 3, 2, 4}));
    REQUIRE(inv);
    CHECK(tour_length(sq, apply_inversion(tour_of({1, 3, 2, 4}), *inv)) == 4.0);
    CHECK_FALSE(find_uncrossing_inversion(sq, Tour::identity(4)));

    Rng rng(6);
    for (std::uint64_t s = 0; s < 30; ++s) {
        const Instance inst = generate_grid(10, 128, s);
        for (int rep = 0; rep < 20; ++rep) {
            const Tour t = random_tour(10, rng);
            const auto pairs = crossing_pairs(inst, t);
            const auto u = find_uncrossing_inversion(inst, t);
            REQUIRE(u.has_value() == !pairs.empty());
            if (!u) continue;
            const Tour y = apply_inversion(t, *u);
            const auto after = crossing_pairs(inst, y);
            // The two crossing edges are replaced by the non-crossing pair.
            const int a = t.at(pairs[0].first), b = t.at(pairs[0].first + 1);
            const int c = t.at(pairs[0].second), d = t.at(pairs[0].second + 1);
            const auto has_edge = [&](int p, int q) {
                for (int k = 1; k <= 10; ++k) {
                    if ((y.at(k) == p && y.at(k + 1) == q) || (y.at(k) == q && y.at(k + 1) == p)) return true;
                }
                return false;
            };
            CHECK(has_edge(a, c));
            CHECK(has_edge(b, d));
            CHECK(tour_length(inst, y) < tour_length(inst, t));
        }
    }
}

TEST_CASE("hull order") {
    const Instance centre = make_instance({{0, 0}, {4, 0}, {4, 4}, {0, 4}, {2, 1}});
    CHECK(respects_hull_order(centre, tour_of({1, 2, 5, 3, 4})));
    CHECK(respects_hull_order(centre, tour_of({4, 3, 5, 2, 1})));
    CHECK(respects_hull_order(centre, tour_of({5, 3, 4, 1, 2})));
    CHECK_FALSE(respects_hull_order(centre, tour_of({1, 3, 2, 4, 5})));
}

TEST_CASE("local optimum predicates") {
    const Instance sq = unit_square();
    CHECK(is_two_opt_local_optimum(sq, Tour::identity(4)));
    CHECK_FALSE(is_two_opt_local_optimum(sq, tour_of({1, 3, 2, 4})));
    Rng rng(12);
    for (std::uint64_t s = 0; s < 30; ++s) {
        const int n = 5 + static_cast<int>(s % 8);
        const Instance inst = generate_grid(n, 100, s);
        const Tour t = random_tour(static_cast<std::size_t>(n), rng);
        std::optional<Inversion> first;
        std::optional<Inversion> first_le;
        for (int i = 1; i <= n && !first; ++i) {
            for (int j = i + 1; j <= n; ++j) {
                if (is_cycle_preserving(static_cast<std::size_t>(n), {i, j})) continue;
                if (inversion_delta(inst, t, {i, j}) < 0) { first = Inversion{i, j}; break; }
            }
        }
        for (int i = 1; i <= n && !first_le; ++i) {
            for (int j = i + 1; j <= n; ++j) {
                if (is_cycle_preserving(static_cast<std::size_t>(n), {i, j})) continue;
                if (inversion_delta(inst, t, {i, j}) <= 0) { first_le = Inversion{i, j}; break; }
            }
        }
        CHECK(first_improving_inversion(inst, t) == first);
        CHECK(first_non_worsening_inversion(inst, t) == first_le);
        CHECK(is_two_opt_local_optimum(inst, t) == !first.has_value());
    }
}

TEST_CASE("canonical form") {
    CHECK(canonical_form(tour_of({3, 4, 1, 2})) == Tour::identity(4));
    CHECK(canonical_form(tour_of({2, 1, 4, 3})) == Tour::identity(4));
    Rng rng(9);
    for (int rep = 0; rep < 50; ++rep) {
        const Tour t = random_tour(9, rng);
        const Tour c = canonical_form(t);
        CHECK(c.at(1) == 1);
        CHECK(c.at(2) < c.at(9));
        std::vector<int> labels(t.labels().begin(), t.labels().end());
        for (int r = 0; r < 9; ++r) {
            std::rotate(labels.begin(), labels.begin() + 1, labels.end());
            CHECK(canonical_form(Tour(labels)) == c);
            CHECK(canonical_form(Tour(std::vector<int>(labels.rbegin(), labels.rend()))) == c);
        }
    }
}

TEST_CASE("tour file round trip and errors") {
    std::stringstream buf;
    write_tour(tour_of({3, 1, 2}), buf);
    CHECK(buf.str() == "3 1 2\n");
    CHECK(read_tour(buf) == tour_of({3, 1, 2}));
    std::istringstream dup("1 1 2\n");
    CHECK_THROWS_AS(read_tour(dup), ParseError);
    std::istringstream junk("1 2 x\n");
    CHECK_THROWS_AS(read_tour(junk), ParseError);
    std::istringstream two_lines("1 2 3\n4\n");
    CHECK_THROWS_AS(read_tour(two_lines), ParseError);
}

TEST_CASE("a strictly improving inversion can introduce a crossing") {
    // Counterexample to "improving neighbours of intersection-free tours are
    // intersection-free": the new edge 1-2 crosses the kept edge 3-4.
    const Instance inst = make_instance({{2, 19}, {43, 24}, {17, 32}, {54, 9}, {44, 60}}, 64);
    const Tour x = tour_of({1, 4, 3, 2, 5});
    const Tour y = apply_inversion(x, {1, 3});
    CHECK(is_intersection_free(inst, x));
    CHECK(tour_length(inst, y) < tour_length(inst, x));
    CHECK(tour_length(inst, x) == doctest::Approx(218.4298005926047).epsilon(1e-13));
    CHECK(tour_length(inst, y) == doctest::Approx(212.73379074549723).epsilon(1e-13));
    CHECK_FALSE(is_intersection_free(inst, y));
}

}  // TEST_SUITE
