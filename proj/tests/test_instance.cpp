#include <doctest.h>

#include <sstream>

#include "eutsp/errors.hpp"
#include "eutsp/geom.hpp"
#include "eutsp/instance.hpp"
#include "helpers.hpp"

using namespace eutsp;
using eutsp::testing::make_instance;

namespace {

bool strictly_inside_hull(const Instance& inst, const Point& p) {
    const auto hull = inst.hull();
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Point& a = inst.point(hull[i]);
        const Point& b = inst.point(hull[(i + 1) % hull.size()]);
        if (orient(a, b, p) <= 0) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE("instance") {

TEST_CASE("validate accepts and labels points") {
    const Instance sq = make_instance({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK(sq.size() == 4);
    CHECK(sq.inner_count() == 0);
    CHECK(sq.point(3).id == 3);
    CHECK(sq.point(3).x == 1);

    const Instance centre = make_instance({{0, 0}, {4, 0}, {4, 4}, {0, 4}, {2, 1}});
    CHECK(centre.inner_count() == 1);
    CHECK_FALSE(centre.on_hull(5));
}

TEST_CASE("validate errors") {
    try {
        make_instance({{0, 0}, {1, 1}, {2, 2}, {0, 2}});
        FAIL("expected CollinearTriple");
    } catch (const CollinearTriple& e) {
        CHECK(e.a == 1);
        CHECK(e.b == 2);
        CHECK(e.c == 3);
    }
    try {
        make_instance({{0, 0}, {5, 1}, {0, 0}});
        FAIL("expected DuplicatePoint");
    } catch (const DuplicatePoint& e) {
        CHECK(e.first == 1);
        CHECK(e.second == 3);
    }
    CHECK_THROWS_AS(make_instance({{0, 0}, {1, 0}}), TooSmall);
    CHECK_THROWS_AS(make_instance({{0, 0}, {1, 0}, {0, 9}}, 4), std::invalid_argument);
}

TEST_CASE("grid generator") {
    const Instance a = generate_grid(10, 100, 1);
    const Instance b = generate_grid(10, 100, 1);
    CHECK(a == b);
    CHECK(a.grid_size() == 100);
    CHECK_FALSE(a == generate_grid(10, 100, 2));
    for (const Point& p : a.points()) {
        CHECK(p.x >= 0);
        CHECK(p.x < 100);
        CHECK(p.y >= 0);
        CHECK(p.y < 100);
    }
    CHECK_THROWS_AS(generate_grid(10, 3, 1), GenerationExhausted);

    const Instance c = generate_grid(20, 64, 7);
    CHECK(c.metrics().epsilon >= grid_angle_lower_bound(64) * (1 - 1e-12));
}

TEST_CASE("grid instances respect the angle bound") {
    for (int m : {8, 16, 64}) {
        for (std::uint64_t s = 0; s < 60; ++s) {
            const Instance inst = generate_grid(6 + static_cast<int>(s % 5), m, s);
            CHECK(inst.metrics().epsilon >= grid_angle_lower_bound(m) * (1 - 1e-12));
        }
    }
}

TEST_CASE("convex generator") {
    const Instance a = generate_convex(8, 128, 3);
    CHECK(a.inner_count() == 0);
    CHECK(a.size() == 8);
    CHECK(convex_hull(a.points()).size() == 8);
    CHECK(a == generate_convex(8, 128, 3));
    CHECK(generate_convex(3, 32, 0).inner_count() == 0);
    for (int n : {5, 16, 32, 64}) {
        for (std::uint64_t s = 0; s < 5; ++s) {
            CHECK(generate_convex(n, 8 * n * 4, s).inner_count() == 0);
        }
    }
}

TEST_CASE("inner-point generator") {
    const Instance a = generate_with_inner(6, 2, 256, 5);
    CHECK(a.size() == 8);
    CHECK(a.inner_count() == 2);
    CHECK(generate_with_inner(5, 0, 128, 2).inner_count() == 0);
    for (int h = 3; h <= 12; ++h) {
        for (int k = 0; k <= 4; ++k) {
            const Instance inst = generate_with_inner(h, k, 256, static_cast<std::uint64_t>(h * 10 + k));
            CHECK(inst.inner_count() == k);
            CHECK(inst.hull().size() == static_cast<std::size_t>(h));
            CHECK(convex_hull(inst.points()).size() == static_cast<std::size_t>(h));
            for (const Point& p : inst.points()) {
                if (!inst.on_hull(p.id)) CHECK(strictly_inside_hull(inst, p));
            }
        }
    }
}

TEST_CASE("instance file round trip") {
    const Instance sq = make_instance({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    std::stringstream buf;
    write_instance(sq, buf);
    CHECK(buf.str() == "4 0\n0 0\n1 0\n1 1\n0 1\n");
    CHECK(read_instance(buf) == sq);

    const Instance g = generate_with_inner(7, 3, 512, 9);
    std::stringstream buf2;
    write_instance(g, buf2);
    CHECK(read_instance(buf2) == g);
}

TEST_CASE("instance file errors") {
    std::istringstream short_file("3 0\n0 0\n1 0\n");
    CHECK_THROWS_AS(read_instance(short_file), ParseError);
    std::istringstream collinear("3 0\n0 0\n1 1\n2 2\n");
    CHECK_THROWS_AS(read_instance(collinear), CollinearTriple);
    std::istringstream out_of_range("3 4\n0 0\n1 0\n0 4\n");
    try {
        read_instance(out_of_range);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 4);
    }
    std::istringstream malformed("3 0\n0 0\n1 x\n0 1\n");
    CHECK_THROWS_AS(read_instance(malformed), ParseError);
    std::istringstream trailing("3 0\n0 0\n1 0\n0 1\n5 5\n");
    CHECK_THROWS_AS(read_instance(trailing), ParseError);
    std::istringstream double_space("3 0\n0  0\n1 0\n0 1\n");
    CHECK_THROWS_AS(read_instance(double_space), ParseError);
}

}  // TEST_SUITE
