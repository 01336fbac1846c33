#pragma once

#include <vector>

#include "eutsp/instance.hpp"
#include "eutsp/tour.hpp"

namespace eutsp::testing {

inline Instance make_instance(std::vector<std::pair<int, int>> coords, int grid = 0) {
    std::vector<Point> points;
    for (auto [x, y] : coords) points.push_back(Point{0, x, y});
    return Instance::validate(std::move(points), grid);
}

inline Instance unit_square() { return make_instance({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

inline Tour tour_of(std::vector<int> labels) { return Tour(std::move(labels)); }

}  // namespace eutsp::testing
