#pragma once

#include <vector>

#include "freeze/construct.hpp"
#include "freeze/lattice.hpp"

namespace freeze::testutil {

inline DigitalImage box(const Point& lo, const Point& hi, int u) {
    return image_of(CubeSpec(lo, hi), u);
}

inline DigitalImage interval(Coord a, Coord b) { return box({a}, {b}, 1); }

// Fixed corpus for the property suites: small images (at most 9 points)
// covering u in {1,2} and dimensions 1..3, connected and not.
inline std::vector<DigitalImage> corpus() {
    std::vector<DigitalImage> out;
    out.push_back(DigitalImage({{0}}, 1));                       // singleton
    out.push_back(interval(0, 1));                               // two-point segment
    out.push_back(interval(0, 2));
    out.push_back(interval(0, 3));
    out.push_back(interval(0, 8));                               // 9-point line
    out.push_back(box({0, 0}, {1, 1}, 1));                       // unit square, c1
    out.push_back(box({0, 0}, {1, 1}, 2));                       // unit square, c2
    out.push_back(box({0, 0}, {2, 2}, 1));                       // 3x3 square, c1
    out.push_back(box({0, 0}, {2, 2}, 2));                       // 3x3 square, c2
    out.push_back(box({0, 0}, {2, 1}, 1));                       // 3x2 rectangle, c1
    out.push_back(box({0, 0}, {2, 1}, 2));                       // 3x2 rectangle, c2
    out.push_back(DigitalImage({{0, 0}, {1, 0}, {2, 0}, {2, 1}, {2, 2}}, 1)); // L-shape
    out.push_back(DigitalImage({{0, 0}, {1, 0}, {2, 0}, {2, 1}, {2, 2}}, 2));
    out.push_back(DigitalImage({{0, 0}, {1, 1}, {2, 2}}, 2));    // diagonal, connected
    out.push_back(DigitalImage({{0, 0}, {1, 1}, {2, 2}}, 1));    // diagonal, disconnected
    out.push_back(DigitalImage({{0, 0}, {2, 2}}, 2));            // two far points
    out.push_back(DigitalImage({{0, 0}, {0, 1}, {1, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 2}}, 1)); // wedge of squares
    out.push_back(box({0, 0, 0}, {1, 1, 1}, 1));                 // unit cube, c1
    out.push_back(box({0, 0, 0}, {1, 1, 1}, 2));                 // unit cube, c2
    out.push_back(box({0, 0, 0}, {1, 1, 0}, 1));                 // flat square in Z^3
    out.push_back(box({0, 0, 0}, {2, 0, 0}, 1));                 // line in Z^3
    out.push_back(DigitalImage({{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}}, 1)); // plus shape
    out.push_back(DigitalImage({{0, 0}, {1, 0}, {2, 0}, {1, 1}}, 2));         // T piece, c2
    out.push_back(DigitalImage({{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}, {2, 2}}, 1)); // ring
    return out;
}

} // namespace freeze::testutil
