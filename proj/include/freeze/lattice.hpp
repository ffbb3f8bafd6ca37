#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "freeze/bitset.hpp"

namespace freeze {

using Coord = int;

/// A lattice point in Z^n, stored as its coordinate tuple.
using Point = std::vector<Coord>;

/// A set of points in canonical (lexicographic) order with no duplicates.
using PointSet = std::vector<Point>;

inline constexpr int kMaxDimension = 16;

/// Path counts saturate here instead of overflowing; only count == 1
/// (uniqueness) carries meaning downstream.
inline constexpr std::uint64_t kPathCountCap = std::uint64_t{1} << 62;

PointSet canonical_point_set(PointSet points);
bool set_contains(const PointSet& set, const Point& p);
PointSet set_union(const PointSet& a, const PointSet& b);
PointSet set_minus(const PointSet& a, const Point& p);
bool is_subset(const PointSet& a, const PointSet& b);
std::string point_to_string(const Point& p);
std::string point_set_to_string(const PointSet& pts);

/// c_u adjacency: p != q, at most u coordinates differ, each by exactly 1.
bool adjacent(const Point& p, const Point& q, int u);
bool adjacent_or_equal(const Point& p, const Point& q, int u);

/// A finite digital image (X, c_u): an immutable point set of fixed
/// dimension with its adjacency graph materialized once.
class DigitalImage {
public:
    DigitalImage(PointSet points, int u);

    int dim() const;
    int u() const;
    int size() const;
    const PointSet& points() const;
    const Point& point_at(int index) const;
    std::optional<int> index_of(const Point& p) const;
    bool contains(const Point& p) const;

    /// Neighbor indices of the point at `index`, ascending.
    const std::vector<int>& neighbors_of(int index) const;

    /// N*(index) as a bitset over canonical indices.
    const detail::Bitset& closed_adjacency_row(int index) const;

    /// Same point set under a different adjacency parameter.
    DigitalImage with_adjacency(int u) const;

    /// True when both handles refer to the same underlying image data or
    /// compare equal structurally.
    friend bool same_image(const DigitalImage& a, const DigitalImage& b);

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

PointSet neighbors(const DigitalImage& X, const Point& x);
PointSet closed_neighbors(const DigitalImage& X, const Point& x);

/// Rosenfeld boundary: points of X with a c_1-neighbor in Z^n \ X.
/// Always c_1 against the complement, regardless of X's own u.
PointSet boundary(const DigitalImage& X);

bool is_connected(const DigitalImage& X);

/// p_i(x) with 1-based axis index.
Coord projection(const Point& x, int i);

struct PathResult {
    std::optional<int> distance;          // nullopt = no path
    std::uint64_t shortest_path_count = 0; // saturates at kPathCountCap
    std::optional<std::vector<Point>> unique_path; // present iff count == 1
};

/// BFS distance, shortest-path count and, when unique, the path itself.
PathResult path_structure(const DigitalImage& X, const Point& x, const Point& y);

/// Raw BFS layer data from one source; dist is -1 for unreachable points.
struct BfsResult {
    std::vector<int> dist;
    std::vector<std::uint64_t> path_count;
};
BfsResult bfs_from(const DigitalImage& X, int source);

} // namespace freeze
