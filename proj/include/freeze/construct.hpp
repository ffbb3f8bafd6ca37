#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "freeze/lattice.hpp"
#include "freeze/maps.hpp"

namespace freeze {

/// An axis-aligned product of integer intervals. Degenerate axes
/// (lo_i == hi_i) are allowed.
class CubeSpec {
public:
    CubeSpec(Point lo, Point hi);

    int dim() const { return static_cast<int>(lo_.size()); }
    const Point& lo() const { return lo_; }
    const Point& hi() const { return hi_; }
    bool axis_degenerate(int d) const { return lo_[d] == hi_[d]; }
    int nondegenerate_axes() const;
    bool contains(const Point& p) const;
    std::int64_t volume() const;
    PointSet lattice_points() const;

    friend bool operator==(const CubeSpec& a, const CubeSpec& b) {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }

private:
    Point lo_, hi_;
};

struct CubeDecomposition {
    std::vector<CubeSpec> cubes;
};

/// The 2^j extremal points of a cube (j = nondegenerate axes).
PointSet corners(const CubeSpec& K);

/// Rosenfeld boundary of the cube's point set taken standalone.
PointSet cube_boundary(const CubeSpec& K);

DigitalImage image_of(const CubeSpec& K, int u);

/// Unions over a decomposition, with no hypothesis checks.
PointSet corner_union(const CubeDecomposition& D);
PointSet boundary_union(const CubeDecomposition& D);

/// True iff every cube's points lie in X and the union covers X.
bool validate_decomposition(const DigitalImage& X, const CubeDecomposition& D);

/// Union of per-cube corner sets; requires a valid decomposition of a
/// c_1-connected image.
PointSet c1_freezing_set(const DigitalImage& X, const CubeDecomposition& D);

/// Union of per-cube standalone boundaries; requires a valid decomposition
/// of a c_n-connected image.
PointSet cn_freezing_set(const DigitalImage& X, const CubeDecomposition& D);

/// One degenerate cube per point of X.
CubeDecomposition trivial_decomposition(const DigitalImage& X);

/// q is a close neighbor of p when N(p) is contained in N*(q), q != p.
bool is_close_neighbor(const DigitalImage& X, const Point& p, const Point& q);

/// First close neighbor of p in canonical order, if any.
std::optional<Point> find_close_neighbor(const DigitalImage& X, const Point& p);

/// Points that belong to every freezing set because they have a close
/// neighbor. Candidate scan is restricted to the 2-ball around each point.
PointSet mandatory_points(const DigitalImage& X);

/// Reference all-pairs scan; validates the restricted candidate scan.
PointSet mandatory_points_all_pairs(const DigitalImage& X);

/// Identity except p -> q; continuous and non-identity whenever q is a
/// close neighbor of p, certifying that p lies in every freezing set.
SelfMap close_neighbor_witness(const DigitalImage& X, const Point& p, const Point& q);

/// Identity on (K, c_n) except x0 moves one step inward along `axis`
/// (1-based); x0 must sit on an extremal face of a nondegenerate axis.
SelfMap boundary_minimality_witness(const CubeSpec& K, const Point& x0, int axis);

} // namespace freeze
