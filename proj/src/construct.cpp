#include "freeze/construct.hpp"

#include <algorithm>
#include <stdexcept>

namespace freeze {

CubeSpec::CubeSpec(Point lo, Point hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.empty() || lo_.size() != hi_.size())
        throw std::invalid_argument("CubeSpec: lo and hi must be nonempty and of equal dimension");
    if (static_cast<int>(lo_.size()) > kMaxDimension)
        throw std::invalid_argument("CubeSpec: dimension exceeds the supported maximum of " +
                                    std::to_string(kMaxDimension));
    for (std::size_t d = 0; d < lo_.size(); ++d)
        if (lo_[d] > hi_[d])
            throw std::invalid_argument("CubeSpec: lo exceeds hi on axis " + std::to_string(d + 1));
}

int CubeSpec::nondegenerate_axes() const {
    int j = 0;
    for (int d = 0; d < dim(); ++d)
        if (!axis_degenerate(d)) ++j;
    return j;
}

bool CubeSpec::contains(const Point& p) const {
    if (static_cast<int>(p.size()) != dim()) return false;
    for (int d = 0; d < dim(); ++d)
        if (p[d] < lo_[d] || p[d] > hi_[d]) return false;
    return true;
}

std::int64_t CubeSpec::volume() const {
    std::int64_t v = 1;
    for (int d = 0; d < dim(); ++d) v *= static_cast<std::int64_t>(hi_[d]) - lo_[d] + 1;
    return v;
}

PointSet CubeSpec::lattice_points() const {
    PointSet out;
    out.reserve(static_cast<std::size_t>(volume()));
    Point p = lo_;
    while (true) {
        out.push_back(p);
        int d = dim() - 1;
        while (d >= 0 && p[d] == hi_[d]) {
            p[d] = lo_[d];
            --d;
        }
        if (d < 0) break;
        ++p[d];
    }
    return out; // odometer order is lexicographic
}

PointSet corners(const CubeSpec& K) {
    PointSet out;
    Point p = K.lo();
    while (true) {
        out.push_back(p);
        int d = K.dim() - 1;
        while (d >= 0 && p[d] == K.hi()[d]) {
            p[d] = K.lo()[d];
            --d;
        }
        if (d < 0) break;
        p[d] = K.hi()[d];
    }
    return canonical_point_set(std::move(out));
}

PointSet cube_boundary(const CubeSpec& K) {
    // equivalent to boundary(image_of(K, 1)) but without graph construction
    PointSet out;
    for (const auto& p : K.lattice_points()) {
        for (int d = 0; d < K.dim(); ++d) {
            if (p[d] == K.lo()[d] || p[d] == K.hi()[d]) {
                out.push_back(p);
                break;
            }
        }
    }
    return out;
}

DigitalImage image_of(const CubeSpec& K, int u) { return DigitalImage(K.lattice_points(), u); }

PointSet corner_union(const CubeDecomposition& D) {
    PointSet out;
    for (const auto& K : D.cubes) out = set_union(out, corners(K));
    return out;
}

PointSet boundary_union(const CubeDecomposition& D) {
    PointSet out;
    for (const auto& K : D.cubes) out = set_union(out, cube_boundary(K));
    return out;
}

namespace {

void check_decomposition_shape(const DigitalImage& X, const CubeDecomposition& D) {
    if (D.cubes.empty()) throw std::invalid_argument("decomposition has no cubes");
    for (const auto& K : D.cubes)
        if (K.dim() != X.dim())
            throw std::invalid_argument("decomposition cube dimension " + std::to_string(K.dim()) +
                                        " does not match image dimension " + std::to_string(X.dim()));
}

} // namespace

bool validate_decomposition(const DigitalImage& X, const CubeDecomposition& D) {
    if (D.cubes.empty()) return false;
    for (const auto& K : D.cubes)
        if (K.dim() != X.dim()) return false;
    std::vector<char> covered(X.size(), 0);
    for (const auto& K : D.cubes) {
        for (const auto& p : K.lattice_points()) {
            auto idx = X.index_of(p);
            if (!idx) return false; // cube leaves X
            covered[*idx] = 1;
        }
    }
    return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

PointSet c1_freezing_set(const DigitalImage& X, const CubeDecomposition& D) {
    check_decomposition_shape(X, D);
    if (!validate_decomposition(X, D))
        throw std::invalid_argument("c1_freezing_set: cubes do not decompose the image");
    if (!is_connected(X.with_adjacency(1)))
        throw std::invalid_argument("c1_freezing_set: image is not c_1-connected");
    return corner_union(D);
}

PointSet cn_freezing_set(const DigitalImage& X, const CubeDecomposition& D) {
    check_decomposition_shape(X, D);
    if (!validate_decomposition(X, D))
        throw std::invalid_argument("cn_freezing_set: cubes do not decompose the image");
    if (!is_connected(X.with_adjacency(X.dim())))
        throw std::invalid_argument("cn_freezing_set: image is not c_n-connected");
    return boundary_union(D);
}

CubeDecomposition trivial_decomposition(const DigitalImage& X) {
    CubeDecomposition D;
    D.cubes.reserve(X.points().size());
    for (const auto& p : X.points()) D.cubes.emplace_back(p, p);
    return D;
}

bool is_close_neighbor(const DigitalImage& X, const Point& p, const Point& q) {
    auto pi = X.index_of(p);
    auto qi = X.index_of(q);
    if (!pi || !qi)
        throw std::invalid_argument("is_close_neighbor: point outside the image");
    if (*pi == *qi) return false;
    const auto& star_q = X.closed_adjacency_row(*qi);
    for (int y : X.neighbors_of(*pi))
        if (!star_q.test(y)) return false;
    return true;
}

std::optional<Point> find_close_neighbor(const DigitalImage& X, const Point& p) {
    auto pi = X.index_of(p);
    if (!pi)
        throw std::invalid_argument("find_close_neighbor: point " + point_to_string(p) +
                                    " is not in the image");
    const auto& nbrs = X.neighbors_of(*pi);
    if (nbrs.empty()) {
        // isolated point: the containment is vacuous, any other point works
        for (int q = 0; q < X.size(); ++q)
            if (q != *pi) return X.point_at(q);
        return std::nullopt;
    }
    // N(p) inside N*(q) forces q into the closed 1-ball of some neighbor of p
    detail::Bitset candidates(X.size());
    for (int y : nbrs) {
        const auto& row = X.closed_adjacency_row(y);
        for (int q = row.find_first(); q >= 0; q = row.find_next(q)) candidates.set(q);
    }
    candidates.reset(*pi);
    for (int q = candidates.find_first(); q >= 0; q = candidates.find_next(q)) {
        const auto& star_q = X.closed_adjacency_row(q);
        bool ok = true;
        for (int y : nbrs) {
            if (!star_q.test(y)) {
                ok = false;
                break;
            }
        }
        if (ok) return X.point_at(q);
    }
    return std::nullopt;
}

PointSet mandatory_points(const DigitalImage& X) {
    PointSet out;
    for (const auto& p : X.points())
        if (find_close_neighbor(X, p)) out.push_back(p);
    return out;
}

PointSet mandatory_points_all_pairs(const DigitalImage& X) {
    PointSet out;
    for (int pi = 0; pi < X.size(); ++pi) {
        for (int qi = 0; qi < X.size(); ++qi) {
            if (qi == pi) continue;
            const auto& star_q = X.closed_adjacency_row(qi);
            bool contained = true;
            for (int y : X.neighbors_of(pi)) {
                if (!star_q.test(y)) {
                    contained = false;
                    break;
                }
            }
            if (contained) {
                out.push_back(X.point_at(pi));
                break;
            }
        }
    }
    return out;
}

SelfMap close_neighbor_witness(const DigitalImage& X, const Point& p, const Point& q) {
    if (!is_close_neighbor(X, p, q))
        throw std::invalid_argument("close_neighbor_witness: " + point_to_string(q) +
                                    " is not a close neighbor of " + point_to_string(p));
    return selfmap_with_moves(X, {{p, q}});
}

SelfMap boundary_minimality_witness(const CubeSpec& K, const Point& x0, int axis) {
    if (!K.contains(x0))
        throw std::invalid_argument("boundary_minimality_witness: " + point_to_string(x0) +
                                    " is not in the cube");
    if (!set_contains(cube_boundary(K), x0))
        throw std::invalid_argument("boundary_minimality_witness: " + point_to_string(x0) +
                                    " is not on the cube boundary");
    if (axis < 1 || axis > K.dim())
        throw std::invalid_argument("boundary_minimality_witness: axis out of range");
    const int d = axis - 1;
    if (K.axis_degenerate(d))
        throw std::invalid_argument("boundary_minimality_witness: cube is degenerate along axis " +
                                    std::to_string(axis) + "; no inward move exists");
    Point moved = x0;
    if (x0[d] == K.lo()[d])
        moved[d] = K.lo()[d] + 1;
    else if (x0[d] == K.hi()[d])
        moved[d] = K.hi()[d] - 1;
    else
        throw std::invalid_argument("boundary_minimality_witness: axis " + std::to_string(axis) +
                                    " is not extremal at " + point_to_string(x0));
    DigitalImage X = image_of(K, K.dim());
    return selfmap_with_moves(X, {{x0, moved}});
}

} // namespace freeze
