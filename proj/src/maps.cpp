#include "freeze/maps.hpp"

#include <algorithm>
#include <stdexcept>

namespace freeze {

namespace {

void check_assignment(const DigitalImage& src, const DigitalImage& dst, const std::vector<int>& asg,
                      const char* what) {
    if (static_cast<int>(asg.size()) != src.size())
        throw std::invalid_argument(std::string(what) + ": assignment has " + std::to_string(asg.size()) +
                                    " entries for " + std::to_string(src.size()) + " source points");
    for (int v : asg)
        if (v < 0 || v >= dst.size())
            throw std::invalid_argument(std::string(what) + ": assigned index " + std::to_string(v) +
                                        " out of range");
}

std::vector<int> indices_of_set(const DigitalImage& X, const PointSet& pts, const char* what) {
    std::vector<int> out;
    out.reserve(pts.size());
    for (const auto& p : pts) {
        auto idx = X.index_of(p);
        if (!idx)
            throw std::invalid_argument(std::string(what) + ": point " + point_to_string(p) +
                                        " is not in the image");
        out.push_back(*idx);
    }
    return out;
}

} // namespace

ImageMap::ImageMap(DigitalImage src, DigitalImage dst, std::vector<int> asg)
    : source(std::move(src)), target(std::move(dst)), assignment(std::move(asg)) {
    check_assignment(source, target, assignment, "ImageMap");
}

Point ImageMap::apply(const Point& x) const {
    auto idx = source.index_of(x);
    if (!idx)
        throw std::invalid_argument("ImageMap::apply: point " + point_to_string(x) + " is not in the source");
    return target.point_at(assignment[*idx]);
}

SelfMap::SelfMap(DigitalImage img, std::vector<int> asg)
    : image(std::move(img)), assignment(std::move(asg)) {
    check_assignment(image, image, assignment, "SelfMap");
}

Point SelfMap::apply(const Point& x) const {
    auto idx = image.index_of(x);
    if (!idx)
        throw std::invalid_argument("SelfMap::apply: point " + point_to_string(x) + " is not in the image");
    return image.point_at(assignment[*idx]);
}

bool SelfMap::is_identity() const {
    for (int i = 0; i < static_cast<int>(assignment.size()); ++i)
        if (assignment[i] != i) return false;
    return true;
}

SelfMap identity_map(const DigitalImage& X) {
    std::vector<int> asg(X.size());
    for (int i = 0; i < X.size(); ++i) asg[i] = i;
    return SelfMap(X, std::move(asg));
}

ImageMap image_map_from_pairs(const DigitalImage& src, const DigitalImage& dst,
                              const std::vector<std::pair<Point, Point>>& pairs) {
    std::vector<int> asg(src.size(), -1);
    for (const auto& [from, to] : pairs) {
        auto fi = src.index_of(from);
        if (!fi)
            throw std::invalid_argument("image_map_from_pairs: " + point_to_string(from) +
                                        " is not a source point");
        auto ti = dst.index_of(to);
        if (!ti)
            throw std::invalid_argument("image_map_from_pairs: " + point_to_string(to) +
                                        " is not a target point");
        asg[*fi] = *ti;
    }
    for (int i = 0; i < src.size(); ++i)
        if (asg[i] < 0)
            throw std::invalid_argument("image_map_from_pairs: no image given for " +
                                        point_to_string(src.point_at(i)));
    return ImageMap(src, dst, std::move(asg));
}

SelfMap selfmap_from_pairs(const DigitalImage& X, const std::vector<std::pair<Point, Point>>& pairs) {
    ImageMap m = image_map_from_pairs(X, X, pairs);
    return SelfMap(X, std::move(m.assignment));
}

SelfMap selfmap_with_moves(const DigitalImage& X, const std::vector<std::pair<Point, Point>>& moves) {
    SelfMap f = identity_map(X);
    for (const auto& [from, to] : moves) {
        auto fi = X.index_of(from);
        auto ti = X.index_of(to);
        if (!fi || !ti)
            throw std::invalid_argument("selfmap_with_moves: point outside the image");
        f.assignment[*fi] = *ti;
    }
    return f;
}

bool is_continuous(const ImageMap& f) {
    const bool self = same_image(f.source, f.target);
    for (int i = 0; i < f.source.size(); ++i) {
        for (int j : f.source.neighbors_of(i)) {
            if (j < i) continue;
            int a = f.assignment[i], b = f.assignment[j];
            if (a == b) continue;
            if (self) {
                if (!f.target.closed_adjacency_row(a).test(b)) return false;
            } else {
                if (!adjacent(f.target.point_at(a), f.target.point_at(b), f.target.u())) return false;
            }
        }
    }
    return true;
}

bool is_continuous(const SelfMap& f) {
    for (int i = 0; i < f.image.size(); ++i) {
        for (int j : f.image.neighbors_of(i)) {
            if (j < i) continue;
            if (!f.image.closed_adjacency_row(f.assignment[i]).test(f.assignment[j])) return false;
        }
    }
    return true;
}

ImageMap compose(const ImageMap& f, const ImageMap& g) {
    if (!same_image(f.target, g.source))
        throw std::invalid_argument("compose: f.target and g.source differ");
    std::vector<int> asg(f.assignment.size());
    for (std::size_t i = 0; i < asg.size(); ++i) asg[i] = g.assignment[f.assignment[i]];
    return ImageMap(f.source, g.target, std::move(asg));
}

SelfMap compose(const SelfMap& f, const SelfMap& g) {
    if (!same_image(f.image, g.image))
        throw std::invalid_argument("compose: self-maps live on different images");
    std::vector<int> asg(f.assignment.size());
    for (std::size_t i = 0; i < asg.size(); ++i) asg[i] = g.assignment[f.assignment[i]];
    return SelfMap(f.image, std::move(asg));
}

PointSet fixed_points(const SelfMap& f) {
    PointSet out;
    for (int i = 0; i < f.image.size(); ++i)
        if (f.assignment[i] == i) out.push_back(f.image.point_at(i));
    return out;
}

LatticeIso::LatticeIso(std::vector<int> p, std::vector<int> s, std::vector<Coord> t)
    : perm(std::move(p)), signs(std::move(s)), translation(std::move(t)) {
    const int n = dim();
    if (n < 1 || static_cast<int>(signs.size()) != n || static_cast<int>(translation.size()) != n)
        throw std::invalid_argument("LatticeIso: component sizes disagree");
    std::vector<char> seen(n, 0);
    for (int v : perm) {
        if (v < 0 || v >= n || seen[v])
            throw std::invalid_argument("LatticeIso: perm is not a permutation");
        seen[v] = 1;
    }
    for (int s1 : signs)
        if (s1 != 1 && s1 != -1)
            throw std::invalid_argument("LatticeIso: signs must be +1 or -1");
}

LatticeIso LatticeIso::identity(int n) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    return LatticeIso(std::move(perm), std::vector<int>(n, 1), std::vector<Coord>(n, 0));
}

LatticeIso LatticeIso::translate(std::vector<Coord> offset) {
    LatticeIso t = identity(static_cast<int>(offset.size()));
    t.translation = std::move(offset);
    return t;
}

Point LatticeIso::apply(const Point& x) const {
    if (static_cast<int>(x.size()) != dim())
        throw std::invalid_argument("LatticeIso::apply: dimension mismatch");
    Point out(x.size());
    for (int i = 0; i < dim(); ++i) out[i] = signs[i] * x[perm[i]] + translation[i];
    return out;
}

LatticeIso LatticeIso::inverse() const {
    const int n = dim();
    std::vector<int> inv_perm(n), inv_signs(n);
    std::vector<Coord> inv_trans(n);
    std::vector<int> q(n); // q = perm^{-1}
    for (int i = 0; i < n; ++i) q[perm[i]] = i;
    for (int j = 0; j < n; ++j) {
        inv_perm[j] = q[j];
        inv_signs[j] = signs[q[j]];
        inv_trans[j] = -signs[q[j]] * translation[q[j]];
    }
    return LatticeIso(std::move(inv_perm), std::move(inv_signs), std::move(inv_trans));
}

bool LatticeIso::is_identity() const {
    for (int i = 0; i < dim(); ++i)
        if (perm[i] != i || signs[i] != 1 || translation[i] != 0) return false;
    return true;
}

LatticeIso compose(const LatticeIso& outer, const LatticeIso& inner) {
    if (outer.dim() != inner.dim())
        throw std::invalid_argument("compose: isomorphism dimensions differ");
    const int n = outer.dim();
    std::vector<int> perm(n), signs(n);
    std::vector<Coord> trans(n);
    for (int i = 0; i < n; ++i) {
        perm[i] = inner.perm[outer.perm[i]];
        signs[i] = outer.signs[i] * inner.signs[outer.perm[i]];
        trans[i] = outer.signs[i] * inner.translation[outer.perm[i]] + outer.translation[i];
    }
    return LatticeIso(std::move(perm), std::move(signs), std::move(trans));
}

DigitalImage apply_iso(const LatticeIso& T, const DigitalImage& X) {
    PointSet pts;
    pts.reserve(X.points().size());
    for (const auto& p : X.points()) pts.push_back(T.apply(p));
    return DigitalImage(std::move(pts), X.u());
}

PointSet apply_iso_to_set(const LatticeIso& T, const PointSet& A) {
    PointSet out;
    out.reserve(A.size());
    for (const auto& p : A) out.push_back(T.apply(p));
    return canonical_point_set(std::move(out));
}

std::pair<DigitalImage, LatticeIso> normalize_to_origin(const DigitalImage& X) {
    std::vector<Coord> offset(X.dim(), 0);
    for (int d = 0; d < X.dim(); ++d) {
        Coord lo = X.point_at(0)[d];
        for (const auto& p : X.points()) lo = std::min(lo, p[d]);
        offset[d] = -lo;
    }
    LatticeIso T = LatticeIso::translate(std::move(offset));
    if (T.is_identity()) return {X, T};
    return {apply_iso(T, X), T};
}

namespace {

// Backtracking core shared by the self-map and two-image enumerators.
// Variables are source indices in canonical order; values ascend, so
// complete maps appear in lexicographic assignment order.
struct MapEnumerator {
    const DigitalImage& src;
    const DigitalImage& dst;
    const bool self;
    const std::function<bool(std::span<const int>)>& yield;
    std::vector<int> pinned; // -1 = free
    std::vector<int> asg;

    bool compatible(int a, int b) const {
        if (a == b) return true;
        if (self) return dst.closed_adjacency_row(a).test(b);
        return adjacent(dst.point_at(a), dst.point_at(b), dst.u());
    }

    // returns false when the consumer stopped the enumeration
    bool extend(int i) {
        if (i == src.size()) return yield(asg);
        const auto& nbrs = src.neighbors_of(i);
        auto consistent = [&](int v) {
            for (int j : nbrs) {
                if (j >= i) break; // sorted; later vars unassigned
                if (!compatible(asg[j], v)) return false;
            }
            return true;
        };
        if (pinned[i] >= 0) {
            if (!consistent(pinned[i])) return true;
            asg[i] = pinned[i];
            return extend(i + 1);
        }
        for (int v = 0; v < dst.size(); ++v) {
            if (!consistent(v)) continue;
            asg[i] = v;
            if (!extend(i + 1)) return false;
        }
        return true;
    }
};

} // namespace

bool enumerate_continuous_selfmaps_raw(const DigitalImage& X, const PointSet& fix,
                                       const std::function<bool(std::span<const int>)>& yield,
                                       const EnumerationOptions& opts) {
    if (X.size() > opts.max_points)
        throw std::invalid_argument("enumerate_continuous_selfmaps: image has " + std::to_string(X.size()) +
                                    " points, above the enumeration guard of " +
                                    std::to_string(opts.max_points));
    MapEnumerator e{X, X, true, yield, std::vector<int>(X.size(), -1), std::vector<int>(X.size(), -1)};
    for (int i : indices_of_set(X, canonical_point_set(fix), "enumerate_continuous_selfmaps"))
        e.pinned[i] = i;
    return e.extend(0);
}

bool enumerate_continuous_selfmaps(const DigitalImage& X, const PointSet& fix,
                                   const std::function<bool(const SelfMap&)>& yield,
                                   const EnumerationOptions& opts) {
    return enumerate_continuous_selfmaps_raw(
        X, fix,
        [&](std::span<const int> asg) {
            return yield(SelfMap(X, std::vector<int>(asg.begin(), asg.end())));
        },
        opts);
}

std::uint64_t count_continuous_selfmaps(const DigitalImage& X, const PointSet& fix,
                                        const EnumerationOptions& opts) {
    std::uint64_t n = 0;
    enumerate_continuous_selfmaps_raw(
        X, fix,
        [&](std::span<const int>) {
            ++n;
            return true;
        },
        opts);
    return n;
}

bool enumerate_continuous_selfmaps_naive(const DigitalImage& X, const PointSet& fix,
                                         const std::function<bool(const SelfMap&)>& yield,
                                         const EnumerationOptions& opts) {
    if (X.size() > opts.max_points_naive)
        throw std::invalid_argument("enumerate_continuous_selfmaps_naive: image has " +
                                    std::to_string(X.size()) + " points, above the naive guard of " +
                                    std::to_string(opts.max_points_naive));
    std::vector<int> pinned(X.size(), -1);
    for (int i : indices_of_set(X, canonical_point_set(fix), "enumerate_continuous_selfmaps_naive"))
        pinned[i] = i;
    const int n = X.size();
    std::vector<int> asg(n, 0);
    for (int i = 0; i < n; ++i)
        if (pinned[i] >= 0) asg[i] = pinned[i];
    while (true) {
        SelfMap f(X, asg);
        if (is_continuous(f)) {
            if (!yield(f)) return false;
        }
        // odometer step over free positions, most significant first
        int i = n - 1;
        while (i >= 0) {
            if (pinned[i] < 0 && asg[i] + 1 < n) {
                ++asg[i];
                break;
            }
            if (pinned[i] < 0) asg[i] = 0;
            --i;
        }
        if (i < 0) return true;
    }
}

bool enumerate_continuous_maps(const DigitalImage& src, const DigitalImage& dst,
                               const std::vector<std::pair<Point, Point>>& pinned,
                               const std::function<bool(const ImageMap&)>& yield,
                               const EnumerationOptions& opts) {
    if (src.size() > opts.max_points)
        throw std::invalid_argument("enumerate_continuous_maps: source has " + std::to_string(src.size()) +
                                    " points, above the enumeration guard of " +
                                    std::to_string(opts.max_points));
    if (src.dim() != dst.dim())
        throw std::invalid_argument("enumerate_continuous_maps: image dimensions differ");
    std::function<bool(std::span<const int>)> raw = [&](std::span<const int> asg) {
        return yield(ImageMap(src, dst, std::vector<int>(asg.begin(), asg.end())));
    };
    MapEnumerator e{src, dst, same_image(src, dst), raw, std::vector<int>(src.size(), -1),
                    std::vector<int>(src.size(), -1)};
    for (const auto& [from, to] : pinned) {
        auto fi = src.index_of(from);
        auto ti = dst.index_of(to);
        if (!fi || !ti)
            throw std::invalid_argument("enumerate_continuous_maps: pinned pair outside the images");
        e.pinned[*fi] = *ti;
    }
    return e.extend(0);
}

} // namespace freeze
