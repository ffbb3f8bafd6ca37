#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "freeze/lattice.hpp"

namespace freeze {

/// A total function between digital images, stored as one target index per
/// source point in canonical order.
struct ImageMap {
    DigitalImage source;
    DigitalImage target;
    std::vector<int> assignment;

    ImageMap(DigitalImage src, DigitalImage dst, std::vector<int> asg);
    Point apply(const Point& x) const;
};

/// A self-map of one image.
struct SelfMap {
    DigitalImage image;
    std::vector<int> assignment;

    SelfMap(DigitalImage img, std::vector<int> asg);
    Point apply(const Point& x) const;
    bool is_identity() const;
    ImageMap as_image_map() const { return ImageMap(image, image, assignment); }
};

SelfMap identity_map(const DigitalImage& X);

/// Builds a map from explicit (source point -> target point) pairs; every
/// source point must be covered exactly once.
ImageMap image_map_from_pairs(const DigitalImage& src, const DigitalImage& dst,
                              const std::vector<std::pair<Point, Point>>& pairs);
SelfMap selfmap_from_pairs(const DigitalImage& X, const std::vector<std::pair<Point, Point>>& pairs);

/// Identity except at the listed points.
SelfMap selfmap_with_moves(const DigitalImage& X, const std::vector<std::pair<Point, Point>>& moves);

/// Adjacent source points must land on equal or adjacent target points.
bool is_continuous(const ImageMap& f);
bool is_continuous(const SelfMap& f);

/// compose(f, g) = g after f; requires f.target = g.source.
ImageMap compose(const ImageMap& f, const ImageMap& g);
SelfMap compose(const SelfMap& f, const SelfMap& g);

PointSet fixed_points(const SelfMap& f);

/// An affine lattice symmetry: coordinate permutation, per-axis reflection,
/// then translation. apply(x)[i] = signs[i] * x[perm[i]] + translation[i].
struct LatticeIso {
    std::vector<int> perm;
    std::vector<int> signs;
    std::vector<Coord> translation;

    LatticeIso(std::vector<int> perm, std::vector<int> signs, std::vector<Coord> translation);
    static LatticeIso identity(int n);
    static LatticeIso translate(std::vector<Coord> offset);

    int dim() const { return static_cast<int>(perm.size()); }
    Point apply(const Point& x) const;
    LatticeIso inverse() const;
    bool is_identity() const;
};

/// compose(outer, inner): apply inner first.
LatticeIso compose(const LatticeIso& outer, const LatticeIso& inner);

DigitalImage apply_iso(const LatticeIso& T, const DigitalImage& X);
PointSet apply_iso_to_set(const LatticeIso& T, const PointSet& A);

/// Translates X so every axis has minimum coordinate 0; returns the image
/// and the translation used.
std::pair<DigitalImage, LatticeIso> normalize_to_origin(const DigitalImage& X);

struct EnumerationOptions {
    int max_points = 40;          // guard for the backtracking enumerator
    int max_points_naive = 12;    // guard for the |X|^|X| filter
};

/// Yields every continuous self-map fixing `fix` pointwise, each exactly
/// once, in lexicographic order of the assignment sequence. The callback
/// returns false to stop; the function returns false when stopped early.
bool enumerate_continuous_selfmaps(const DigitalImage& X, const PointSet& fix,
                                   const std::function<bool(const SelfMap&)>& yield,
                                   const EnumerationOptions& opts = {});

/// Allocation-free variant: the span holds target indices per source index
/// and is only valid during the callback.
bool enumerate_continuous_selfmaps_raw(const DigitalImage& X, const PointSet& fix,
                                       const std::function<bool(std::span<const int>)>& yield,
                                       const EnumerationOptions& opts = {});

std::uint64_t count_continuous_selfmaps(const DigitalImage& X, const PointSet& fix = {},
                                        const EnumerationOptions& opts = {});

/// Reference enumeration that tries all |X|^|X| assignments and filters by
/// is_continuous. Same yield order as the backtracking enumerator.
bool enumerate_continuous_selfmaps_naive(const DigitalImage& X, const PointSet& fix,
                                         const std::function<bool(const SelfMap&)>& yield,
                                         const EnumerationOptions& opts = {});

/// General form between two images with pinned source->target pairs.
bool enumerate_continuous_maps(const DigitalImage& src, const DigitalImage& dst,
                               const std::vector<std::pair<Point, Point>>& pinned,
                               const std::function<bool(const ImageMap&)>& yield,
                               const EnumerationOptions& opts = {});

} // namespace freeze
