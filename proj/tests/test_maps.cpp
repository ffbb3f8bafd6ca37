#include "doctest.h"

#include <random>

#include "fixtures.hpp"
#include "freeze/maps.hpp"

using namespace freeze;
using testutil::box;
using testutil::interval;

namespace {

LatticeIso random_iso(int n, std::mt19937& rng) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> signs(n);
    std::vector<Coord> trans(n);
    std::uniform_int_distribution<int> coin(0, 1), offset(-3, 3);
    for (int i = 0; i < n; ++i) {
        signs[i] = coin(rng) ? 1 : -1;
        trans[i] = offset(rng);
    }
    return LatticeIso(std::move(perm), std::move(signs), std::move(trans));
}

std::vector<std::vector<int>> collect_assignments(const DigitalImage& X, const PointSet& fix) {
    std::vector<std::vector<int>> out;
    enumerate_continuous_selfmaps_raw(
        X, fix,
        [&](std::span<const int> asg) {
            out.emplace_back(asg.begin(), asg.end());
            return true;
        },
        {});
    return out;
}

} // namespace

TEST_CASE("is_continuous: identity and constants on the corpus") {
    for (const auto& X : testutil::corpus()) {
        CHECK(is_continuous(identity_map(X)));
        SelfMap constant(X, std::vector<int>(X.size(), 0));
        CHECK(is_continuous(constant));
    }
}

TEST_CASE("is_continuous: folding a segment is fine, stretching is not") {
    DigitalImage X = interval(0, 2);
    SelfMap fold = selfmap_from_pairs(X, {{{0}, {0}}, {{1}, {1}}, {{2}, {0}}});
    CHECK(is_continuous(fold)); // each adjacent pair lands on equal-or-adjacent points
    SelfMap stretch = selfmap_from_pairs(X, {{{0}, {0}}, {{1}, {2}}, {{2}, {2}}});
    CHECK_FALSE(is_continuous(stretch)); // (0),(1) -> (0),(2) at distance 2
}

TEST_CASE("is_continuous: the inward-move witness on the cube under cN") {
    DigitalImage X = box({0, 0, 0}, {2, 2, 2}, 3);
    SelfMap f = selfmap_with_moves(X, {{{0, 1, 1}, {1, 1, 1}}});
    CHECK(is_continuous(f));
    CHECK_FALSE(f.is_identity());
    // the diagonal corner move is discontinuous under c1
    DigitalImage X1 = box({0, 0, 0}, {2, 2, 2}, 1);
    SelfMap g = selfmap_with_moves(X1, {{{0, 0, 0}, {1, 1, 1}}});
    CHECK_FALSE(is_continuous(g));
}

TEST_CASE("compose: identities, constants, and mismatches") {
    DigitalImage X = box({0, 0}, {2, 2}, 1);
    SelfMap id = identity_map(X);
    SelfMap fold = selfmap_with_moves(X, {{{2, 2}, {1, 2}}});
    CHECK(compose(id, fold).assignment == fold.assignment);
    CHECK(compose(fold, id).assignment == fold.assignment);

    SelfMap constant(X, std::vector<int>(X.size(), 3));
    SelfMap after = compose(fold, constant);
    CHECK(after.assignment == constant.assignment);

    DigitalImage Y = interval(0, 1);
    CHECK_THROWS_AS(compose(fold.as_image_map(), identity_map(Y).as_image_map()), std::invalid_argument);
}

TEST_CASE("compose: closure over sampled continuous pairs") {
    DigitalImage X = box({0, 0}, {2, 2}, 1);
    auto maps = collect_assignments(X, {});
    REQUIRE(maps.size() == 63997);
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::size_t> pick(0, maps.size() - 1);
    for (int trial = 0; trial < 20000; ++trial) {
        SelfMap f(X, maps[pick(rng)]);
        SelfMap g(X, maps[pick(rng)]);
        CHECK(is_continuous(compose(f, g)));
    }
}

TEST_CASE("fixed_points") {
    DigitalImage X = box({0, 0}, {1, 1}, 1);
    CHECK(fixed_points(identity_map(X)) == X.points());
    SelfMap moved = selfmap_with_moves(X, {{{0, 0}, {0, 1}}});
    CHECK(fixed_points(moved) == PointSet{{0, 1}, {1, 0}, {1, 1}});
    SelfMap constant(X, std::vector<int>(X.size(), 2));
    CHECK(fixed_points(constant) == PointSet{{1, 0}});
}

TEST_CASE("LatticeIso: apply, inverse, compose") {
    LatticeIso id = LatticeIso::identity(3);
    CHECK(id.apply({4, -1, 2}) == Point{4, -1, 2});
    CHECK(id.is_identity());

    LatticeIso shift = LatticeIso::translate({5, 5, 5});
    CHECK(shift.apply({0, 1, 1}) == Point{5, 6, 6});

    LatticeIso swap({1, 0}, {1, 1}, {0, 0});
    CHECK(swap.apply({3, 8}) == Point{8, 3});

    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + trial % 3;
        LatticeIso T = random_iso(n, rng);
        LatticeIso U = random_iso(n, rng);
        Point p(n);
        std::uniform_int_distribution<Coord> c(-4, 4);
        for (int d = 0; d < n; ++d) p[d] = c(rng);
        CHECK(T.inverse().apply(T.apply(p)) == p);
        CHECK(compose(T, T.inverse()).is_identity());
        CHECK(compose(T, U).apply(p) == T.apply(U.apply(p)));
    }
}

TEST_CASE("apply_iso on images and sets") {
    DigitalImage X = box({0, 0, 0}, {1, 1, 1}, 1);
    LatticeIso id = LatticeIso::identity(3);
    CHECK(same_image(apply_iso(id, X), X));

    DigitalImage shifted = apply_iso(LatticeIso::translate({5, 5, 5}), X);
    CHECK(same_image(shifted, box({5, 5, 5}, {6, 6, 6}, 1)));

    DigitalImage rect = box({0, 0}, {2, 4}, 1);
    LatticeIso swap({1, 0}, {1, 1}, {0, 0});
    CHECK(same_image(apply_iso(swap, rect), box({0, 0}, {4, 2}, 1)));

    CHECK(apply_iso_to_set(swap, {{0, 4}, {2, 0}}) == PointSet{{0, 2}, {4, 0}});

    // the induced point bijection is continuous both ways
    std::mt19937 rng(3);
    for (const auto& img : testutil::corpus()) {
        LatticeIso T = random_iso(img.dim(), rng);
        DigitalImage Y = apply_iso(T, img);
        CHECK(Y.size() == img.size());
        std::vector<int> fwd(img.size());
        for (int i = 0; i < img.size(); ++i) fwd[i] = *Y.index_of(T.apply(img.point_at(i)));
        CHECK(is_continuous(ImageMap(img, Y, fwd)));
        std::vector<int> bwd(Y.size());
        LatticeIso Ti = T.inverse();
        for (int i = 0; i < Y.size(); ++i) bwd[i] = *img.index_of(Ti.apply(Y.point_at(i)));
        CHECK(is_continuous(ImageMap(Y, img, bwd)));
    }
}

TEST_CASE("normalize_to_origin") {
    auto [X1, T1] = normalize_to_origin(box({2, 3}, {5, 3}, 1));
    CHECK(same_image(X1, box({0, 0}, {3, 0}, 1)));
    CHECK(T1.apply({2, 3}) == Point{0, 0});

    DigitalImage already = box({0, 0}, {1, 2}, 1);
    auto [X2, T2] = normalize_to_origin(already);
    CHECK(same_image(X2, already));
    CHECK(T2.is_identity());

    auto [X3, T3] = normalize_to_origin(DigitalImage({{-1, -1}}, 1));
    CHECK(X3.points() == PointSet{{0, 0}});
}

TEST_CASE("enumerate_continuous_selfmaps: counts and pinning") {
    DigitalImage two = interval(0, 1);
    CHECK(count_continuous_selfmaps(two, {}) == 4);

    auto all_fixed = collect_assignments(two, {{0}, {1}});
    REQUIRE(all_fixed.size() == 1);
    CHECK(SelfMap(two, all_fixed[0]).is_identity());

    DigitalImage three = interval(0, 2);
    auto endpoints = collect_assignments(three, {{0}, {2}});
    REQUIRE(endpoints.size() == 1);
    CHECK(SelfMap(three, endpoints[0]).is_identity());
}

TEST_CASE("enumerate yields lexicographic order without duplicates") {
    for (const auto& X : testutil::corpus()) {
        if (X.size() > 6) continue;
        auto maps = collect_assignments(X, {});
        for (std::size_t i = 0; i + 1 < maps.size(); ++i) CHECK(maps[i] < maps[i + 1]);
        for (const auto& asg : maps) CHECK(is_continuous(SelfMap(X, asg)));
    }
}

TEST_CASE("backtracking enumerator matches the naive filter") {
    for (const auto& X : testutil::corpus()) {
        if (X.size() > 6) continue;
        auto fast = collect_assignments(X, {});
        std::vector<std::vector<int>> slow;
        enumerate_continuous_selfmaps_naive(
            X, {},
            [&](const SelfMap& f) {
                slow.push_back(f.assignment);
                return true;
            },
            {});
        CHECK(fast == slow);

        PointSet fix{X.point_at(0)};
        fast = collect_assignments(X, fix);
        slow.clear();
        enumerate_continuous_selfmaps_naive(
            X, fix,
            [&](const SelfMap& f) {
                slow.push_back(f.assignment);
                return true;
            },
            {});
        CHECK(fast == slow);
    }
}

TEST_CASE("enumeration guards") {
    DigitalImage big = box({0, 0}, {6, 6}, 1); // 49 points
    CHECK_THROWS_AS(count_continuous_selfmaps(big, {}), std::invalid_argument);
    DigitalImage mid = box({0, 0}, {3, 3}, 1); // 16 points
    CHECK_THROWS_AS(
        enumerate_continuous_selfmaps_naive(mid, {}, [](const SelfMap&) { return true; }, {}),
        std::invalid_argument);
}

TEST_CASE("enumeration handles disconnected images") {
    DigitalImage X({{0, 0}, {3, 3}}, 1);
    // no edges: every function is continuous
    CHECK(count_continuous_selfmaps(X, {}) == 4);
}

TEST_CASE("pulling property holds for every enumerated map") {
    for (const auto& X : testutil::corpus()) {
        if (X.size() > 8) continue;
        enumerate_continuous_selfmaps_raw(
            X, {},
            [&](std::span<const int> f) {
                for (int q = 0; q < X.size(); ++q) {
                    for (int qp : X.neighbors_of(q)) {
                        for (int i = 1; i <= X.dim(); ++i) {
                            Coord fq = projection(X.point_at(f[q]), i);
                            Coord cq = projection(X.point_at(q), i);
                            Coord cqp = projection(X.point_at(qp), i);
                            Coord fqp = projection(X.point_at(f[qp]), i);
                            if (fq > cq && cq > cqp) CHECK(fqp > cqp);
                            if (fq < cq && cq < cqp) CHECK(fqp < cqp);
                        }
                    }
                }
                return true;
            },
            {});
    }
}

TEST_CASE("unique shortest paths between fixed points stay fixed") {
    for (const auto& X : testutil::corpus()) {
        if (X.size() > 8) continue;
        const int n = X.size();
        std::vector<std::vector<std::optional<std::vector<int>>>> geo(n);
        for (int a = 0; a < n; ++a) {
            geo[a].resize(n);
            for (int b = 0; b < n; ++b) {
                PathResult r = path_structure(X, X.point_at(a), X.point_at(b));
                if (r.unique_path) {
                    std::vector<int> idx;
                    for (const auto& p : *r.unique_path) idx.push_back(*X.index_of(p));
                    geo[a][b] = std::move(idx);
                }
            }
        }
        enumerate_continuous_selfmaps_raw(
            X, {},
            [&](std::span<const int> f) {
                for (int a = 0; a < n; ++a) {
                    if (f[a] != a) continue;
                    for (int b = a + 1; b < n; ++b) {
                        if (f[b] != b || !geo[a][b]) continue;
                        for (int p : *geo[a][b]) CHECK(f[p] == p);
                    }
                }
                return true;
            },
            {});
    }
}

TEST_CASE("conjugation by an isomorphism preserves enumeration counts") {
    std::mt19937 rng(17);
    for (const auto& X : testutil::corpus()) {
        if (X.size() > 8) continue;
        LatticeIso T = random_iso(X.dim(), rng);
        DigitalImage Y = apply_iso(T, X);
        PointSet A{X.point_at(0), X.point_at(X.size() / 2)};
        CHECK(count_continuous_selfmaps(X, A) ==
              count_continuous_selfmaps(Y, apply_iso_to_set(T, A)));
    }
}

TEST_CASE("maps into a larger cube that fix the corners fix everything") {
    // continuous f: X -> Y with Y containing X and f pinned on X's corners
    DigitalImage X = box({0, 0}, {2, 2}, 1);
    DigitalImage Y = box({0, 0}, {4, 3}, 1);
    std::vector<std::pair<Point, Point>> pins;
    for (const auto& c : corners(CubeSpec({0, 0}, {2, 2}))) pins.emplace_back(c, c);
    int seen = 0;
    enumerate_continuous_maps(X, Y, pins, [&](const ImageMap& f) {
        ++seen;
        for (const auto& p : X.points()) CHECK(f.apply(p) == p);
        return true;
    });
    CHECK(seen == 1);
}
