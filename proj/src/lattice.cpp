#include "freeze/lattice.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace freeze {

PointSet canonical_point_set(PointSet points) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return points;
}

bool set_contains(const PointSet& set, const Point& p) {
    return std::binary_search(set.begin(), set.end(), p);
}

PointSet set_union(const PointSet& a, const PointSet& b) {
    PointSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

PointSet set_minus(const PointSet& a, const Point& p) {
    PointSet out;
    out.reserve(a.size());
    for (const auto& q : a)
        if (q != p) out.push_back(q);
    return out;
}

bool is_subset(const PointSet& a, const PointSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::string point_to_string(const Point& p) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) os << ',';
        os << p[i];
    }
    os << ')';
    return os.str();
}

std::string point_set_to_string(const PointSet& pts) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) os << ", ";
        os << point_to_string(pts[i]);
    }
    os << '}';
    return os.str();
}

namespace {

void check_pair_and_u(const Point& p, const Point& q, int u) {
    if (p.size() != q.size())
        throw std::invalid_argument("adjacent: points have different dimensions (" +
                                    std::to_string(p.size()) + " vs " + std::to_string(q.size()) + ")");
    if (p.empty())
        throw std::invalid_argument("adjacent: zero-dimensional points");
    if (u < 1 || u > static_cast<int>(p.size()))
        throw std::invalid_argument("adjacent: u = " + std::to_string(u) +
                                    " out of range [1, " + std::to_string(p.size()) + "]");
}

// adjacency test without argument validation
bool adjacent_unchecked(const Point& p, const Point& q, int u) {
    int differing = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        Coord d = p[i] - q[i];
        if (d == 0) continue;
        if (d != 1 && d != -1) return false;
        if (++differing > u) return false;
    }
    return differing > 0;
}

} // namespace

bool adjacent(const Point& p, const Point& q, int u) {
    check_pair_and_u(p, q, u);
    return adjacent_unchecked(p, q, u);
}

bool adjacent_or_equal(const Point& p, const Point& q, int u) {
    check_pair_and_u(p, q, u);
    return p == q || adjacent_unchecked(p, q, u);
}

struct DigitalImage::Impl {
    int dim = 0;
    int u = 0;
    PointSet points;
    std::vector<std::vector<int>> adj;
    std::vector<detail::Bitset> adj_eq; // closed neighborhoods
};

DigitalImage::DigitalImage(PointSet points, int u) {
    auto impl = std::make_shared<Impl>();
    impl->points = canonical_point_set(std::move(points));
    if (impl->points.empty())
        throw std::invalid_argument("DigitalImage: point set is empty");
    impl->dim = static_cast<int>(impl->points.front().size());
    if (impl->dim < 1)
        throw std::invalid_argument("DigitalImage: dimension must be positive");
    if (impl->dim > kMaxDimension)
        throw std::invalid_argument("DigitalImage: dimension " + std::to_string(impl->dim) +
                                    " exceeds the supported maximum of " + std::to_string(kMaxDimension));
    for (const auto& p : impl->points)
        if (static_cast<int>(p.size()) != impl->dim)
            throw std::invalid_argument("DigitalImage: point " + point_to_string(p) +
                                        " does not have dimension " + std::to_string(impl->dim));
    if (u < 1 || u > impl->dim)
        throw std::invalid_argument("DigitalImage: u = " + std::to_string(u) +
                                    " out of range [1, " + std::to_string(impl->dim) + "]");
    impl->u = u;

    const int n = static_cast<int>(impl->points.size());
    impl->adj.resize(n);
    impl->adj_eq.assign(n, detail::Bitset(n));
    for (int i = 0; i < n; ++i) impl->adj_eq[i].set(i);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (adjacent_unchecked(impl->points[i], impl->points[j], u)) {
                impl->adj[i].push_back(j);
                impl->adj[j].push_back(i);
                impl->adj_eq[i].set(j);
                impl->adj_eq[j].set(i);
            }
        }
    }
    for (auto& a : impl->adj) std::sort(a.begin(), a.end());
    impl_ = std::move(impl);
}

int DigitalImage::dim() const { return impl_->dim; }
int DigitalImage::u() const { return impl_->u; }
int DigitalImage::size() const { return static_cast<int>(impl_->points.size()); }
const PointSet& DigitalImage::points() const { return impl_->points; }
const Point& DigitalImage::point_at(int index) const { return impl_->points[index]; }

std::optional<int> DigitalImage::index_of(const Point& p) const {
    auto it = std::lower_bound(impl_->points.begin(), impl_->points.end(), p);
    if (it == impl_->points.end() || *it != p) return std::nullopt;
    return static_cast<int>(it - impl_->points.begin());
}

bool DigitalImage::contains(const Point& p) const { return index_of(p).has_value(); }

const std::vector<int>& DigitalImage::neighbors_of(int index) const { return impl_->adj[index]; }

const detail::Bitset& DigitalImage::closed_adjacency_row(int index) const { return impl_->adj_eq[index]; }

DigitalImage DigitalImage::with_adjacency(int u) const {
    if (u == impl_->u) return *this;
    return DigitalImage(impl_->points, u);
}

bool same_image(const DigitalImage& a, const DigitalImage& b) {
    if (a.impl_ == b.impl_) return true;
    return a.impl_->dim == b.impl_->dim && a.impl_->u == b.impl_->u && a.impl_->points == b.impl_->points;
}

namespace {

int require_index(const DigitalImage& X, const Point& x, const char* op) {
    auto idx = X.index_of(x);
    if (!idx)
        throw std::invalid_argument(std::string(op) + ": point " + point_to_string(x) + " is not in the image");
    return *idx;
}

} // namespace

PointSet neighbors(const DigitalImage& X, const Point& x) {
    int i = require_index(X, x, "neighbors");
    PointSet out;
    out.reserve(X.neighbors_of(i).size());
    for (int j : X.neighbors_of(i)) out.push_back(X.point_at(j));
    return out;
}

PointSet closed_neighbors(const DigitalImage& X, const Point& x) {
    int i = require_index(X, x, "closed_neighbors");
    PointSet out;
    out.reserve(X.neighbors_of(i).size() + 1);
    const detail::Bitset& row = X.closed_adjacency_row(i);
    for (int j = row.find_first(); j >= 0; j = row.find_next(j)) out.push_back(X.point_at(j));
    return out;
}

PointSet boundary(const DigitalImage& X) {
    PointSet out;
    Point probe;
    for (const auto& p : X.points()) {
        bool on_boundary = false;
        probe = p;
        for (int d = 0; d < X.dim() && !on_boundary; ++d) {
            for (int step : {-1, 1}) {
                probe[d] = p[d] + step;
                if (!X.contains(probe)) {
                    on_boundary = true;
                    break;
                }
            }
            probe[d] = p[d];
        }
        if (on_boundary) out.push_back(p);
    }
    return out; // canonical order inherited from X.points()
}

bool is_connected(const DigitalImage& X) {
    const int n = X.size();
    std::vector<char> seen(n, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int reached = 1;
    while (!queue.empty()) {
        int i = queue.front();
        queue.pop_front();
        for (int j : X.neighbors_of(i)) {
            if (!seen[j]) {
                seen[j] = 1;
                ++reached;
                queue.push_back(j);
            }
        }
    }
    return reached == n;
}

Coord projection(const Point& x, int i) {
    if (i < 1 || i > static_cast<int>(x.size()))
        throw std::invalid_argument("projection: index " + std::to_string(i) + " out of range [1, " +
                                    std::to_string(x.size()) + "]");
    return x[i - 1];
}

BfsResult bfs_from(const DigitalImage& X, int source) {
    const int n = X.size();
    BfsResult r;
    r.dist.assign(n, -1);
    r.path_count.assign(n, 0);
    r.dist[source] = 0;
    r.path_count[source] = 1;
    std::deque<int> queue{source};
    while (!queue.empty()) {
        int i = queue.front();
        queue.pop_front();
        for (int j : X.neighbors_of(i)) {
            if (r.dist[j] < 0) {
                r.dist[j] = r.dist[i] + 1;
                queue.push_back(j);
            }
            if (r.dist[j] == r.dist[i] + 1) {
                std::uint64_t sum = r.path_count[j] + r.path_count[i];
                r.path_count[j] = std::min(sum, kPathCountCap);
            }
        }
    }
    return r;
}

PathResult path_structure(const DigitalImage& X, const Point& x, const Point& y) {
    int si = require_index(X, x, "path_structure");
    int ti = require_index(X, y, "path_structure");
    BfsResult b = bfs_from(X, si);
    PathResult out;
    if (b.dist[ti] < 0) return out; // disconnected: no distance, count 0
    out.distance = b.dist[ti];
    out.shortest_path_count = b.path_count[ti];
    if (out.shortest_path_count == 1) {
        std::vector<Point> path(b.dist[ti] + 1);
        int cur = ti;
        for (int step = b.dist[ti]; step >= 0; --step) {
            path[step] = X.point_at(cur);
            if (step == 0) break;
            for (int j : X.neighbors_of(cur)) {
                if (b.dist[j] == step - 1 && b.path_count[j] > 0) {
                    cur = j;
                    break;
                }
            }
        }
        out.unique_path = std::move(path);
    }
    return out;
}

} // namespace freeze
