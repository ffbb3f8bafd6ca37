#include "freeze/verify.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <climits>
#include <memory>
#include <mutex>
#include <thread>

#include "freeze/construct.hpp"

namespace freeze {

std::optional<bool PruneRules::*> PruneRules::field_by_name(const std::string& name) {
    if (name == "arc") return &PruneRules::arc;
    if (name == "distance") return &PruneRules::distance;
    if (name == "geodesic") return &PruneRules::geodesic;
    if (name == "pulling") return &PruneRules::pulling;
    if (name == "interior") return &PruneRules::interior;
    if (name == "mandatory") return &PruneRules::mandatory;
    return std::nullopt;
}

void SearchStats::merge(const SearchStats& o) {
    nodes += o.nodes;
    seeds_tried += o.seeds_tried;
    arc_removed += o.arc_removed;
    distance_removed += o.distance_removed;
    geodesic_fixed += o.geodesic_fixed;
    pulling_removed += o.pulling_removed;
    interior_fixed += o.interior_fixed;
}

namespace {

constexpr int kInfDist = INT_MAX / 2;

// Worker cancellation signal; never escapes the engine.
struct StopSearch {};

// Per-branch candidate table: one bit row per point plus cached sizes and
// fixed-point bookkeeping. Copied at every decision node.
struct Table {
    int nvars = 0;
    int words = 0;
    std::vector<std::uint64_t> bits;
    std::vector<std::int32_t> size;
    std::vector<std::int32_t> fixed_list; // vars with dom == {self}, discovery order
    std::vector<std::uint8_t> is_fixed;
    std::size_t geodesic_done = 0; // prefix of fixed_list already paired
    bool interior_dirty = true;

    Table(int n, int w)
        : nvars(n), words(w), bits(std::size_t(n) * w, 0), size(n, 0), is_fixed(n, 0) {}

    std::uint64_t* row(int v) { return bits.data() + std::size_t(v) * words; }
    const std::uint64_t* row(int v) const { return bits.data() + std::size_t(v) * words; }

    bool test(int v, int val) const { return (row(v)[val >> 6] >> (val & 63)) & 1; }

    int sole_value(int v) const {
        const std::uint64_t* r = row(v);
        for (int k = 0; k < words; ++k)
            if (r[k]) return k * 64 + std::countr_zero(r[k]);
        return -1;
    }

    bool all_singleton() const {
        return std::all_of(size.begin(), size.end(), [](std::int32_t s) { return s == 1; });
    }
};

struct Seed {
    int var;
    int val;
    int dist_from_anchors;
};

class Engine {
public:
    Engine(const DigitalImage& X, const VerifyOptions& opt)
        : X_(X), opt_(opt), n_(X.size()), words_((X.size() + 63) / 64),
          coords_(std::size_t(X.size()) * X.dim()), adjeq_(std::size_t(X.size()) * words_, 0),
          bfs_cache_(X.size()) {
        for (int i = 0; i < n_; ++i) {
            const Point& p = X.point_at(i);
            for (int d = 0; d < X.dim(); ++d) coords_[std::size_t(i) * X.dim() + d] = p[d];
            std::uint64_t* row = adjeq_row(i);
            row[i >> 6] |= std::uint64_t{1} << (i & 63);
            for (int j : X.neighbors_of(i)) row[j >> 6] |= std::uint64_t{1} << (j & 63);
        }
    }

    VerifyOutcome run(const std::vector<int>& anchors);

    bool build_root(Table& t, const std::vector<int>& anchors,
                    const std::vector<std::pair<int, int>>& partial, SearchStats& st);

    Table fresh_table() const {
        Table t(n_, words_);
        for (int v = 0; v < n_; ++v) {
            std::uint64_t* r = t.row(v);
            for (int k = 0; k < words_; ++k) r[k] = ~std::uint64_t{0};
            if (n_ & 63) r[words_ - 1] = (std::uint64_t{1} << (n_ & 63)) - 1;
            t.size[v] = n_;
        }
        return t;
    }

    int words() const { return words_; }

private:
    Coord coord(int v, int d) const { return coords_[std::size_t(v) * X_.dim() + d]; }
    std::uint64_t* adjeq_row(int i) { return adjeq_.data() + std::size_t(i) * words_; }
    const std::uint64_t* adjeq_row(int i) const { return adjeq_.data() + std::size_t(i) * words_; }

    const BfsResult& bfs(int src) {
        {
            std::lock_guard<std::mutex> lk(bfs_mutex_);
            if (bfs_cache_[src]) return *bfs_cache_[src];
        }
        auto r = std::make_unique<BfsResult>(bfs_from(X_, src));
        std::lock_guard<std::mutex> lk(bfs_mutex_);
        if (!bfs_cache_[src]) bfs_cache_[src] = std::move(r);
        return *bfs_cache_[src];
    }

    void count_node() {
        std::uint64_t k = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
        if (k > opt_.node_budget) throw BudgetExceededError(opt_.node_budget);
        if (stop_.load(std::memory_order_relaxed)) throw StopSearch{};
    }

    // ---- domain edits --------------------------------------------------

    void note_singleton(Table& t, int var) {
        if (t.size[var] == 1 && !t.is_fixed[var] && t.test(var, var)) {
            t.is_fixed[var] = 1;
            t.fixed_list.push_back(var);
            t.interior_dirty = true;
        }
    }

    void enqueue(int var, std::vector<int>& queue, std::vector<std::uint8_t>& queued) {
        if (!queued[var]) {
            queued[var] = 1;
            queue.push_back(var);
        }
    }

    bool fix_value(Table& t, int var, int val, std::vector<int>& queue,
                   std::vector<std::uint8_t>& queued) {
        if (!t.test(var, val)) return false;
        if (t.size[var] == 1) return true;
        std::uint64_t* r = t.row(var);
        for (int k = 0; k < words_; ++k) r[k] = 0;
        r[val >> 6] = std::uint64_t{1} << (val & 63);
        t.size[var] = 1;
        note_singleton(t, var);
        enqueue(var, queue, queued);
        return true;
    }

    // dom(var) &= mask; returns the removal count, or -1 on wipeout
    int restrict_row(Table& t, int var, const std::uint64_t* mask, std::vector<int>& queue,
                     std::vector<std::uint8_t>& queued) {
        std::uint64_t* r = t.row(var);
        int removed = 0;
        for (int k = 0; k < words_; ++k) {
            std::uint64_t nw = r[k] & mask[k];
            removed += std::popcount(r[k] ^ nw);
            r[k] = nw;
        }
        if (removed == 0) return 0;
        t.size[var] -= removed;
        if (t.size[var] == 0) return -1;
        note_singleton(t, var);
        enqueue(var, queue, queued);
        return removed;
    }

    bool remove_value(Table& t, int var, int val, std::vector<int>& queue,
                      std::vector<std::uint8_t>& queued) {
        if (!t.test(var, val)) return true;
        t.row(var)[val >> 6] &= ~(std::uint64_t{1} << (val & 63));
        if (--t.size[var] == 0) return false;
        note_singleton(t, var);
        enqueue(var, queue, queued);
        return true;
    }

    // ---- propagation rules ----------------------------------------------

    bool rows_intersect(const std::uint64_t* a, const std::uint64_t* b) const {
        for (int k = 0; k < words_; ++k)
            if (a[k] & b[k]) return true;
        return false;
    }

    // adjacent-or-equal filtering triggered by a shrunken domain at y;
    // singletons always forward-filter, wider domains revise only under
    // full arc consistency
    bool process_var(Table& t, int y, std::vector<int>& queue, std::vector<std::uint8_t>& queued,
                     SearchStats& st) {
        const bool singleton = t.size[y] == 1;
        if (!singleton && !opt_.rules.arc) return true;
        if (singleton) {
            const std::uint64_t* mask = adjeq_row(t.sole_value(y));
            for (int z : X_.neighbors_of(y)) {
                int removed = restrict_row(t, z, mask, queue, queued);
                if (removed < 0) return false;
                st.arc_removed += removed;
            }
            return true;
        }
        const std::uint64_t* dy = t.row(y);
        std::vector<std::uint64_t> snapshot(words_);
        for (int z : X_.neighbors_of(y)) {
            const std::uint64_t* dz = t.row(z);
            std::copy(dz, dz + words_, snapshot.begin());
            for (int k = 0; k < words_; ++k) {
                std::uint64_t w = snapshot[k];
                while (w) {
                    int val = k * 64 + std::countr_zero(w);
                    w &= w - 1;
                    if (!rows_intersect(dy, adjeq_row(val))) {
                        if (!remove_value(t, z, val, queue, queued)) return false;
                        ++st.arc_removed;
                    }
                }
            }
        }
        return true;
    }

    // unique-geodesic rule: the unique shortest path between two fixed
    // points is fixed throughout
    bool process_geodesics(Table& t, std::vector<int>& queue, std::vector<std::uint8_t>& queued,
                           SearchStats& st) {
        while (t.geodesic_done < t.fixed_list.size()) {
            int a = t.fixed_list[t.geodesic_done];
            const BfsResult& r = bfs(a);
            for (std::size_t k = 0; k < t.geodesic_done; ++k) {
                int b = t.fixed_list[k];
                if (r.dist[b] <= 1 || r.path_count[b] != 1) continue;
                int cur = b;
                for (int step = r.dist[b]; step > 1; --step) {
                    for (int j : X_.neighbors_of(cur)) {
                        if (r.dist[j] == step - 1) {
                            cur = j;
                            break;
                        }
                    }
                    if (!t.is_fixed[cur]) {
                        if (!fix_value(t, cur, cur, queue, queued)) return false;
                        ++st.geodesic_fixed;
                    }
                }
            }
            ++t.geodesic_done;
        }
        return true;
    }

    // pulling rule: when every candidate image of q moves strictly along an
    // axis, the adjacent point behind q must move the same way
    bool pulling_sweep(Table& t, std::vector<int>& queue, std::vector<std::uint8_t>& queued,
                       SearchStats& st) {
        const int dim = X_.dim();
        std::vector<int> doomed;
        for (int q = 0; q < n_; ++q) {
            for (int d = 0; d < dim; ++d) {
                const std::uint64_t* dq = t.row(q);
                Coord mn = INT_MAX, mx = INT_MIN;
                for (int k = 0; k < words_; ++k) {
                    std::uint64_t w = dq[k];
                    while (w) {
                        int v = k * 64 + std::countr_zero(w);
                        w &= w - 1;
                        Coord c = coord(v, d);
                        mn = std::min(mn, c);
                        mx = std::max(mx, c);
                    }
                }
                const Coord cq = coord(q, d);
                const bool moves_up = mn > cq;
                const bool moves_down = mx < cq;
                if (!moves_up && !moves_down) continue;
                for (int z : X_.neighbors_of(q)) {
                    const Coord cz = coord(z, d);
                    const bool behind_low = moves_up && cz == cq - 1;
                    const bool behind_high = moves_down && cz == cq + 1;
                    if (!behind_low && !behind_high) continue;
                    doomed.clear();
                    const std::uint64_t* dz = t.row(z);
                    for (int k = 0; k < words_; ++k) {
                        std::uint64_t w = dz[k];
                        while (w) {
                            int v = k * 64 + std::countr_zero(w);
                            w &= w - 1;
                            Coord c = coord(v, d);
                            if ((behind_low && c <= cz) || (behind_high && c >= cz))
                                doomed.push_back(v);
                        }
                    }
                    for (int v : doomed) {
                        if (!remove_value(t, z, v, queue, queued)) return false;
                        ++st.pulling_removed;
                    }
                }
            }
        }
        return true;
    }

    // reports whether the box slab at coordinate `pos` along axis d lies in
    // X and consists of fixed points only
    void scan_slab(const Table& t, const Point& lo, const Point& hi, int d, Coord pos, bool& in_x,
                   bool& all_fixed) const {
        Point p = lo;
        p[d] = pos;
        while (true) {
            auto idx = X_.index_of(p);
            if (!idx) {
                in_x = false;
                return;
            }
            if (!t.is_fixed[*idx]) all_fixed = false;
            int e = X_.dim() - 1;
            while (e >= 0 && (e == d || p[e] == hi[e])) --e;
            if (e < 0) return;
            ++p[e];
            for (int f = e + 1; f < X_.dim(); ++f)
                if (f != d) p[f] = lo[f];
        }
    }

    // extend the box along one axis to the farthest slab of fixed points,
    // stepping only through slabs that stay inside X
    bool grow_axis(const Table& t, Point& lo, Point& hi, int d, int dir) const {
        const Coord start = dir > 0 ? hi[d] : lo[d];
        Coord best = start;
        Coord cur = start;
        while (true) {
            cur += dir;
            bool in_x = true, all_fixed = true;
            scan_slab(t, lo, hi, d, cur, in_x, all_fixed);
            if (!in_x) break;
            if (all_fixed) best = cur;
        }
        if (best == start) return false; // no fixed face on this side
        (dir > 0 ? hi[d] : lo[d]) = best;
        return true;
    }

    // full check of the grown box: every point in X, every face point fixed
    bool box_ready(const Table& t, const Point& lo, const Point& hi,
                   std::vector<int>& interior) const {
        Point p = lo;
        while (true) {
            auto idx = X_.index_of(p);
            if (!idx) return false;
            bool on_face = false;
            for (int d = 0; d < X_.dim(); ++d) {
                if (p[d] == lo[d] || p[d] == hi[d]) {
                    on_face = true;
                    break;
                }
            }
            if (on_face) {
                if (!t.is_fixed[*idx]) return false;
            } else {
                interior.push_back(*idx);
            }
            int e = X_.dim() - 1;
            while (e >= 0 && p[e] == hi[e]) --e;
            if (e < 0) return true;
            ++p[e];
            for (int f = e + 1; f < X_.dim(); ++f) p[f] = lo[f];
        }
    }

    // interior rule: a box inside X whose faces are all fixed is fixed
    // throughout; boxes are grown greedily around unfixed points
    bool interior_pass(Table& t, std::vector<int>& queue, std::vector<std::uint8_t>& queued,
                       SearchStats& st) {
        std::vector<int> interior;
        for (int z = 0; z < n_; ++z) {
            if (t.is_fixed[z]) continue;
            Point lo = X_.point_at(z);
            Point hi = lo;
            bool viable = true;
            for (int d = 0; d < X_.dim() && viable; ++d)
                viable = grow_axis(t, lo, hi, d, +1) && grow_axis(t, lo, hi, d, -1);
            if (!viable) continue;
            interior.clear();
            if (!box_ready(t, lo, hi, interior)) continue;
            bool fixed_any = false;
            for (int v : interior) {
                if (!t.is_fixed[v]) {
                    if (!fix_value(t, v, v, queue, queued)) return false;
                    ++st.interior_fixed;
                    fixed_any = true;
                }
            }
            if (fixed_any) return true; // re-enter the fixpoint loop
        }
        return true;
    }

    // ---- fixpoint --------------------------------------------------------

    void flush_queue(std::vector<int>& queue, std::vector<std::uint8_t>& queued) {
        for (int v : queue) queued[v] = 0;
        queue.clear();
    }

    bool propagate(Table& t, std::vector<int>& queue, std::vector<std::uint8_t>& queued,
                   SearchStats& st) {
        bool pulling_pending = opt_.rules.pulling;
        while (true) {
            if (!queue.empty()) {
                int y = queue.back();
                queue.pop_back();
                queued[y] = 0;
                if (!process_var(t, y, queue, queued, st)) {
                    flush_queue(queue, queued);
                    return false;
                }
                pulling_pending = opt_.rules.pulling;
                continue;
            }
            if (opt_.rules.geodesic && t.geodesic_done < t.fixed_list.size()) {
                if (!process_geodesics(t, queue, queued, st)) {
                    flush_queue(queue, queued);
                    return false;
                }
                continue;
            }
            if (pulling_pending) {
                pulling_pending = false;
                if (!pulling_sweep(t, queue, queued, st)) {
                    flush_queue(queue, queued);
                    return false;
                }
                continue;
            }
            if (opt_.rules.interior && t.interior_dirty) {
                t.interior_dirty = false;
                if (!interior_pass(t, queue, queued, st)) {
                    flush_queue(queue, queued);
                    return false;
                }
                if (!queue.empty() || t.interior_dirty) continue;
            }
            return true;
        }
    }

    // ---- search ------------------------------------------------------------

    int pick_branch_var(const Table& t) const {
        int best = -1;
        std::int32_t best_size = INT_MAX;
        for (int v = 0; v < n_; ++v) {
            if (t.size[v] >= 2 && t.size[v] < best_size) {
                best_size = t.size[v];
                best = v;
            }
        }
        return best;
    }

    std::optional<std::vector<int>> search(Table& t, SearchStats& st) {
        int x = pick_branch_var(t);
        if (x < 0) {
            std::vector<int> sol(n_);
            for (int v = 0; v < n_; ++v) sol[v] = t.sole_value(v);
            return sol;
        }
        std::vector<int> values;
        const std::uint64_t* r = t.row(x);
        for (int k = 0; k < words_; ++k) {
            std::uint64_t w = r[k];
            while (w) {
                values.push_back(k * 64 + std::countr_zero(w));
                w &= w - 1;
            }
        }
        std::vector<int> queue;
        std::vector<std::uint8_t> queued(n_, 0);
        for (int v : values) {
            count_node();
            ++st.nodes;
            Table child = t;
            if (!fix_value(child, x, v, queue, queued)) continue;
            if (propagate(child, queue, queued, st)) {
                if (auto sol = search(child, st)) return sol;
            }
        }
        return std::nullopt;
    }

    bool run_seed(const Table& root, const Seed& s, SearchStats& st, std::vector<int>& out) {
        ++st.seeds_tried;
        count_node();
        ++st.nodes;
        Table t = root;
        std::vector<int> queue;
        std::vector<std::uint8_t> queued(n_, 0);
        if (!fix_value(t, s.var, s.val, queue, queued)) return false;
        if (!propagate(t, queue, queued, st)) return false;
        if (auto sol = search(t, st)) {
            out = std::move(*sol);
            return true;
        }
        return false;
    }

    const DigitalImage& X_;
    VerifyOptions opt_;
    int n_;
    int words_;
    std::vector<Coord> coords_;
    std::vector<std::uint64_t> adjeq_;
    std::vector<std::unique_ptr<BfsResult>> bfs_cache_;
    std::mutex bfs_mutex_;
    std::atomic<std::uint64_t> nodes_{0};
    std::atomic<bool> stop_{false};
};

bool Engine::build_root(Table& t, const std::vector<int>& anchors,
                        const std::vector<std::pair<int, int>>& partial, SearchStats& st) {
    std::vector<int> queue;
    std::vector<std::uint8_t> queued(n_, 0);
    for (int a : anchors)
        if (!fix_value(t, a, a, queue, queued)) return false;
    for (auto [var, val] : partial)
        if (!fix_value(t, var, val, queue, queued)) return false;
    if (opt_.rules.distance && !anchors.empty()) {
        std::vector<int> doomed;
        for (int a : anchors) {
            const BfsResult& r = bfs(a);
            for (int x = 0; x < n_; ++x) {
                int dx = r.dist[x];
                if (dx < 0) continue; // unreachable anchor constrains nothing
                const std::uint64_t* row = t.row(x);
                doomed.clear();
                for (int k = 0; k < words_; ++k) {
                    std::uint64_t w = row[k];
                    while (w) {
                        int v = k * 64 + std::countr_zero(w);
                        w &= w - 1;
                        if (r.dist[v] < 0 || r.dist[v] > dx) doomed.push_back(v);
                    }
                }
                for (int v : doomed) {
                    if (!remove_value(t, x, v, queue, queued)) return false;
                    ++st.distance_removed;
                }
            }
        }
    }
    return propagate(t, queue, queued, st);
}

VerifyOutcome Engine::run(const std::vector<int>& anchors) {
    VerifyOutcome out;

    Table root = fresh_table();
    bool ok = build_root(root, anchors, {}, out.stats);
    if (!ok)
        throw std::logic_error("verify_freezing: root propagation failed although the identity exists");

    if (root.all_singleton()) {
        for (int v = 0; v < n_; ++v)
            if (root.sole_value(v) != v)
                throw std::logic_error("verify_freezing: propagation fixed a point away from itself");
        out.status = FreezeStatus::Frozen;
        return out;
    }

    // far-from-anchor points are the least constrained; seed them first
    std::vector<int> dist_to_anchor(n_, kInfDist);
    for (int a : anchors) {
        const BfsResult& r = bfs(a);
        for (int x = 0; x < n_; ++x)
            if (r.dist[x] >= 0) dist_to_anchor[x] = std::min(dist_to_anchor[x], r.dist[x]);
    }
    std::vector<Seed> seeds;
    for (int x = 0; x < n_; ++x) {
        if (root.size[x] == 1) continue;
        const std::uint64_t* r = root.row(x);
        for (int k = 0; k < words_; ++k) {
            std::uint64_t w = r[k];
            while (w) {
                int v = k * 64 + std::countr_zero(w);
                w &= w - 1;
                if (v != x) seeds.push_back({x, v, dist_to_anchor[x]});
            }
        }
    }
    std::stable_sort(seeds.begin(), seeds.end(), [](const Seed& a, const Seed& b) {
        if (a.dist_from_anchors != b.dist_from_anchors) return a.dist_from_anchors > b.dist_from_anchors;
        if (a.var != b.var) return a.var < b.var;
        return a.val < b.val;
    });

    const int threads = std::max(1, std::min<int>(opt_.threads, static_cast<int>(seeds.size())));
    std::optional<std::vector<int>> witness;

    if (threads <= 1) {
        Table live_root = root;
        std::vector<int> scratch_queue;
        std::vector<std::uint8_t> scratch_queued(n_, 0);
        for (const Seed& s : seeds) {
            if (!live_root.test(s.var, s.val)) continue; // refuted by an earlier seed
            std::vector<int> sol;
            if (run_seed(live_root, s, out.stats, sol)) {
                witness = std::move(sol);
                break;
            }
            // no completion maps s.var to s.val; keep that refutation
            if (!remove_value(live_root, s.var, s.val, scratch_queue, scratch_queued))
                throw std::logic_error("verify_freezing: refutation emptied a root domain");
            flush_queue(scratch_queue, scratch_queued);
        }
        out.stats.nodes = nodes_.load();
    } else {
        std::atomic<std::size_t> next_seed{0};
        std::atomic<bool> budget_blown{false};
        std::mutex result_mutex;
        std::vector<SearchStats> worker_stats(threads);
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                try {
                    while (!stop_.load(std::memory_order_relaxed)) {
                        std::size_t k = next_seed.fetch_add(1);
                        if (k >= seeds.size()) break;
                        std::vector<int> sol;
                        if (run_seed(root, seeds[k], worker_stats[w], sol)) {
                            std::lock_guard<std::mutex> lk(result_mutex);
                            if (!witness) witness = std::move(sol);
                            stop_.store(true, std::memory_order_relaxed);
                            break;
                        }
                    }
                } catch (const BudgetExceededError&) {
                    budget_blown.store(true);
                    stop_.store(true, std::memory_order_relaxed);
                } catch (const StopSearch&) {
                }
            });
        }
        for (auto& th : pool) th.join();
        SearchStats total;
        for (const auto& ws : worker_stats) total.merge(ws);
        total.nodes = nodes_.load();
        out.stats.merge(total);
        out.stats.nodes = nodes_.load();
        if (!witness && budget_blown.load()) throw BudgetExceededError(opt_.node_budget);
    }

    if (witness) {
        SelfMap f(X_, std::move(*witness));
        if (!is_continuous(f) || f.is_identity())
            throw std::logic_error("verify_freezing: search produced an invalid witness");
        for (int a : anchors)
            if (f.assignment[a] != a)
                throw std::logic_error("verify_freezing: witness moves an anchor point");
        out.status = FreezeStatus::NotFrozen;
        out.witness = std::move(f);
    } else {
        out.status = FreezeStatus::Frozen;
    }
    return out;
}

std::vector<int> anchor_indices(const DigitalImage& X, const PointSet& A, const char* what) {
    PointSet canon = canonical_point_set(A);
    std::vector<int> out;
    out.reserve(canon.size());
    for (const auto& p : canon) {
        auto idx = X.index_of(p);
        if (!idx)
            throw std::invalid_argument(std::string(what) + ": set point " + point_to_string(p) +
                                        " is not in the image");
        out.push_back(*idx);
    }
    return out;
}

} // namespace

VerifyOutcome verify_freezing(const DigitalImage& X, const PointSet& A, const VerifyOptions& opts) {
    std::vector<int> anchors = anchor_indices(X, A, "verify_freezing");

    if (opts.rules.mandatory) {
        // any unpinned point with a close neighbor yields a witness directly
        std::vector<char> pinned(X.size(), 0);
        for (int a : anchors) pinned[a] = 1;
        for (int i = 0; i < X.size(); ++i) {
            if (pinned[i]) continue;
            if (auto q = find_close_neighbor(X, X.point_at(i))) {
                VerifyOutcome out;
                out.status = FreezeStatus::NotFrozen;
                out.witness = close_neighbor_witness(X, X.point_at(i), *q);
                return out;
            }
        }
    }

    Engine engine(X, opts);
    return engine.run(anchors);
}

VerifyOutcome oracle_verify(const DigitalImage& X, const PointSet& A, const EnumerationOptions& opts) {
    anchor_indices(X, A, "oracle_verify"); // validate A against X
    VerifyOutcome out;
    std::uint64_t enumerated = 0;
    std::optional<std::vector<int>> found;
    enumerate_continuous_selfmaps_raw(
        X, A,
        [&](std::span<const int> asg) {
            ++enumerated;
            for (int i = 0; i < static_cast<int>(asg.size()); ++i) {
                if (asg[i] != i) {
                    found = std::vector<int>(asg.begin(), asg.end());
                    return false;
                }
            }
            return true;
        },
        opts);
    out.stats.nodes = enumerated;
    if (found) {
        out.status = FreezeStatus::NotFrozen;
        out.witness = SelfMap(X, std::move(*found));
    } else {
        out.status = FreezeStatus::Frozen;
    }
    return out;
}

namespace {

std::optional<CubeSpec> as_full_cube(const DigitalImage& X) {
    Point lo = X.point_at(0);
    Point hi = lo;
    for (const auto& p : X.points()) {
        for (int d = 0; d < X.dim(); ++d) {
            lo[d] = std::min(lo[d], p[d]);
            hi[d] = std::max(hi[d], p[d]);
        }
    }
    CubeSpec K(lo, hi);
    if (K.volume() == X.size()) return K; // points are deduplicated, so counts decide
    return std::nullopt;
}

bool witness_fixes(const SelfMap& f, const DigitalImage& X, const PointSet& A, const Point& skip) {
    for (const auto& p : A) {
        if (p == skip) continue;
        auto idx = X.index_of(p);
        if (!idx || f.assignment[*idx] != *idx) return false;
    }
    return true;
}

// removal certificate without search, where a constructive witness applies
std::optional<RemovalCheck> certified_removal(const DigitalImage& X, const PointSet& A, const Point& a,
                                              const std::optional<CubeSpec>& cube) {
    if (cube && X.u() == X.dim()) {
        for (int d = 0; d < cube->dim(); ++d) {
            if (cube->axis_degenerate(d)) continue;
            if (a[d] != cube->lo()[d] && a[d] != cube->hi()[d]) continue;
            SelfMap w = boundary_minimality_witness(*cube, a, d + 1);
            SelfMap on_x(X, w.assignment); // same point set, same canonical order
            if (is_continuous(on_x) && !on_x.is_identity() && witness_fixes(on_x, X, A, a)) {
                VerifyOutcome out;
                out.status = FreezeStatus::NotFrozen;
                out.witness = std::move(on_x);
                return RemovalCheck{a, std::move(out), "boundary-witness"};
            }
        }
    }
    if (auto q = find_close_neighbor(X, a)) {
        SelfMap w = close_neighbor_witness(X, a, *q);
        if (witness_fixes(w, X, A, a)) {
            VerifyOutcome out;
            out.status = FreezeStatus::NotFrozen;
            out.witness = std::move(w);
            return RemovalCheck{a, std::move(out), "close-neighbor"};
        }
    }
    return std::nullopt;
}

} // namespace

MinimalityResult is_minimal_freezing(const DigitalImage& X, const PointSet& A, const VerifyOptions& opts) {
    PointSet canon = canonical_point_set(A);
    VerifyOutcome base = verify_freezing(X, canon, opts);
    if (!base.frozen())
        throw std::invalid_argument("is_minimal_freezing: the given set is not a freezing set");

    MinimalityResult result;
    result.minimal = true;
    std::optional<CubeSpec> cube = as_full_cube(X);
    for (const auto& a : canon) {
        if (auto cert = certified_removal(X, canon, a, cube)) {
            result.removals.push_back(std::move(*cert));
            continue;
        }
        RemovalCheck check{a, verify_freezing(X, set_minus(canon, a), opts), "search"};
        if (check.outcome.frozen()) result.minimal = false;
        result.removals.push_back(std::move(check));
    }
    return result;
}

PointSet greedy_minimize(const DigitalImage& X, const PointSet& A, const VerifyOptions& opts) {
    PointSet current = canonical_point_set(A);
    VerifyOutcome base = verify_freezing(X, current, opts);
    if (!base.frozen())
        throw std::invalid_argument("greedy_minimize: the given set is not a freezing set");

    std::optional<CubeSpec> cube = as_full_cube(X);
    PointSet candidates = current;
    for (const auto& a : candidates) {
        // a certified removal witness means a can never be dropped
        if (certified_removal(X, current, a, cube)) continue;
        PointSet without = set_minus(current, a);
        if (verify_freezing(X, without, opts).frozen()) current = std::move(without);
    }
    return current;
}

const PointSet& DomainReport::domain_of(const DigitalImage& X, const Point& p) const {
    auto idx = X.index_of(p);
    if (!idx)
        throw std::invalid_argument("DomainReport: point " + point_to_string(p) + " is not in the image");
    return domains[*idx];
}

bool DomainReport::all_fixed() const {
    return std::all_of(domains.begin(), domains.end(),
                       [](const PointSet& d) { return d.size() == 1; });
}

DomainReport propagate(const DigitalImage& X, const PointSet& A,
                       const std::vector<std::pair<Point, Point>>& partial, const VerifyOptions& opts) {
    std::vector<int> anchors = anchor_indices(X, A, "propagate");
    std::vector<std::pair<int, int>> partial_idx;
    partial_idx.reserve(partial.size());
    for (const auto& [x, v] : partial) {
        auto xi = X.index_of(x);
        auto vi = X.index_of(v);
        if (!xi || !vi)
            throw std::invalid_argument("propagate: partial assignment mentions a point outside the image");
        partial_idx.emplace_back(*xi, *vi);
    }

    Engine engine(X, opts);
    Table t = engine.fresh_table();
    DomainReport report;
    report.consistent = engine.build_root(t, anchors, partial_idx, report.stats);
    report.domains.resize(X.size());
    if (report.consistent) {
        for (int v = 0; v < X.size(); ++v) {
            const std::uint64_t* row = t.row(v);
            for (int k = 0; k < engine.words(); ++k) {
                std::uint64_t w = row[k];
                while (w) {
                    int val = k * 64 + std::countr_zero(w);
                    w &= w - 1;
                    report.domains[v].push_back(X.point_at(val));
                }
            }
        }
    }
    return report;
}

} // namespace freeze
