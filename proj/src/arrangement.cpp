#include "planwidth/arrangement.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <queue>
#include <string>
#include <unordered_set>

namespace planwidth {

LinearArrangement::LinearArrangement(std::vector<VertexId> order) : order_(std::move(order)) {
    pos_.assign(order_.size(), order_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) {
        auto v = order_[i];
        if (v >= order_.size() || pos_[v] != order_.size())
            throw graph_error("arrangement is not a permutation of [0, n)");
        pos_[v] = i;
    }
}

LinearArrangement LinearArrangement::identity(std::size_t n) {
    std::vector<VertexId> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<VertexId>(i);
    return LinearArrangement(std::move(order));
}

LinearArrangement fold_arrangement(std::size_t n) {
    std::vector<VertexId> order;
    std::size_t lo = 0, hi = n;
    while (lo < hi) {
        order.push_back(static_cast<VertexId>(lo++));
        if (lo < hi) order.push_back(static_cast<VertexId>(--hi));
    }
    return LinearArrangement(std::move(order));
}

namespace {

void require_match(const Graph& g, const LinearArrangement& a) {
    if (g.num_vertices() != a.size())
        throw graph_error("arrangement of size " + std::to_string(a.size()) + " for a graph on " +
                          std::to_string(g.num_vertices()) + " vertices");
}

// max over cuts of a difference array accumulated over positions [0, n-1)
std::size_t max_prefix(const std::vector<long>& diff, std::size_t n) {
    long run = 0, best = 0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        run += diff[k];
        best = std::max(best, run);
    }
    return static_cast<std::size_t>(best);
}

}  // namespace

std::vector<std::size_t> prefix_cuts(const Graph& g, const LinearArrangement& a) {
    require_match(g, a);
    const auto n = g.num_vertices();
    std::vector<long> diff(n + 1, 0);
    for (const auto& e : g.edges()) {
        auto p = a.position(e.u), q = a.position(e.v);
        if (p > q) std::swap(p, q);
        ++diff[p];
        --diff[q];
    }
    std::vector<std::size_t> cuts;
    long run = 0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        run += diff[k];
        cuts.push_back(static_cast<std::size_t>(run));
    }
    return cuts;
}

std::size_t edge_separation(const Graph& g, const LinearArrangement& a) {
    auto cuts = prefix_cuts(g, a);
    return cuts.empty() ? 0 : *std::max_element(cuts.begin(), cuts.end());
}

std::size_t vertex_separation(const Graph& g, const LinearArrangement& a) {
    require_match(g, a);
    const auto n = g.num_vertices();
    std::vector<long> diff(n + 1, 0);
    for (VertexId u = 0; u < n; ++u) {
        std::size_t last = a.position(u);
        for (auto w : g.neighbors(u)) last = std::max(last, a.position(w));
        if (last > a.position(u)) {
            ++diff[a.position(u)];
            --diff[last];
        }
    }
    return max_prefix(diff, n);
}

std::size_t span(const Graph& g, const LinearArrangement& a) {
    require_match(g, a);
    std::size_t best = 0;
    for (const auto& e : g.edges()) {
        auto p = a.position(e.u), q = a.position(e.v);
        best = std::max(best, p > q ? p - q : q - p);
    }
    return best;
}

// ---------------------------------------------------------------------------
// Prefix-set dynamic program shared by cutwidth and pathwidth.
// cost[S] is the value of the cut after a prefix whose vertex set is S.

namespace {

constexpr std::size_t kMaskBits = 30;

using Mask = std::uint32_t;

std::vector<Mask> adjacency_masks(const Graph& g) {
    std::vector<Mask> adj(g.num_vertices(), 0);
    for (const auto& e : g.edges()) {
        adj[e.u] |= Mask{1} << e.v;
        adj[e.v] |= Mask{1} << e.u;
    }
    return adj;
}

ArrangementResult prefix_dp(std::size_t n, const std::vector<std::uint16_t>& cost) {
    const Mask full = n == 32 ? ~Mask{0} : (Mask{1} << n) - 1;
    std::vector<std::uint16_t> best(std::size_t{1} << n, 0);
    for (Mask s = full; s-- > 0;) {
        std::uint16_t b = UINT16_MAX;
        Mask free = full & ~s;
        while (free) {
            Mask bit = free & (~free + 1);
            free ^= bit;
            Mask t = s | bit;
            std::uint16_t here = t == full ? 0 : cost[t];
            b = std::min(b, std::max(here, best[t]));
        }
        best[s] = b;
    }
    // smallest-vertex-first reconstruction gives the lexicographically least optimum
    std::vector<VertexId> order;
    Mask s = 0;
    while (s != full) {
        for (VertexId v = 0; v < n; ++v) {
            Mask bit = Mask{1} << v;
            if (s & bit) continue;
            Mask t = s | bit;
            std::uint16_t here = t == full ? 0 : cost[t];
            if (std::max(here, best[t]) == best[s]) {
                order.push_back(v);
                s = t;
                break;
            }
        }
    }
    return {static_cast<std::size_t>(n == 0 ? 0 : best[0]), LinearArrangement(std::move(order))};
}

void check_limit(const char* name, std::size_t n, std::size_t limit) {
    if (n > limit) throw limit_exceeded(name, n, limit);
    if (n > kMaskBits) throw limit_exceeded(name, n, kMaskBits);
}

}  // namespace

ArrangementResult exact_cutwidth(const Graph& g, const SolverLimits& limits) {
    const auto n = g.num_vertices();
    check_limit("exact_cutwidth", n, limits.cutwidth);
    auto adj = adjacency_masks(g);
    std::vector<std::uint16_t> cut(std::size_t{1} << n, 0);
    for (Mask s = 1; s < (Mask{1} << n); ++s) {
        auto v = static_cast<unsigned>(std::countr_zero(s));
        Mask rest = s & (s - 1);
        cut[s] = static_cast<std::uint16_t>(cut[rest] + g.degree(v) - 2 * std::popcount(adj[v] & rest));
    }
    return prefix_dp(n, cut);
}

ArrangementResult exact_pathwidth(const Graph& g, const SolverLimits& limits) {
    const auto n = g.num_vertices();
    check_limit("exact_pathwidth", n, limits.pathwidth);
    auto adj = adjacency_masks(g);
    const Mask full = (Mask{1} << n) - 1;
    std::vector<Mask> reach(std::size_t{1} << n, 0);
    for (Mask s = 1; s <= full && s != 0; ++s) {
        auto v = static_cast<unsigned>(std::countr_zero(s));
        reach[s] = reach[s & (s - 1)] | adj[v];
    }
    std::vector<std::uint16_t> boundary(std::size_t{1} << n, 0);
    for (Mask s = 0; s <= full; ++s) {
        boundary[s] = static_cast<std::uint16_t>(std::popcount(s & reach[full & ~s]));
        if (s == full) break;
    }
    return prefix_dp(n, boundary);
}

// ---------------------------------------------------------------------------
// Bandwidth: branch and bound over positions left to right, testing b upward.

namespace {

class BandwidthSearch {
public:
    BandwidthSearch(const Graph& g, std::size_t b) : g_(g), n_(g.num_vertices()), b_(b) {
        pos_.assign(n_, kUnplaced);
    }

    bool run() { return dfs(0); }
    const std::vector<VertexId>& order() const { return order_; }

private:
    static constexpr std::size_t kUnplaced = SIZE_MAX;

    bool dfs(std::size_t p) {
        if (p == n_) return true;
        for (VertexId v = 0; v < n_; ++v) {
            if (pos_[v] != kUnplaced || !reachable(v, p)) continue;
            pos_[v] = p;
            order_.push_back(v);
            placed_ |= Mask{1} << v;
            if (deadlines_ok(p)) {
                auto key = state_key(p);
                if (!failed_.contains(key)) {
                    if (dfs(p + 1)) return true;
                    failed_.insert(std::move(key));
                }
            }
            placed_ &= ~(Mask{1} << v);
            order_.pop_back();
            pos_[v] = kUnplaced;
        }
        return false;
    }

    bool reachable(VertexId v, std::size_t p) const {
        for (auto u : g_.neighbors(v))
            if (pos_[u] != kUnplaced && p - pos_[u] > b_) return false;
        return true;
    }

    // every unplaced vertex with a placed neighbor must fit before its deadline
    bool deadlines_ok(std::size_t p) {
        dl_.clear();
        for (VertexId w = 0; w < n_; ++w) {
            if (pos_[w] != kUnplaced) continue;
            std::size_t dl = kUnplaced;
            for (auto u : g_.neighbors(w))
                if (pos_[u] != kUnplaced) dl = std::min(dl, pos_[u] + b_);
            if (dl != kUnplaced) dl_.push_back(dl);
        }
        std::sort(dl_.begin(), dl_.end());
        for (std::size_t i = 0; i < dl_.size(); ++i)
            if (dl_[i] < p + 1 + i) return false;
        return true;
    }

    // the future depends on the placed set and the last b placements
    std::string state_key(std::size_t p) const {
        std::string key(reinterpret_cast<const char*>(&placed_), sizeof(placed_));
        std::size_t from = p + 1 > b_ ? p + 1 - b_ : 0;
        for (std::size_t i = from; i <= p; ++i) key.push_back(static_cast<char>(order_[i]));
        return key;
    }

    const Graph& g_;
    std::size_t n_;
    std::size_t b_;
    std::vector<std::size_t> pos_;
    std::vector<VertexId> order_;
    std::vector<std::size_t> dl_;
    Mask placed_ = 0;
    std::unordered_set<std::string> failed_;
};

std::size_t bandwidth_lower_bound(const Graph& g) {
    if (g.num_edges() == 0) return 0;
    std::size_t lb = std::max<std::size_t>(1, (max_degree(g) + 1) / 2);
    // a component of c vertices and diameter D needs b >= (c-1)/D
    for (const auto& comp : components(g)) {
        if (comp.size() < 2) continue;
        std::size_t diam = 0;
        for (auto s : comp) {
            std::vector<std::size_t> dist(g.num_vertices(), SIZE_MAX);
            std::queue<VertexId> q;
            dist[s] = 0;
            q.push(s);
            while (!q.empty()) {
                auto x = q.front();
                q.pop();
                diam = std::max(diam, dist[x]);
                for (auto y : g.neighbors(x))
                    if (dist[y] == SIZE_MAX) {
                        dist[y] = dist[x] + 1;
                        q.push(y);
                    }
            }
        }
        lb = std::max(lb, (comp.size() - 1 + diam - 1) / diam);
    }
    return lb;
}

}  // namespace

ArrangementResult exact_bandwidth(const Graph& g, const SolverLimits& limits) {
    const auto n = g.num_vertices();
    check_limit("exact_bandwidth", n, limits.bandwidth);
    if (g.num_edges() == 0) return {0, LinearArrangement::identity(n)};
    for (std::size_t b = bandwidth_lower_bound(g);; ++b) {
        BandwidthSearch search(g, b);
        if (search.run()) return {b, LinearArrangement(search.order())};
    }
}

TreeDecomposition arrangement_to_path_decomposition(const Graph& g, const LinearArrangement& a) {
    require_match(g, a);
    const auto n = g.num_vertices();
    std::vector<std::size_t> last(n);
    for (VertexId u = 0; u < n; ++u) {
        last[u] = a.position(u);
        for (auto w : g.neighbors(u)) last[u] = std::max(last[u], a.position(w));
    }
    TreeDecomposition td;
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<VertexId> bag{a.at(i)};
        for (std::size_t j = 0; j < i; ++j)
            if (last[a.at(j)] >= i) bag.push_back(a.at(j));
        std::sort(bag.begin(), bag.end());
        td.bags.push_back(std::move(bag));
        if (i > 0) edges.push_back({static_cast<NodeId>(i - 1), static_cast<NodeId>(i)});
    }
    td.tree = Tree(n, std::move(edges));
    return td;
}

}  // namespace planwidth
