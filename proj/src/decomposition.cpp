#include "planwidth/decomposition.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_set>

namespace planwidth {

const char* fault_tag(DecompositionFault f) {
    switch (f) {
        case DecompositionFault::malformed_tree: return "malformed-tree";
        case DecompositionFault::unknown_vertex: return "unknown-vertex";
        case DecompositionFault::vertex_missing: return "vertex-missing";
        case DecompositionFault::edge_uncovered: return "edge-uncovered";
        case DecompositionFault::disconnected_bags: return "disconnected-bags";
        case DecompositionFault::bad_degree: return "bad-degree";
        case DecompositionFault::unlabelled_leaf: return "unlabelled-leaf";
        case DecompositionFault::duplicate_label: return "duplicate-label";
        case DecompositionFault::not_ancestral: return "not-ancestral";
    }
    return "?";
}

decomposition_error::decomposition_error(DecompositionFault fault, std::string detail,
                                         std::vector<std::size_t> witness)
    : std::runtime_error(std::string(fault_tag(fault)) + ": " + detail),
      fault_(fault),
      witness_(std::move(witness)) {}

namespace {

using Mask = std::uint32_t;

std::vector<Mask> adjacency_masks(const Graph& g) {
    std::vector<Mask> adj(g.num_vertices(), 0);
    for (const auto& e : g.edges()) {
        adj[e.u] |= Mask{1} << e.v;
        adj[e.v] |= Mask{1} << e.u;
    }
    return adj;
}

void check_limit(const char* name, std::size_t n, std::size_t limit) {
    if (n > limit) throw limit_exceeded(name, n, limit);
    if (n > 30) throw limit_exceeded(name, n, 30);
}

// Labels on leaves; internal nodes degree 3. Returns the node of each label.
template <class Label>
std::vector<NodeId> check_leaf_labels(const Tree& t, const std::vector<std::optional<Label>>& labels,
                                      std::size_t label_count, const char* what) {
    if (labels.size() != t.size())
        throw decomposition_error(DecompositionFault::malformed_tree,
                                  std::string(what) + " labels do not match the tree size");
    constexpr NodeId none = UINT32_MAX;
    std::vector<NodeId> node_of(label_count, none);
    for (NodeId x = 0; x < t.size(); ++x) {
        if (labels[x]) {
            auto l = static_cast<std::size_t>(*labels[x]);
            if (l >= label_count)
                throw decomposition_error(DecompositionFault::unknown_vertex,
                                          std::string(what) + " label " + std::to_string(l) + " out of range", {l});
            if (t.degree(x) > 1)
                throw decomposition_error(DecompositionFault::bad_degree,
                                          "labelled node " + std::to_string(x) + " is not a leaf", {x});
            if (node_of[l] != none)
                throw decomposition_error(DecompositionFault::duplicate_label,
                                          std::string(what) + " " + std::to_string(l) + " labels two leaves", {l});
            node_of[l] = x;
        } else if (t.degree(x) <= 1) {
            throw decomposition_error(DecompositionFault::unlabelled_leaf,
                                      "leaf node " + std::to_string(x) + " has no label", {x});
        } else if (t.degree(x) != 3) {
            throw decomposition_error(DecompositionFault::bad_degree,
                                      "internal node " + std::to_string(x) + " has degree " +
                                          std::to_string(t.degree(x)),
                                      {x});
        }
    }
    for (std::size_t l = 0; l < label_count; ++l)
        if (node_of[l] == none)
            throw decomposition_error(DecompositionFault::vertex_missing,
                                      std::string(what) + " " + std::to_string(l) + " is on no leaf", {l});
    return node_of;
}

// index of the tree edge above each non-root node
std::vector<std::size_t> edge_above(const Tree& t, const RootedView& r) {
    std::vector<std::size_t> above(t.size(), SIZE_MAX);
    auto edges = t.edges();
    for (std::size_t k = 0; k < edges.size(); ++k) {
        auto [a, b] = edges[k];
        above[r.parent[a] == static_cast<std::int64_t>(b) ? a : b] = k;
    }
    return above;
}

}  // namespace

// ---------------------------------------------------------------------------

long validate_tree_decomposition(const Graph& g, const TreeDecomposition& td) {
    const auto& t = td.tree;
    const auto n = g.num_vertices();
    if (td.bags.size() != t.size())
        throw decomposition_error(DecompositionFault::malformed_tree, "bag count differs from tree size");
    std::vector<std::vector<NodeId>> where(n);
    long width = -1;
    std::vector<std::vector<VertexId>> sorted(td.bags.size());
    for (NodeId x = 0; x < t.size(); ++x) {
        sorted[x] = td.bags[x];
        std::sort(sorted[x].begin(), sorted[x].end());
        sorted[x].erase(std::unique(sorted[x].begin(), sorted[x].end()), sorted[x].end());
        for (auto v : sorted[x]) {
            if (v >= n)
                throw decomposition_error(DecompositionFault::unknown_vertex,
                                          "bag " + std::to_string(x) + " names vertex " + std::to_string(v), {v});
            where[v].push_back(x);
        }
        width = std::max(width, static_cast<long>(sorted[x].size()) - 1);
    }
    for (VertexId v = 0; v < n; ++v)
        if (where[v].empty())
            throw decomposition_error(DecompositionFault::vertex_missing,
                                      "vertex " + std::to_string(v) + " is in no bag", {v});
    for (const auto& e : g.edges()) {
        bool ok = false;
        for (auto x : where[e.u])
            if (std::binary_search(sorted[x].begin(), sorted[x].end(), e.v)) {
                ok = true;
                break;
            }
        if (!ok)
            throw decomposition_error(DecompositionFault::edge_uncovered,
                                      "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " is in no bag",
                                      {e.u, e.v});
    }
    // the bags holding v induce a subtree iff (#tree edges inside) = (#bags) - 1
    std::vector<std::size_t> inner(n, 0);
    for (auto [a, b] : t.edges()) {
        std::vector<VertexId> common;
        std::set_intersection(sorted[a].begin(), sorted[a].end(), sorted[b].begin(), sorted[b].end(),
                              std::back_inserter(common));
        for (auto v : common) ++inner[v];
    }
    for (VertexId v = 0; v < n; ++v)
        if (inner[v] + 1 != where[v].size())
            throw decomposition_error(DecompositionFault::disconnected_bags,
                                      "bags of vertex " + std::to_string(v) + " are not connected", {v});
    return width;
}

std::vector<std::size_t> carving_edge_cuts(const Graph& g, const CarvingDecomposition& cd) {
    const auto& t = cd.tree;
    auto node_of = check_leaf_labels(t, cd.leaf_vertex, g.num_vertices(), "vertex");
    std::vector<std::size_t> cuts(t.edges().size(), 0);
    if (t.size() <= 1) return cuts;
    auto r = root_tree(t, 0);
    auto above = edge_above(t, r);
    for (const auto& e : g.edges()) {
        auto a = node_of[e.u], b = node_of[e.v];
        while (a != b) {
            if (r.depth[a] < r.depth[b]) std::swap(a, b);
            ++cuts[above[a]];
            a = static_cast<NodeId>(r.parent[a]);
        }
    }
    return cuts;
}

std::size_t validate_carving(const Graph& g, const CarvingDecomposition& cd) {
    auto cuts = carving_edge_cuts(g, cd);
    return cuts.empty() ? 0 : *std::max_element(cuts.begin(), cuts.end());
}

std::size_t validate_branch(const Graph& g, const BranchDecomposition& bd) {
    const auto& t = bd.tree;
    auto node_of = check_leaf_labels(t, bd.leaf_edge, g.num_edges(), "edge");
    if (t.size() <= 1) return 0;
    auto r = root_tree(t, 0);
    auto above = edge_above(t, r);
    std::vector<std::size_t> count(t.edges().size(), 0);
    std::vector<std::size_t> stamp(t.edges().size(), SIZE_MAX);

    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (g.degree(v) < 2) continue;
        std::vector<NodeId> leaves;
        for (auto w : g.neighbors(v)) leaves.push_back(node_of[*g.edge_id(v, w)]);
        // lowest common ancestor of all incident leaves
        NodeId top = leaves[0];
        for (std::size_t i = 1; i < leaves.size(); ++i) {
            NodeId a = top, b = leaves[i];
            while (a != b) {
                if (r.depth[a] < r.depth[b]) std::swap(a, b);
                a = static_cast<NodeId>(r.parent[a]);
            }
            top = a;
        }
        for (auto x : leaves) {
            while (x != top) {
                auto k = above[x];
                if (stamp[k] == v) break;
                stamp[k] = v;
                ++count[k];
                x = static_cast<NodeId>(r.parent[x]);
            }
        }
    }
    return *std::max_element(count.begin(), count.end());
}

std::size_t validate_elimination_forest(const Graph& g, const EliminationForest& f) {
    const auto n = g.num_vertices();
    if (f.parent.size() != n)
        throw decomposition_error(DecompositionFault::malformed_tree, "forest size differs from vertex count");
    std::vector<std::size_t> depth(n, 0);
    std::vector<int> state(n, 0);  // 0 new, 1 on the current walk, 2 done
    for (VertexId v = 0; v < n; ++v) {
        std::vector<VertexId> path;
        VertexId x = v;
        bool at_root = false;
        while (state[x] == 0) {
            state[x] = 1;
            path.push_back(x);
            if (!f.parent[x]) {
                at_root = true;
                break;
            }
            if (*f.parent[x] >= n)
                throw decomposition_error(DecompositionFault::unknown_vertex, "parent out of range", {x});
            x = *f.parent[x];
            if (state[x] == 1)
                throw decomposition_error(DecompositionFault::malformed_tree, "parent pointers form a cycle", {x});
        }
        std::size_t d = at_root ? 0 : depth[x];
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
            depth[*it] = ++d;
            state[*it] = 2;
        }
    }
    for (const auto& e : g.edges()) {
        VertexId a = e.u, b = e.v;
        if (depth[a] < depth[b]) std::swap(a, b);
        while (depth[a] > depth[b]) a = *f.parent[a];
        if (a != b)
            throw decomposition_error(DecompositionFault::not_ancestral,
                                      "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                                          " joins unrelated vertices",
                                      {e.u, e.v});
    }
    // depth counts edges on the longest root path
    return n == 0 ? 0 : *std::max_element(depth.begin(), depth.end()) - 1;
}

// ---------------------------------------------------------------------------

TreeDecomposition decomposition_from_elimination(const Graph& g, const std::vector<VertexId>& order) {
    const auto n = g.num_vertices();
    LinearArrangement check(order);  // throws unless a permutation
    if (check.size() != n) throw graph_error("elimination order has the wrong size");
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (const auto& e : g.edges()) adj[e.u][e.v] = adj[e.v][e.u] = 1;
    std::vector<bool> gone(n, false);
    TreeDecomposition td;
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<NodeId> roots;
    for (std::size_t i = 0; i < n; ++i) {
        auto v = order[i];
        std::vector<VertexId> later;
        for (VertexId w = 0; w < n; ++w)
            if (!gone[w] && w != v && adj[v][w]) later.push_back(w);
        for (auto a : later)
            for (auto b : later)
                if (a != b) adj[a][b] = 1;
        gone[v] = true;
        std::vector<VertexId> bag = later;
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        td.bags.push_back(std::move(bag));
        if (later.empty()) {
            roots.push_back(static_cast<NodeId>(i));
        } else {
            std::size_t first = n;
            for (auto w : later) first = std::min(first, check.position(w));
            edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(first)});
        }
    }
    for (std::size_t k = 0; k + 1 < roots.size(); ++k) edges.push_back({roots[k], roots[k + 1]});
    td.tree = Tree(n, std::move(edges));
    return td;
}

namespace {

// min-fill greedy order; its width is an upper bound for the exact search
std::vector<VertexId> min_fill_order(const Graph& g) {
    const auto n = g.num_vertices();
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (const auto& e : g.edges()) adj[e.u][e.v] = adj[e.v][e.u] = 1;
    std::vector<bool> gone(n, false);
    std::vector<VertexId> order;
    for (std::size_t step = 0; step < n; ++step) {
        VertexId best = 0;
        std::size_t best_fill = SIZE_MAX;
        for (VertexId v = 0; v < n; ++v) {
            if (gone[v]) continue;
            std::vector<VertexId> nb;
            for (VertexId w = 0; w < n; ++w)
                if (!gone[w] && adj[v][w]) nb.push_back(w);
            std::size_t fill = 0;
            for (std::size_t i = 0; i < nb.size(); ++i)
                for (std::size_t j = i + 1; j < nb.size(); ++j)
                    if (!adj[nb[i]][nb[j]]) ++fill;
            if (fill < best_fill) {
                best_fill = fill;
                best = v;
            }
        }
        for (VertexId a = 0; a < n; ++a)
            for (VertexId b = 0; b < n; ++b)
                if (a != b && !gone[a] && !gone[b] && adj[best][a] && adj[best][b]) adj[a][b] = 1;
        gone[best] = true;
        order.push_back(best);
    }
    return order;
}

// |Q(s, v)|: vertices outside s+v reachable from v through s
int q_size(const std::vector<Mask>& adj, Mask s, unsigned v) {
    Mask comp = Mask{1} << v, frontier = comp, reach = adj[v];
    while (frontier) {
        Mask next = 0;
        for (Mask f = frontier; f; f &= f - 1) next |= adj[std::countr_zero(f)];
        reach |= next;
        Mask grow = next & s & ~comp;
        comp |= grow;
        frontier = grow;
    }
    return std::popcount(reach & ~s & ~(Mask{1} << v));
}

}  // namespace

namespace {

// minor-min-width: contract a min-degree vertex into its min-degree neighbour
long minor_min_width(const Graph& g) {
    const auto n = g.num_vertices();
    std::vector<std::set<VertexId>> adj(n);
    for (const auto& e : g.edges()) {
        adj[e.u].insert(e.v);
        adj[e.v].insert(e.u);
    }
    std::vector<bool> alive(n, true);
    long lb = 0;
    for (std::size_t left = n; left > 0; --left) {
        VertexId v = 0;
        std::size_t best = SIZE_MAX;
        for (VertexId x = 0; x < n; ++x)
            if (alive[x] && adj[x].size() < best) {
                best = adj[x].size();
                v = x;
            }
        lb = std::max(lb, static_cast<long>(best));
        alive[v] = false;
        if (adj[v].empty()) continue;
        VertexId u = *std::min_element(adj[v].begin(), adj[v].end(),
                                       [&](VertexId a, VertexId b) { return adj[a].size() < adj[b].size(); });
        for (auto w : adj[v]) {
            adj[w].erase(v);
            if (w != u) {
                adj[w].insert(u);
                adj[u].insert(w);
            }
        }
        adj[v].clear();
    }
    return lb;
}

// Is there an elimination order whose bags have at most k+1 vertices? Depth-first over
// eliminated sets, remembering the sets already known to fail.
class TreewidthSearch {
public:
    TreewidthSearch(const std::vector<Mask>& adj, unsigned n, int k) : adj_(adj), n_(n), k_(k) {}

    bool run(std::vector<VertexId>& order) {
        order.clear();
        return extend(0, order);
    }

private:
    bool extend(Mask s, std::vector<VertexId>& order) {
        if (n_ - static_cast<unsigned>(std::popcount(s)) <= static_cast<unsigned>(k_) + 1) {
            for (unsigned v = 0; v < n_; ++v)
                if (!(s & (Mask{1} << v))) order.push_back(v);
            return true;
        }
        if (failed_.count(s)) return false;
        for (unsigned v = 0; v < n_; ++v) {
            if (s & (Mask{1} << v)) continue;
            if (q_size(adj_, s, v) > k_) continue;
            order.push_back(v);
            if (extend(s | (Mask{1} << v), order)) return true;
            order.pop_back();
        }
        failed_.insert(s);
        return false;
    }

    const std::vector<Mask>& adj_;
    unsigned n_;
    int k_;
    std::unordered_set<Mask> failed_;
};

}  // namespace

TreewidthResult exact_treewidth(const Graph& g, const SolverLimits& limits) {
    const auto n = g.num_vertices();
    check_limit("exact_treewidth", n, limits.treewidth);
    TreewidthResult res;
    if (n == 0) {
        res.decomposition.tree = Tree();
        return res;
    }
    auto heuristic = min_fill_order(g);
    auto heuristic_td = decomposition_from_elimination(g, heuristic);
    const long ub = validate_tree_decomposition(g, heuristic_td);
    const long lb = minor_min_width(g);

    auto adj = adjacency_masks(g);
    for (long k = lb; k < ub; ++k) {
        TreewidthSearch search(adj, static_cast<unsigned>(n), static_cast<int>(k));
        std::vector<VertexId> order;
        if (!search.run(order)) continue;
        res.decomposition = decomposition_from_elimination(g, order);
        res.width = validate_tree_decomposition(g, res.decomposition);
        if (res.width > k) throw std::logic_error("treewidth search produced a wider order");
        res.elimination_order = std::move(order);
        return res;
    }
    res.width = ub;
    res.elimination_order = std::move(heuristic);
    res.decomposition = std::move(heuristic_td);
    return res;
}

// ---------------------------------------------------------------------------

namespace {

class TreedepthSolver {
public:
    explicit TreedepthSolver(const Graph& g)
        : adj_(adjacency_masks(g)), memo_(std::size_t{1} << g.num_vertices(), -1) {}

    int depth(Mask s) {
        if (s == 0) return 0;
        if (memo_[s] >= 0) return memo_[s];
        auto comps = split(s);
        int best;
        if (comps.size() > 1) {
            best = 0;
            for (auto c : comps) best = std::max(best, depth(c));
        } else {
            best = INT32_MAX;
            for (Mask r = s; r; r &= r - 1) best = std::min(best, 1 + depth(s & ~(r & (~r + 1))));
        }
        return memo_[s] = static_cast<std::int8_t>(best);
    }

    void build(Mask s, std::optional<VertexId> parent, EliminationForest& f) {
        for (auto c : split(s)) {
            int target = depth(c);
            for (Mask r = c; r; r &= r - 1) {
                auto v = static_cast<VertexId>(std::countr_zero(r));
                Mask rest = c & ~(Mask{1} << v);
                if (1 + depth(rest) == target) {
                    f.parent[v] = parent;
                    build(rest, v, f);
                    break;
                }
            }
        }
    }

private:
    std::vector<Mask> split(Mask s) const {
        std::vector<Mask> out;
        Mask left = s;
        while (left) {
            Mask comp = left & (~left + 1), frontier = comp;
            while (frontier) {
                Mask next = 0;
                for (Mask f = frontier; f; f &= f - 1) next |= adj_[std::countr_zero(f)];
                next &= s & ~comp;
                comp |= next;
                frontier = next;
            }
            out.push_back(comp);
            left &= ~comp;
        }
        return out;
    }

    std::vector<Mask> adj_;
    std::vector<std::int8_t> memo_;
};

}  // namespace

TreedepthResult exact_treedepth(const Graph& g, const SolverLimits& limits) {
    const auto n = g.num_vertices();
    check_limit("exact_treedepth", n, limits.treedepth);
    TreedepthSolver solver(g);
    TreedepthResult res;
    const Mask full = (Mask{1} << n) - 1;
    // the solver counts levels; depth is one less (edges on the longest root path)
    const auto levels = static_cast<std::size_t>(solver.depth(full));
    res.depth = levels == 0 ? 0 : levels - 1;
    res.forest.parent.assign(n, std::nullopt);
    solver.build(full, std::nullopt, res.forest);
    return res;
}

// ---------------------------------------------------------------------------

CarvingResult exact_carving_width(const Graph& g, const SolverLimits& limits) {
    const auto n = g.num_vertices();
    check_limit("exact_carving_width", n, limits.carving);
    CarvingResult res;
    if (n == 0) return res;
    if (n == 1) {
        res.decomposition.tree = Tree(1, {});
        res.decomposition.leaf_vertex = {VertexId{0}};
        return res;
    }
    auto adj = adjacency_masks(g);
    const Mask full = (Mask{1} << n) - 1;
    std::vector<std::uint16_t> cut(std::size_t{1} << n, 0);
    for (Mask s = 1; s <= full; ++s) {
        auto v = static_cast<unsigned>(std::countr_zero(s));
        Mask rest = s & (s - 1);
        cut[s] = static_cast<std::uint16_t>(cut[rest] + g.degree(v) - 2 * std::popcount(adj[v] & rest));
    }
    // f[s]: best width of a rooted binary tree on s, counting the cuts of every proper cluster
    std::vector<std::uint16_t> f(std::size_t{1} << n, 0);
    std::vector<Mask> split(std::size_t{1} << n, 0);
    for (Mask s = 1; s <= full; ++s) {
        if ((s & (s - 1)) == 0) continue;
        Mask low = s & (~s + 1), rest = s ^ low;
        std::uint16_t best = UINT16_MAX;
        Mask choice = 0;
        // part A = low + b, with b a proper submask of rest, visited in increasing order
        for (Mask b = 0;; b = (b - rest) & rest) {
            if (b == rest) break;
            Mask a = low | b, c = s ^ a;
            std::uint16_t here = std::max({cut[a], cut[c], f[a], f[c]});
            if (here < best) {
                best = here;
                choice = a;
            }
        }
        f[s] = best;
        split[s] = choice;
    }
    res.width = f[full];

    std::vector<std::pair<NodeId, NodeId>> edges;
    NodeId next = static_cast<NodeId>(n);
    std::function<NodeId(Mask)> build = [&](Mask s) -> NodeId {
        if ((s & (s - 1)) == 0) return static_cast<NodeId>(std::countr_zero(s));
        NodeId x = next++;
        edges.push_back({x, build(split[s])});
        edges.push_back({x, build(s ^ split[s])});
        return x;
    };
    // the root cluster is suppressed: its two halves are joined by one edge
    NodeId left = build(split[full]);
    NodeId right = build(full ^ split[full]);
    edges.push_back({left, right});
    res.decomposition.tree = Tree(next, std::move(edges));
    res.decomposition.leaf_vertex.assign(next, std::nullopt);
    for (VertexId v = 0; v < n; ++v) res.decomposition.leaf_vertex[v] = v;
    return res;
}

// ---------------------------------------------------------------------------

CarvingDecomposition caterpillar_carving_from_arrangement(const Graph& g, const LinearArrangement& a) {
    const auto n = g.num_vertices();
    if (a.size() != n) throw graph_error("arrangement size differs from vertex count");
    CarvingDecomposition cd;
    std::vector<std::pair<NodeId, NodeId>> edges;
    if (n >= 3) {
        // spine node n + (i - 1) carries the leaf at position i, for i in 1..n-2
        auto spine = [n](std::size_t i) { return static_cast<NodeId>(n + i - 1); };
        edges.push_back({a.at(0), spine(1)});
        for (std::size_t i = 1; i + 1 < n; ++i) {
            edges.push_back({a.at(i), spine(i)});
            if (i + 2 < n) edges.push_back({spine(i), spine(i + 1)});
        }
        edges.push_back({a.at(n - 1), spine(n - 2)});
        cd.tree = Tree(2 * n - 2, std::move(edges));
    } else if (n == 2) {
        cd.tree = Tree(2, {{0, 1}});
    } else {
        cd.tree = Tree(n, {});
    }
    cd.leaf_vertex.assign(cd.tree.size(), std::nullopt);
    for (VertexId v = 0; v < n; ++v) cd.leaf_vertex[v] = v;
    return cd;
}

// ---------------------------------------------------------------------------
// Small mutable tree used by the conversions.

namespace {

struct MutableTree {
    std::vector<std::set<NodeId>> adj;
    std::vector<bool> alive;
    std::vector<std::optional<std::uint32_t>> label;

    template <class L>
    MutableTree(const Tree& t, const std::vector<std::optional<L>>& labels) {
        adj.resize(t.size());
        alive.assign(t.size(), true);
        for (auto [a, b] : t.edges()) {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        for (const auto& l : labels) label.push_back(l ? std::optional<std::uint32_t>(*l) : std::nullopt);
    }

    NodeId add(std::optional<std::uint32_t> l) {
        adj.emplace_back();
        alive.push_back(true);
        label.push_back(l);
        return static_cast<NodeId>(adj.size() - 1);
    }

    void link(NodeId a, NodeId b) {
        adj[a].insert(b);
        adj[b].insert(a);
    }

    void unlink(NodeId a, NodeId b) {
        adj[a].erase(b);
        adj[b].erase(a);
    }

    // drop a leaf; an unlabelled neighbour left with degree 2 is suppressed
    void remove_leaf(NodeId x) {
        alive[x] = false;
        if (adj[x].empty()) return;
        NodeId p = *adj[x].begin();
        unlink(x, p);
        if (!label[p] && adj[p].size() == 2) {
            NodeId a = *adj[p].begin(), b = *std::next(adj[p].begin());
            unlink(p, a);
            unlink(p, b);
            link(a, b);
            alive[p] = false;
        }
    }

    // replace labelled leaf x by a binary caterpillar over `items` (at least 2)
    void expand(NodeId x, const std::vector<std::uint32_t>& items) {
        label[x] = std::nullopt;
        NodeId cur = x;
        for (std::size_t i = 0; i + 2 < items.size(); ++i) {
            link(cur, add(items[i]));
            NodeId nxt = add(std::nullopt);
            link(cur, nxt);
            cur = nxt;
        }
        link(cur, add(items[items.size() - 2]));
        link(cur, add(items.back()));
        if (adj[x].size() == 2) {
            // x had no neighbour: it is now a degree-2 node between two leaves
            NodeId a = *adj[x].begin(), b = *std::next(adj[x].begin());
            unlink(x, a);
            unlink(x, b);
            link(a, b);
            alive[x] = false;
        }
    }

    template <class L>
    std::pair<Tree, std::vector<std::optional<L>>> compact() const {
        std::vector<NodeId> index(adj.size(), UINT32_MAX);
        NodeId next = 0;
        for (std::size_t x = 0; x < adj.size(); ++x)
            if (alive[x]) index[x] = next++;
        std::vector<std::pair<NodeId, NodeId>> edges;
        std::vector<std::optional<L>> labels(next);
        for (std::size_t x = 0; x < adj.size(); ++x) {
            if (!alive[x]) continue;
            if (label[x]) labels[index[x]] = static_cast<L>(*label[x]);
            for (auto y : adj[x])
                if (x < y) edges.push_back({index[x], index[y]});
        }
        return {Tree(next, std::move(edges)), std::move(labels)};
    }
};

void require_no_isolated(const Graph& g) {
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        if (g.degree(v) == 0) throw graph_error("vertex " + std::to_string(v) + " is isolated");
}

}  // namespace

CarvingDecomposition combine_carvings(std::size_t n, const std::vector<CarvingDecomposition>& parts,
                                      const std::vector<std::vector<VertexId>>& vertex_sets) {
    if (parts.size() != vertex_sets.size()) throw graph_error("part/vertex-set count mismatch");
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<std::optional<VertexId>> labels;
    std::vector<NodeId> attach;
    NodeId base = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& p = parts[i];
        for (const auto& l : p.leaf_vertex) {
            if (l && *l >= vertex_sets[i].size()) throw graph_error("part label outside its vertex set");
            labels.push_back(l ? std::optional<VertexId>(vertex_sets[i][*l]) : std::nullopt);
        }
        auto tedges = p.tree.edges();
        if (p.tree.size() == 0) throw graph_error("empty part");
        if (tedges.empty() || parts.size() == 1) {
            attach.push_back(base);
            for (auto [a, b] : tedges) edges.push_back({base + a, base + b});
        } else {
            // subdivide the first edge to open a port
            NodeId s = base + static_cast<NodeId>(p.tree.size());
            labels.push_back(std::nullopt);
            edges.push_back({base + tedges[0].first, s});
            edges.push_back({s, base + tedges[0].second});
            for (std::size_t k = 1; k < tedges.size(); ++k)
                edges.push_back({base + tedges[k].first, base + tedges[k].second});
            attach.push_back(s);
        }
        base = static_cast<NodeId>(labels.size());
    }
    const auto k = attach.size();
    if (k == 2) {
        edges.push_back({attach[0], attach[1]});
    } else if (k >= 3) {
        for (std::size_t i = 0; i + 2 < k; ++i) labels.push_back(std::nullopt);
        auto spine = [&](std::size_t i) { return static_cast<NodeId>(base + i); };
        edges.push_back({attach[0], spine(0)});
        for (std::size_t i = 0; i + 2 < k; ++i) {
            edges.push_back({attach[i + 1], spine(i)});
            if (i + 3 < k) edges.push_back({spine(i), spine(i + 1)});
        }
        edges.push_back({attach[k - 1], spine(k - 3)});
    }
    CarvingDecomposition cd;
    cd.tree = Tree(labels.size(), std::move(edges));
    cd.leaf_vertex = std::move(labels);
    std::vector<bool> seen(n, false);
    for (const auto& l : cd.leaf_vertex)
        if (l) {
            if (*l >= n || seen[*l]) throw graph_error("combined carving labels are not a bijection");
            seen[*l] = true;
        }
    return cd;
}

BranchDecomposition carving_to_branch(const Graph& g, const CarvingDecomposition& cd) {
    validate_carving(g, cd);
    require_no_isolated(g);
    const auto n = g.num_vertices();
    std::vector<std::vector<std::uint32_t>> assigned(n);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        auto [u, v] = g.edge(e);
        VertexId owner = (assigned[u].empty() && !assigned[v].empty()) ? v : u;
        assigned[owner].push_back(e);
    }
    MutableTree mt(cd.tree, cd.leaf_vertex);
    std::vector<NodeId> leaf_of(n);
    for (NodeId x = 0; x < cd.tree.size(); ++x)
        if (cd.leaf_vertex[x]) leaf_of[*cd.leaf_vertex[x]] = x;
    for (VertexId v = 0; v < n; ++v) {
        auto x = leaf_of[v];
        if (assigned[v].size() == 1) mt.label[x] = assigned[v][0];
        else if (assigned[v].size() >= 2) mt.expand(x, assigned[v]);
    }
    for (VertexId v = 0; v < n; ++v)
        if (assigned[v].empty()) mt.remove_leaf(leaf_of[v]);
    auto [tree, labels] = mt.compact<EdgeId>();
    return BranchDecomposition{std::move(tree), std::move(labels)};
}

CarvingDecomposition branch_to_carving(const Graph& g, const BranchDecomposition& bd) {
    validate_branch(g, bd);
    require_no_isolated(g);
    const auto m = g.num_edges();
    std::vector<std::vector<std::uint32_t>> assigned(m);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        EdgeId best = UINT32_MAX;
        for (auto w : g.neighbors(v)) best = std::min(best, *g.edge_id(v, w));
        assigned[best].push_back(v);
    }
    MutableTree mt(bd.tree, bd.leaf_edge);
    std::vector<NodeId> leaf_of(m);
    for (NodeId x = 0; x < bd.tree.size(); ++x)
        if (bd.leaf_edge[x]) leaf_of[*bd.leaf_edge[x]] = x;
    for (EdgeId e = 0; e < m; ++e) {
        auto x = leaf_of[e];
        if (assigned[e].size() == 1) mt.label[x] = assigned[e][0];
        else if (assigned[e].size() == 2) mt.expand(x, assigned[e]);
    }
    for (EdgeId e = 0; e < m; ++e)
        if (assigned[e].empty()) mt.remove_leaf(leaf_of[e]);
    auto [tree, labels] = mt.compact<VertexId>();
    return CarvingDecomposition{std::move(tree), std::move(labels)};
}

// ---------------------------------------------------------------------------

namespace {

void check_binary_tree(const Tree& t) {
    for (NodeId x = 0; x < t.size(); ++x)
        if (t.degree(x) > 3)
            throw graph_error("malformed tree: node " + std::to_string(x) + " has degree " +
                              std::to_string(t.degree(x)));
}

}  // namespace

RestrictedPartition restricted_partition(const Tree& t, std::size_t z) {
    if (z < 1) throw graph_error("restricted partition order must be at least 1");
    check_binary_tree(t);
    const auto n = t.size();
    std::vector<std::size_t> rep(n), size(n, 1), boundary(n);
    std::vector<NodeId> low(n);
    std::vector<std::vector<NodeId>> members(n);
    for (NodeId x = 0; x < n; ++x) {
        rep[x] = x;
        low[x] = x;
        boundary[x] = t.degree(x);
        members[x] = {x};
    }
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (rep[x] != x) x = rep[x] = rep[rep[x]];
        return x;
    };

    for (bool changed = true; changed;) {
        changed = false;
        std::vector<std::size_t> order;
        for (std::size_t x = 0; x < n; ++x)
            if (find(x) == x) order.push_back(x);
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return low[a] < low[b]; });
        for (auto b : order) {
            if (find(b) != b) continue;
            std::vector<std::size_t> nbrs;
            for (auto x : members[b])
                for (auto y : t.neighbors(x)) {
                    auto c = find(y);
                    if (c != b) nbrs.push_back(c);
                }
            std::sort(nbrs.begin(), nbrs.end(), [&](auto p, auto q) { return low[p] < low[q]; });
            nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
            for (auto c : nbrs) {
                if (size[b] + size[c] > z || boundary[b] + boundary[c] - 2 > 2) continue;
                auto [big, small] = members[b].size() >= members[c].size() ? std::pair{b, c} : std::pair{c, b};
                rep[small] = big;
                size[big] += size[small];
                boundary[big] = boundary[b] + boundary[c] - 2;
                low[big] = std::min(low[b], low[c]);
                members[big].insert(members[big].end(), members[small].begin(), members[small].end());
                members[small].clear();
                changed = true;
                break;
            }
        }
    }

    RestrictedPartition rp;
    rp.z = z;
    std::vector<std::size_t> roots;
    for (std::size_t x = 0; x < n; ++x)
        if (find(x) == x) roots.push_back(x);
    std::sort(roots.begin(), roots.end(), [&](auto a, auto b) { return low[a] < low[b]; });
    rp.block_of.assign(n, 0);
    for (auto r : roots) {
        auto block = members[r];
        std::sort(block.begin(), block.end());
        for (auto x : block) rp.block_of[x] = rp.blocks.size();
        rp.blocks.push_back(std::move(block));
    }
    return rp;
}

std::size_t block_boundary(const Tree& t, const RestrictedPartition& rp, std::size_t block) {
    std::size_t count = 0;
    for (auto [a, b] : t.edges())
        if ((rp.block_of[a] == block) != (rp.block_of[b] == block)) ++count;
    return count;
}

std::optional<std::string> check_restricted_partition(const Tree& t, const RestrictedPartition& rp) {
    const auto n = t.size();
    if (rp.block_of.size() != n) return "block map size differs from tree size";
    std::vector<int> hits(n, 0);
    for (std::size_t b = 0; b < rp.blocks.size(); ++b)
        for (auto x : rp.blocks[b]) {
            if (x >= n || rp.block_of[x] != b) return "block " + std::to_string(b) + " disagrees with the block map";
            ++hits[x];
        }
    for (NodeId x = 0; x < n; ++x)
        if (hits[x] != 1) return "node " + std::to_string(x) + " is not in exactly one block";

    std::vector<std::size_t> boundary(rp.blocks.size(), 0), inner(rp.blocks.size(), 0);
    for (auto [a, b] : t.edges()) {
        if (rp.block_of[a] == rp.block_of[b]) {
            ++inner[rp.block_of[a]];
        } else {
            ++boundary[rp.block_of[a]];
            ++boundary[rp.block_of[b]];
        }
    }
    for (std::size_t b = 0; b < rp.blocks.size(); ++b) {
        const auto sz = rp.blocks[b].size();
        if (inner[b] + 1 != sz) return "block " + std::to_string(b) + " is not connected";
        if (sz > rp.z) return "block " + std::to_string(b) + " exceeds the order z";
        if (boundary[b] > 2 && sz != 1)
            return "block " + std::to_string(b) + " has " + std::to_string(boundary[b]) +
                   " boundary edges but is not a singleton";
    }
    for (auto [a, b] : t.edges()) {
        auto p = rp.block_of[a], q = rp.block_of[b];
        if (p == q) continue;
        if (rp.blocks[p].size() + rp.blocks[q].size() <= rp.z && boundary[p] + boundary[q] - 2 <= 2)
            return "blocks " + std::to_string(p) + " and " + std::to_string(q) + " could still merge";
    }
    return std::nullopt;
}

}  // namespace planwidth
