#include "oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "planwidth/experiment.hpp"

namespace planwidth::oracle {

namespace {

void small_enough(const Graph& g, std::size_t limit, const char* what) {
    if (g.num_vertices() > limit)
        throw limit_exceeded(std::string("oracle ") + what, g.num_vertices(), limit);
}

// minimum of cost(position-of) over all vertex orders
template <class Cost>
std::size_t over_permutations(const Graph& g, Cost cost) {
    const auto n = g.num_vertices();
    std::vector<VertexId> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::size_t best = SIZE_MAX;
    std::vector<std::size_t> pos(n);
    do {
        for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
        best = std::min(best, cost(order, pos));
    } while (std::next_permutation(order.begin(), order.end()));
    return n == 0 ? 0 : best;
}

}  // namespace

std::size_t cutwidth(const Graph& g) {
    small_enough(g, 9, "cutwidth");
    return over_permutations(g, [&](const auto& order, const auto& pos) {
        std::size_t worst = 0;
        for (std::size_t gap = 0; gap + 1 < order.size(); ++gap) {
            std::size_t c = 0;
            for (const auto& e : g.edges())
                if (std::min(pos[e.u], pos[e.v]) <= gap && std::max(pos[e.u], pos[e.v]) > gap) ++c;
            worst = std::max(worst, c);
        }
        return worst;
    });
}

std::size_t pathwidth(const Graph& g) {
    small_enough(g, 9, "pathwidth");
    return over_permutations(g, [&](const auto& order, const auto& pos) {
        std::size_t worst = 0;
        for (std::size_t gap = 0; gap < order.size(); ++gap) {
            // vertices up to gap with a neighbour after gap
            std::size_t c = 0;
            for (std::size_t i = 0; i <= gap; ++i) {
                bool open = false;
                for (auto w : g.neighbors(order[i])) open |= pos[w] > gap;
                c += open;
            }
            worst = std::max(worst, c);
        }
        return worst;
    });
}

std::size_t bandwidth(const Graph& g) {
    small_enough(g, 9, "bandwidth");
    return over_permutations(g, [&](const auto&, const auto& pos) {
        std::size_t worst = 0;
        for (const auto& e : g.edges())
            worst = std::max(worst, pos[e.u] > pos[e.v] ? pos[e.u] - pos[e.v] : pos[e.v] - pos[e.u]);
        return worst;
    });
}

std::size_t treewidth(const Graph& g) {
    small_enough(g, 9, "treewidth");
    const auto n = g.num_vertices();
    if (n == 0) return 0;
    return over_permutations(g, [&](const auto& order, const auto&) {
        std::vector<std::set<VertexId>> adj(n);
        for (const auto& e : g.edges()) {
            adj[e.u].insert(e.v);
            adj[e.v].insert(e.u);
        }
        std::size_t worst = 0;
        for (auto v : order) {
            worst = std::max(worst, adj[v].size());
            for (auto a : adj[v])
                for (auto b : adj[v])
                    if (a != b) adj[a].insert(b);
            for (auto a : adj[v]) adj[a].erase(v);
            adj[v].clear();
        }
        return worst;
    });
}

std::size_t treedepth(const Graph& g) {
    small_enough(g, 16, "treedepth");
    std::map<std::vector<VertexId>, std::size_t> memo;
    std::function<std::size_t(const std::vector<VertexId>&)> td = [&](const std::vector<VertexId>& vs) -> std::size_t {
        if (vs.empty()) return 0;
        if (auto it = memo.find(vs); it != memo.end()) return it->second;
        auto sub = induced_subgraph(g, vs);
        auto comps = components(sub);
        std::size_t out;
        if (comps.size() > 1) {
            out = 0;
            for (const auto& c : comps) {
                std::vector<VertexId> part;
                for (auto x : c) part.push_back(vs[x]);
                std::sort(part.begin(), part.end());
                out = std::max(out, td(part));
            }
        } else {
            out = SIZE_MAX;
            for (std::size_t i = 0; i < vs.size(); ++i) {
                std::vector<VertexId> rest(vs);
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
                out = std::min(out, 1 + td(rest));
            }
        }
        memo[vs] = out;
        return out;
    };
    std::vector<VertexId> all(g.num_vertices());
    std::iota(all.begin(), all.end(), 0);
    // td counts levels; report edges on the longest root path
    auto levels = td(all);
    return levels == 0 ? 0 : levels - 1;
}

std::size_t carving_width(const Graph& g) {
    small_enough(g, 8, "carving_width");
    const auto n = g.num_vertices();
    if (n <= 1) return 0;
    // leaf i is tree node i; grow every cubic tree by inserting leaf k on each existing edge
    std::size_t best = SIZE_MAX;
    std::function<void(std::vector<std::pair<NodeId, NodeId>>&, NodeId, std::size_t)> grow =
        [&](std::vector<std::pair<NodeId, NodeId>>& edges, NodeId next, std::size_t k) {
            if (k == n) {
                // cut of every tree edge counted directly from the two leaf sides
                std::size_t worst = 0;
                for (std::size_t e = 0; e < edges.size(); ++e) {
                    std::vector<std::vector<NodeId>> adj(next);
                    for (std::size_t f = 0; f < edges.size(); ++f)
                        if (f != e) {
                            adj[edges[f].first].push_back(edges[f].second);
                            adj[edges[f].second].push_back(edges[f].first);
                        }
                    std::vector<bool> side(next, false);
                    std::vector<NodeId> stack{edges[e].first};
                    side[edges[e].first] = true;
                    while (!stack.empty()) {
                        auto x = stack.back();
                        stack.pop_back();
                        for (auto y : adj[x])
                            if (!side[y]) {
                                side[y] = true;
                                stack.push_back(y);
                            }
                    }
                    std::size_t cut = 0;
                    for (const auto& ge : g.edges()) cut += side[ge.u] != side[ge.v];
                    worst = std::max(worst, cut);
                }
                best = std::min(best, worst);
                return;
            }
            const auto m = edges.size();
            for (std::size_t i = 0; i < m; ++i) {
                auto [a, b] = edges[i];
                NodeId mid = next;
                edges[i] = {a, mid};
                edges.push_back({mid, b});
                edges.push_back({mid, static_cast<NodeId>(k)});
                grow(edges, next + 1, k + 1);
                edges.pop_back();
                edges.pop_back();
                edges[i] = {a, b};
            }
        };
    std::vector<std::pair<NodeId, NodeId>> edges;
    NodeId next;
    if (n == 2) {
        edges = {{0, 1}};
        next = 2;
        grow(edges, next, 2);
    } else {
        // three leaves around one centre
        edges = {{0, static_cast<NodeId>(n)}, {1, static_cast<NodeId>(n)}, {2, static_cast<NodeId>(n)}};
        next = static_cast<NodeId>(n + 1);
        grow(edges, next, 3);
    }
    return best;
}

std::size_t crossing_count(const Drawing& d) {
    const auto& es = d.graph.edges();
    std::size_t count = 0;
    for (std::size_t i = 0; i < es.size(); ++i)
        for (std::size_t j = i + 1; j < es.size(); ++j) {
            const auto &p = d.pos[es[i].u], &q = d.pos[es[i].v], &r = d.pos[es[j].u], &s = d.pos[es[j].v];
            // p + t (q - p) = r + u (s - r); Cramer's rule
            Rational ax = q.x - p.x, ay = q.y - p.y, bx = s.x - r.x, by = s.y - r.y;
            Rational det = ax * by - ay * bx;
            if (det == 0) continue;
            Rational cx = r.x - p.x, cy = r.y - p.y;
            Rational t = (cx * by - cy * bx) / det, u = (cx * ay - cy * ax) / det;
            if (t > 0 && t < 1 && u > 0 && u < 1) ++count;
        }
    return count;
}

void register_metrics(MetricRegistry& registry) {
    auto n = [](std::size_t v) { return Rational(static_cast<unsigned long>(v)); };
    registry.add("oracle_cutwidth", [n](RowContext& c) { return n(cutwidth(c.graph())); });
    registry.add("oracle_pathwidth", [n](RowContext& c) { return n(pathwidth(c.graph())); });
    registry.add("oracle_bandwidth", [n](RowContext& c) { return n(bandwidth(c.graph())); });
    registry.add("oracle_treewidth", [n](RowContext& c) { return n(treewidth(c.graph())); });
    registry.add("oracle_treedepth", [n](RowContext& c) { return n(treedepth(c.graph())); });
    registry.add("oracle_carving_width", [n](RowContext& c) { return n(carving_width(c.graph())); });
    registry.add("oracle_crossings", [n](RowContext& c) { return n(crossing_count(c.drawing())); });
}

}  // namespace planwidth::oracle
