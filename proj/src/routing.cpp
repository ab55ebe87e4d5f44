#include "planwidth/routing.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace planwidth {

CarvingEmbedding embed_carving(const Tree& t, const std::vector<std::optional<VertexId>>& leaf_vertex) {
    const auto size = t.size();
    CarvingEmbedding emb;
    NodeId root = UINT32_MAX;
    for (NodeId x = 0; x < size; ++x)
        if (t.degree(x) >= 2) {
            root = x;
            break;
        }
    if (root == UINT32_MAX) throw graph_error("carving tree has no internal node to embed");
    emb.root = root;

    auto rv = root_tree(t, root);
    emb.parent = rv.parent;
    emb.depth = rv.depth;
    emb.children.assign(size, {});
    for (auto x : rv.preorder)
        if (rv.parent[x] >= 0) emb.children[rv.parent[x]].push_back(x);

    std::size_t nverts = 0;
    for (const auto& l : leaf_vertex)
        if (l) ++nverts;
    std::vector<VertexId> smallest(size, UINT32_MAX);
    for (auto it = rv.preorder.rbegin(); it != rv.preorder.rend(); ++it) {
        auto x = *it;
        if (leaf_vertex[x]) smallest[x] = *leaf_vertex[x];
        for (auto c : emb.children[x]) smallest[x] = std::min(smallest[x], smallest[c]);
    }
    for (auto& ch : emb.children)
        std::sort(ch.begin(), ch.end(), [&](NodeId a, NodeId b) { return smallest[a] < smallest[b]; });

    emb.lo.assign(size, 0);
    emb.hi.assign(size, 0);
    emb.port.assign(size, 0);
    emb.position.assign(nverts, 0);
    emb.node_of.assign(nverts, 0);
    // iterative DFS in embedding order
    std::vector<std::pair<NodeId, std::size_t>> stack{{root, 0}};
    emb.lo[root] = 0;
    while (!stack.empty()) {
        auto& [x, next] = stack.back();
        if (next == 0) {
            emb.lo[x] = emb.leaf_order.size();
            if (leaf_vertex[x]) {
                auto v = *leaf_vertex[x];
                emb.position[v] = emb.leaf_order.size();
                emb.node_of[v] = x;
                emb.leaf_order.push_back(v);
            }
        }
        if (next < emb.children[x].size()) {
            auto c = emb.children[x][next];
            emb.port[c] = next;
            ++next;
            stack.push_back({c, 0});
        } else {
            emb.hi[x] = emb.leaf_order.size() - 1;
            stack.pop_back();
        }
    }

    emb.edge_above.assign(size, SIZE_MAX);
    auto edges = t.edges();
    for (std::size_t k = 0; k < edges.size(); ++k) {
        auto [a, b] = edges[k];
        emb.edge_above[emb.parent[a] == static_cast<std::int64_t>(b) ? a : b] = k;
    }
    return emb;
}

std::vector<RectangleStep> wire_path(const Graph& g, const CarvingEmbedding& emb, EdgeId e) {
    auto a = emb.node_of[g.edge(e).u], b = emb.node_of[g.edge(e).v];
    std::vector<RectangleStep> up, down;
    while (a != b) {
        if (emb.depth[a] >= emb.depth[b]) {
            up.push_back({a, true});
            a = static_cast<NodeId>(emb.parent[a]);
        } else {
            down.push_back({b, false});
            b = static_cast<NodeId>(emb.parent[b]);
        }
    }
    up.insert(up.end(), down.rbegin(), down.rend());
    return up;
}

std::vector<std::pair<EdgeId, EdgeId>> apply_transpositions(std::vector<EdgeId>& order,
                                                            const std::vector<std::size_t>& swaps) {
    std::vector<std::pair<EdgeId, EdgeId>> pairs;
    for (auto p : swaps) {
        if (p + 1 >= order.size()) throw graph_error("transposition slot out of range");
        pairs.push_back({order[p], order[p + 1]});
        std::swap(order[p], order[p + 1]);
    }
    return pairs;
}

std::size_t inversion_count(const std::vector<EdgeId>& from, const std::vector<EdgeId>& to) {
    std::map<EdgeId, std::size_t> rank;
    for (std::size_t i = 0; i < to.size(); ++i) rank[to[i]] = i;
    std::size_t inv = 0;
    for (std::size_t i = 0; i < from.size(); ++i)
        for (std::size_t j = i + 1; j < from.size(); ++j)
            if (rank.at(from[i]) > rank.at(from[j])) ++inv;
    return inv;
}

std::vector<RectangleRouting> route_rectangles(const Graph& g, const Tree& t, const CarvingEmbedding& emb) {
    const auto size = t.size();
    const auto nv = emb.leaf_order.size();
    std::vector<RectangleRouting> out(size);
    for (EdgeId e = 0; e < g.num_edges(); ++e)
        for (const auto& step : wire_path(g, emb, e)) out[step.child].wires.push_back(e);

    // backward cyclic distance of an outside position from the left end of c's interval
    auto key = [&](NodeId c, VertexId outer) { return (emb.lo[c] + nv - 1 - emb.position[outer]) % nv; };
    auto inner_outer = [&](NodeId c, EdgeId e) {
        auto [u, v] = g.edge(e);
        return emb.inside(c, u) ? std::pair{u, v} : std::pair{v, u};
    };
    // left-to-right order of wires at the child end of c's rectangle
    auto lower_less = [&](NodeId c) {
        return [&, c](EdgeId a, EdgeId b) {
            auto [ia, oa] = inner_outer(c, a);
            auto [ib, ob] = inner_outer(c, b);
            return std::tuple(emb.position[ia], key(c, oa), a) < std::tuple(emb.position[ib], key(c, ob), b);
        };
    };

    for (NodeId c = 0; c < size; ++c) {
        if (c == emb.root) continue;
        auto& r = out[c];
        r.child = c;
        r.parent = static_cast<NodeId>(emb.parent[c]);
        r.tree_edge = emb.edge_above[c];
        const NodeId p = r.parent;

        r.entry_order = r.wires;
        std::sort(r.entry_order.begin(), r.entry_order.end(), lower_less(c));

        // ports around p: its children in order, then the way up (absent at the root)
        std::vector<std::int64_t> ports(emb.children[p].begin(), emb.children[p].end());
        if (p != emb.root) ports.push_back(-1);
        const std::size_t k = ports.size();
        const std::size_t i = emb.port[c];

        auto exit_port = [&](EdgeId e) -> std::size_t {
            auto outer = inner_outer(c, e).second;
            for (std::size_t j = 0; j < k; ++j)
                if (ports[j] >= 0 && emb.inside(static_cast<NodeId>(ports[j]), outer)) return j;
            return k - 1;  // up
        };
        std::vector<std::vector<EdgeId>> group(k);
        for (auto e : r.entry_order) group[exit_port(e)].push_back(e);

        for (std::size_t step = 1; step < k; ++step) {
            std::size_t j = (i + k - step) % k;
            auto& grp = group[j];
            if (ports[j] >= 0 && i < j) {
                // mirrored lower order of the sibling rectangle
                auto sib = static_cast<NodeId>(ports[j]);
                std::sort(grp.begin(), grp.end(), lower_less(sib));
                std::reverse(grp.begin(), grp.end());
            }
            r.exit_order.insert(r.exit_order.end(), grp.begin(), grp.end());
        }
        if (!group[i].empty()) throw graph_error("wire leaves a rectangle through its own port");

        // insertion-sort schedule from entry to exit order
        std::map<EdgeId, std::size_t> rank;
        for (std::size_t q = 0; q < r.exit_order.size(); ++q) rank[r.exit_order[q]] = q;
        std::vector<EdgeId> cur = r.entry_order;
        for (std::size_t q = 1; q < cur.size(); ++q)
            for (std::size_t s = q; s > 0 && rank[cur[s - 1]] > rank[cur[s]]; --s) {
                std::swap(cur[s - 1], cur[s]);
                r.transpositions.push_back(s - 1);
            }
    }
    return out;
}

}  // namespace planwidth
