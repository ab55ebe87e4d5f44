#include "planwidth/tree.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace planwidth {

Tree::Tree(std::size_t size, std::vector<std::pair<NodeId, NodeId>> edges)
    : edges_(std::move(edges)), adj_(size) {
    if (size == 0) {
        if (!edges_.empty()) throw graph_error("empty tree with edges");
        return;
    }
    if (edges_.size() + 1 != size)
        throw graph_error("tree on " + std::to_string(size) + " nodes needs " + std::to_string(size - 1) +
                          " edges, got " + std::to_string(edges_.size()));
    for (auto& [a, b] : edges_) {
        if (a >= size || b >= size || a == b) throw graph_error("bad tree edge");
        if (a > b) std::swap(a, b);
        adj_[a].push_back(b);
        adj_[b].push_back(a);
    }
    for (auto& l : adj_) std::sort(l.begin(), l.end());
    // connected with n-1 edges => acyclic
    std::vector<bool> seen(size, false);
    std::vector<NodeId> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        auto x = stack.back();
        stack.pop_back();
        for (auto y : adj_[x])
            if (!seen[y]) {
                seen[y] = true;
                ++count;
                stack.push_back(y);
            }
    }
    if (count != size) throw graph_error("tree edges do not form a connected tree");
}

RootedView root_tree(const Tree& t, NodeId root) {
    RootedView r;
    r.root = root;
    r.parent.assign(t.size(), -1);
    r.depth.assign(t.size(), 0);
    if (t.size() == 0) return r;
    std::vector<NodeId> stack{root};
    std::vector<bool> seen(t.size(), false);
    seen[root] = true;
    while (!stack.empty()) {
        auto x = stack.back();
        stack.pop_back();
        r.preorder.push_back(x);
        auto nb = t.neighbors(x);
        for (auto it = nb.rbegin(); it != nb.rend(); ++it) {
            if (seen[*it]) continue;
            seen[*it] = true;
            r.parent[*it] = x;
            r.depth[*it] = r.depth[x] + 1;
            stack.push_back(*it);
        }
    }
    return r;
}

Tree gen_random_binary_tree(std::size_t leaves, std::uint64_t seed) {
    if (leaves < 2) throw graph_error("a binary tree needs at least two leaves");
    std::mt19937_64 rng(seed);
    std::vector<std::pair<NodeId, NodeId>> edges{{0, 1}};
    NodeId next = 2;
    for (std::size_t l = 2; l < leaves; ++l) {
        std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
        auto k = pick(rng);
        auto [a, b] = edges[k];
        NodeId mid = next++, leaf = next++;
        edges[k] = {a, mid};
        edges.push_back({mid, b});
        edges.push_back({mid, leaf});
    }
    return Tree(next, std::move(edges));
}

}  // namespace planwidth
