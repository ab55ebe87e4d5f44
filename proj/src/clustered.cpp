#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "planwidth/planarizers.hpp"
#include "shear.hpp"

namespace planwidth {

std::size_t default_cluster_order(std::size_t w) {
    auto r = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(w))));
    while (r * r < w) ++r;
    while (r > 0 && (r - 1) * (r - 1) >= w) --r;
    return std::max<std::size_t>(2, r);
}

namespace {

// where a wire enters or leaves a cluster: a vertex of the cluster or the rectangle of a boundary edge
struct Terminal {
    bool is_port = false;
    VertexId vertex = 0;
    NodeId rect = 0;  // child node of the boundary tree edge
};

struct Segment {
    EdgeId wire;
    Terminal from, to;  // in the direction edge.u -> edge.v
};

struct Port {
    NodeId rect;
    std::vector<EdgeId> run;  // wires in cyclic order around the cluster
};

// one point on the circle: a cluster vertex or the crossing of a wire with a port
struct Item {
    bool is_port = false;
    VertexId vertex = 0;
    std::size_t port = 0;
    EdgeId wire = 0;
};

struct ClusterDrawing {
    std::vector<Item> items;              // aux vertex ids
    Graph aux;
    std::vector<EdgeId> aux_wire;         // global wire of each aux edge
    Planarization planar;
    LinearArrangement xo;
    std::size_t separation = 0;
};

std::size_t interleavings(const std::vector<std::pair<std::size_t, std::size_t>>& chords) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < chords.size(); ++i)
        for (std::size_t j = i + 1; j < chords.size(); ++j) {
            auto [a, b] = chords[i];
            auto [c, d] = chords[j];
            if (a > b) std::swap(a, b);
            if (c == a || c == b || d == a || d == b) continue;
            bool ci = a < c && c < b, di = a < d && d < b;
            if (ci != di) ++count;
        }
    return count;
}

// draws the chords with the circle points at the given x-slots; upper[i] chooses the arc
ClusterDrawing draw_cluster(std::vector<Item> items, Graph aux, std::vector<EdgeId> aux_wire,
                            const std::vector<std::size_t>& slot, const std::vector<bool>& upper, bool parabola) {
    const auto count = items.size();
    const Rational K(static_cast<unsigned long>(count));
    const Rational c = (K + 1) / 2;
    const Rational H = K * K + K * K * K * K + 1;
    for (unsigned j = 0; j < 64; ++j) {
        Rational mu = j == 0 ? Rational(0) : 1 / pow2(j);
        Drawing d;
        d.graph = aux;
        d.pos.resize(count);
        for (std::size_t i = 0; i < count; ++i) {
            Rational x(static_cast<unsigned long>(slot[i]));
            if (parabola) {
                d.pos[i] = {x, x * x + mu * x * x * x * x};
            } else {
                Rational t = x - c;
                Rational bump = t * t + mu * t * t * t * t;
                d.pos[i] = {x, upper[i] ? H - bump : bump - H};
            }
        }
        try {
            auto sheared = shear_to_general_position(d);
            auto planar = planarize_drawing(sheared);
            auto xo = x_order(sheared);
            ClusterDrawing out{std::move(items), std::move(aux), std::move(aux_wire), std::move(planar), std::move(xo), 0};
            out.separation = edge_separation(out.planar.planar, out.xo);
            return out;
        } catch (const degeneracy_error& err) {
            if (err.report().kind != PositionViolation::concurrent_segments)
                throw internal_error(std::string("cluster placement degenerate: ") + err.what());
        }
    }
    throw internal_error("cluster drawing: perturbation retries exhausted");
}

// prunes unlabelled leaves, suppresses unlabelled degree-2 nodes, then joins the remaining
// trees with zero-cut links
CarvingDecomposition join_forest(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges,
                                 const std::vector<std::optional<VertexId>>& labels) {
    const auto size = labels.size();
    std::vector<std::set<NodeId>> adj(size);
    for (auto [a, b] : edges) {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    std::vector<bool> alive(size, true);
    std::vector<NodeId> work(size);
    std::iota(work.begin(), work.end(), 0);
    while (!work.empty()) {
        auto x = work.back();
        work.pop_back();
        if (!alive[x] || labels[x]) continue;
        if (adj[x].size() <= 1) {
            alive[x] = false;
            for (auto y : adj[x]) {
                adj[y].erase(x);
                work.push_back(y);
            }
            adj[x].clear();
        } else if (adj[x].size() == 2) {
            NodeId a = *adj[x].begin(), b = *std::next(adj[x].begin());
            alive[x] = false;
            adj[a].erase(x);
            adj[b].erase(x);
            adj[a].insert(b);
            adj[b].insert(a);
            adj[x].clear();
        }
    }
    // one part per remaining tree
    std::vector<CarvingDecomposition> parts;
    std::vector<std::vector<VertexId>> sets;
    std::vector<bool> seen(size, false);
    for (NodeId r = 0; r < size; ++r) {
        if (!alive[r] || seen[r]) continue;
        std::vector<NodeId> nodes{r};
        seen[r] = true;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            for (auto y : adj[nodes[i]])
                if (!seen[y]) {
                    seen[y] = true;
                    nodes.push_back(y);
                }
        std::map<NodeId, NodeId> local;
        for (auto x : nodes) local[x] = static_cast<NodeId>(local.size());
        std::vector<std::pair<NodeId, NodeId>> pe;
        std::vector<std::optional<VertexId>> pl(nodes.size());
        std::vector<VertexId> set;
        for (auto x : nodes) {
            for (auto y : adj[x])
                if (x < y) pe.push_back({local[x], local[y]});
            if (labels[x]) {
                pl[local[x]] = static_cast<VertexId>(set.size());
                set.push_back(*labels[x]);
            }
        }
        parts.push_back({Tree(nodes.size(), std::move(pe)), std::move(pl)});
        sets.push_back(std::move(set));
    }
    return combine_carvings(n, parts, sets);
}

}  // namespace

PlanarizationReport clustered_carving(const Graph& g, const CarvingDecomposition& cd, std::size_t z) {
    const auto w = validate_carving(g, cd);
    if (z == 0) z = default_cluster_order(w);

    bool has_internal = false;
    for (NodeId x = 0; x < cd.tree.size(); ++x) has_internal |= cd.tree.degree(x) >= 2;
    if (!has_internal) {
        auto rep = carving_guided(g, cd);
        rep.strategy = "clustered";
        return rep;
    }

    const auto n = g.num_vertices();
    const auto size = cd.tree.size();
    auto rp = restricted_partition(cd.tree, z);
    auto emb = embed_carving(cd.tree, cd.leaf_vertex);
    auto routes = route_rectangles(g, cd.tree, emb);
    const auto nblocks = rp.blocks.size();
    auto block_of_node = [&](NodeId x) { return rp.block_of[x]; };
    auto boundary_rect = [&](NodeId c) {
        return c != emb.root && block_of_node(c) != block_of_node(static_cast<NodeId>(emb.parent[c]));
    };

    PlanarizationReport rep;
    rep.strategy = "clustered";

    // rectangle dummies on boundary edges, child id order
    std::vector<VertexKind> kinds;
    std::vector<std::map<EdgeId, std::vector<VertexId>>> on_wire(size);
    std::vector<std::vector<VertexId>> spine(size);
    for (NodeId c = 0; c < size; ++c) {
        if (!boundary_rect(c)) continue;
        auto order = routes[c].entry_order;
        for (auto [a, b] : apply_transpositions(order, routes[c].transpositions)) {
            const auto &ea = g.edge(a), &eb = g.edge(b);
            if (ea.u == eb.u || ea.u == eb.v || ea.v == eb.u || ea.v == eb.v)
                throw internal_error("routing crosses two edges with a common endpoint");
            auto id = static_cast<VertexId>(n + kinds.size());
            kinds.push_back(VertexKind::crossing(a, b));
            on_wire[c][a].push_back(id);
            on_wire[c][b].push_back(id);
            spine[c].push_back(id);
        }
        if (order != routes[c].exit_order) throw internal_error("transpositions do not reach the exit order");
    }

    // split every wire into its per-cluster segments
    std::vector<std::vector<Segment>> segments(nblocks);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> walk(g.num_edges());  // (block, segment index)
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        auto [u, v] = g.edge(e);
        std::size_t cur = block_of_node(emb.node_of[u]);
        Segment seg{e, {false, u, 0}, {}};
        for (const auto& step : wire_path(g, emb, e)) {
            if (!boundary_rect(step.child)) continue;
            seg.to = {true, 0, step.child};
            walk[e].push_back({cur, segments[cur].size()});
            segments[cur].push_back(seg);
            cur = step.upward ? block_of_node(static_cast<NodeId>(emb.parent[step.child])) : block_of_node(step.child);
            seg = Segment{e, {true, 0, step.child}, {}};
        }
        seg.to = {false, v, 0};
        walk[e].push_back({cur, segments[cur].size()});
        segments[cur].push_back(seg);
    }

    // per-cluster drawings
    std::vector<std::vector<std::vector<VertexId>>> pieces(nblocks);  // per segment, dummies from u side
    std::vector<std::vector<VertexId>> cluster_items(nblocks);         // vertices and dummies in x-order
    std::vector<std::vector<NodeId>> cluster_ports(nblocks);           // rect ids: [P1, P2] or the three ports
    std::vector<bool> singleton_hub(nblocks, false);
    std::size_t claimed = w;

    for (std::size_t b = 0; b < nblocks; ++b) {
        const auto& block = rp.blocks[b];
        ClusterSummary sum;
        sum.tree_nodes = block;

        // ports and their runs
        std::vector<Port> ports;
        std::vector<std::size_t> port_key;
        NodeId top = block[0];
        for (auto x : block)
            if (emb.depth[x] < emb.depth[top]) top = x;
        for (auto x : block)
            for (auto c : emb.children[x])
                if (block_of_node(c) != b && !routes[c].exit_order.empty()) {
                    ports.push_back({c, routes[c].exit_order});
                    port_key.push_back(emb.lo[c]);
                }
        if (top != emb.root && !routes[top].entry_order.empty()) {
            auto run = routes[top].entry_order;
            std::reverse(run.begin(), run.end());
            ports.push_back({top, std::move(run)});
            port_key.push_back(emb.leaf_order.size());
        }
        sum.ports = ports.size();

        // circle order: vertices at their leaf positions, port runs at their intervals
        std::vector<std::pair<std::size_t, std::size_t>> keyed;  // (key, sub) per item
        std::vector<Item> items;
        for (auto x : block)
            if (cd.leaf_vertex[x]) {
                items.push_back({false, *cd.leaf_vertex[x], 0, 0});
                keyed.push_back({emb.position[*cd.leaf_vertex[x]], 0});
            }
        for (std::size_t p = 0; p < ports.size(); ++p)
            for (std::size_t i = 0; i < ports[p].run.size(); ++i) {
                items.push_back({true, 0, p, ports[p].run[i]});
                keyed.push_back({port_key[p], i});
            }
        std::vector<std::size_t> idx(items.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](auto a, auto c) { return keyed[a] < keyed[c]; });
        std::vector<Item> circle;
        for (auto i : idx) circle.push_back(items[i]);

        // for k = 1 or 2, rotate so that a port run starts the sequence
        if (!ports.empty() && ports.size() <= 2) {
            auto first = std::find_if(circle.begin(), circle.end(), [](const Item& it) { return it.is_port; });
            // a run may wrap around the end of the circle
            auto start = first;
            if (first == circle.begin() && circle.back().is_port && circle.back().port == first->port) {
                start = circle.end();
                while (start != circle.begin() && std::prev(start)->is_port && std::prev(start)->port == first->port)
                    --start;
            }
            if (start != circle.end()) std::rotate(circle.begin(), start, circle.end());
        }

        // chords
        std::map<VertexId, std::size_t> vertex_at;
        std::map<std::pair<std::size_t, EdgeId>, std::size_t> port_at;
        for (std::size_t i = 0; i < circle.size(); ++i) {
            if (circle[i].is_port) port_at[{circle[i].port, circle[i].wire}] = i;
            else vertex_at[circle[i].vertex] = i;
        }
        std::map<NodeId, std::size_t> port_of_rect;
        for (std::size_t p = 0; p < ports.size(); ++p) port_of_rect[ports[p].rect] = p;
        auto locate = [&](const Terminal& t, EdgeId e) {
            return t.is_port ? port_at.at({port_of_rect.at(t.rect), e}) : vertex_at.at(t.vertex);
        };
        std::vector<std::pair<std::size_t, std::size_t>> chords;
        std::vector<Edge> aux_edges;
        for (const auto& s : segments[b]) {
            auto a = locate(s.from, s.wire), c = locate(s.to, s.wire);
            chords.push_back({a, c});
            aux_edges.push_back({static_cast<VertexId>(std::min(a, c)), static_cast<VertexId>(std::max(a, c))});
            if (!s.from.is_port && !s.to.is_port) ++sum.internal_edges;
        }
        sum.wires = chords.size();
        const auto expected = interleavings(chords);

        pieces[b].assign(segments[b].size(), {});
        if (ports.size() >= 3) {
            if (block.size() != 1 || circle.size() != 2 * chords.size())
                throw internal_error("cluster with three ports is not a bare tree node");
            if (expected != 0) throw internal_error("wires cross inside a branching node");
            singleton_hub[b] = true;
            cluster_ports[b] = {ports[0].rect, ports[1].rect, ports[2].rect};
            sum.crossings = 0;
            rep.clusters.push_back(std::move(sum));
            continue;
        }

        // x-slots on the circle
        const auto count = circle.size();
        std::vector<std::size_t> slot(count);
        std::vector<bool> upper(count, true);
        bool parabola = ports.size() <= 1;
        if (parabola) {
            for (std::size_t i = 0; i < count; ++i) slot[i] = i + 1;
        } else {
            // runs: [P1][A][P2][B]
            std::size_t i = 0;
            std::vector<std::size_t> p1, a_arc, p2, b_arc;
            const auto first_port = circle[0].port;
            while (i < count && circle[i].is_port && circle[i].port == first_port) p1.push_back(i++);
            while (i < count && !circle[i].is_port) a_arc.push_back(i++);
            while (i < count && circle[i].is_port) p2.push_back(i++);
            while (i < count) b_arc.push_back(i++);
            if (p2.empty()) throw internal_error("second port run missing");
            for (auto q : b_arc)
                if (circle[q].is_port) throw internal_error("port run split around the cluster");
            for (std::size_t j = 0; j < p1.size(); ++j) slot[p1[j]] = p1.size() - j;
            for (std::size_t j = 0; j < p2.size(); ++j) slot[p2[j]] = count - j;
            // middle slots shared out in proportion: A ascending on the lower arc, B descending on the upper
            const std::size_t na = a_arc.size(), nb = b_arc.size();
            std::vector<std::size_t> a_slots, b_slots;
            for (std::size_t s = 0; s < na + nb; ++s) {
                if ((s + 1) * na / (na + nb) > a_slots.size()) a_slots.push_back(p1.size() + 1 + s);
                else b_slots.push_back(p1.size() + 1 + s);
            }
            for (std::size_t j = 0; j < na; ++j) {
                slot[a_arc[j]] = a_slots[j];
                upper[a_arc[j]] = false;
            }
            for (std::size_t j = 0; j < nb; ++j) slot[b_arc[j]] = b_slots[nb - 1 - j];
        }

        std::vector<EdgeId> aux_wire;
        for (const auto& s : segments[b]) aux_wire.push_back(s.wire);
        // aux graph edges are sorted by the Graph constructor; remember the segment of each
        std::map<std::pair<VertexId, VertexId>, std::size_t> segment_of;
        for (std::size_t s = 0; s < aux_edges.size(); ++s) segment_of[{aux_edges[s].u, aux_edges[s].v}] = s;
        Graph aux(count, aux_edges);
        std::vector<EdgeId> wire_of_aux(aux.num_edges());
        for (EdgeId e = 0; e < aux.num_edges(); ++e)
            wire_of_aux[e] = segments[b][segment_of.at({aux.edge(e).u, aux.edge(e).v})].wire;
        auto cdraw = draw_cluster(circle, aux, wire_of_aux, slot, upper, parabola);

        const auto found = cdraw.planar.planar.dummy_count();
        if (found != expected) throw internal_error("cluster crossings differ from the interleaving count");
        sum.crossings = found;

        // global ids for the cluster dummies
        const VertexId base = static_cast<VertexId>(n + kinds.size());
        for (VertexId k = 0; k < found; ++k) {
            const auto& kd = cdraw.planar.planar.kind(static_cast<VertexId>(count + k));
            auto ga = wire_of_aux[kd.edge_a], gb = wire_of_aux[kd.edge_b];
            const auto &ea = g.edge(ga), &eb = g.edge(gb);
            if (ea.u == eb.u || ea.u == eb.v || ea.v == eb.u || ea.v == eb.v)
                throw internal_error("cluster crosses two edges with a common endpoint");
            kinds.push_back(VertexKind::crossing(std::min(ga, gb), std::max(ga, gb)));
        }
        for (EdgeId e = 0; e < aux.num_edges(); ++e) {
            auto s = segment_of.at({aux.edge(e).u, aux.edge(e).v});
            const auto& chain = cdraw.planar.chains[e];
            std::vector<VertexId> piece;
            for (std::size_t i = 1; i + 1 < chain.size(); ++i) piece.push_back(base + (chain[i] - count));
            // the chain runs from the lower aux id; orient it from the u side of the wire
            if (locate(segments[b][s].from, segments[b][s].wire) != aux.edge(e).u)
                std::reverse(piece.begin(), piece.end());
            pieces[b][s] = std::move(piece);
        }

        // cluster x-order without port points
        for (auto x : cdraw.xo.order()) {
            if (x >= count) cluster_items[b].push_back(base + (x - count));
            else if (!circle[x].is_port) cluster_items[b].push_back(circle[x].vertex);
        }
        // P1 is the run the circle was rotated to start with
        if (!ports.empty()) cluster_ports[b].push_back(ports[circle[0].port].rect);
        if (ports.size() == 2) cluster_ports[b].push_back(ports[1 - circle[0].port].rect);
        claimed = std::max(claimed, cdraw.separation);
        rep.clusters.push_back(std::move(sum));
    }

    // chains: cluster piece, boundary rectangle, cluster piece, ...
    std::vector<std::vector<VertexId>> chains(g.num_edges());
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        auto& ch = chains[e];
        ch.push_back(g.edge(e).u);
        std::size_t hop = 0;
        auto add_piece = [&] {
            auto [b, s] = walk[e][hop++];
            ch.insert(ch.end(), pieces[b][s].begin(), pieces[b][s].end());
        };
        add_piece();
        for (const auto& step : wire_path(g, emb, e)) {
            if (!boundary_rect(step.child)) continue;
            auto it = on_wire[step.child].find(e);
            if (it != on_wire[step.child].end()) {
                if (step.upward) ch.insert(ch.end(), it->second.begin(), it->second.end());
                else ch.insert(ch.end(), it->second.rbegin(), it->second.rend());
            }
            add_piece();
        }
        ch.push_back(g.edge(e).v);
    }
    rep.planarization = make_planarization(g, kinds, std::move(chains));
    rep.crossings_added = kinds.size();

    // output carving: per-cluster caterpillars joined by rectangle caterpillars
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<std::optional<VertexId>> labels;
    auto fresh = [&](std::optional<VertexId> l) {
        labels.push_back(l);
        return static_cast<NodeId>(labels.size() - 1);
    };
    std::map<std::pair<std::size_t, NodeId>, NodeId> attach;  // (block, rect) -> node
    for (std::size_t b = 0; b < nblocks; ++b) {
        if (singleton_hub[b]) {
            NodeId hub = fresh(std::nullopt);
            for (auto r : cluster_ports[b]) attach[{b, r}] = hub;
            continue;
        }
        // sequence [P1] items [P2]; ports attach to the spine node they would hang from
        std::vector<NodeId> leaves;
        for (auto v : cluster_items[b]) leaves.push_back(fresh(v));
        const auto& cp = cluster_ports[b];
        const std::size_t t = leaves.size() + cp.size();
        if (t == 0) continue;
        if (t == 1) {
            if (!cp.empty()) throw internal_error("port without anything to attach to");
            continue;
        }
        if (t == 2) {
            if (cp.empty()) {
                edges.push_back({leaves[0], leaves[1]});
            } else if (cp.size() == 1) {
                attach[{b, cp[0]}] = leaves[0];
            } else {
                NodeId joint = fresh(std::nullopt);
                attach[{b, cp[0]}] = joint;
                attach[{b, cp[1]}] = joint;
            }
            continue;
        }
        // spine nodes for sequence positions 1 .. t-2 (0-based), ends share the outer spine nodes
        std::vector<NodeId> spine_nodes;
        for (std::size_t i = 1; i + 1 < t; ++i) spine_nodes.push_back(fresh(std::nullopt));
        for (std::size_t i = 0; i + 1 < spine_nodes.size(); ++i) edges.push_back({spine_nodes[i], spine_nodes[i + 1]});
        auto hang = [&](std::size_t pos) { return spine_nodes[std::clamp<std::size_t>(pos, 1, t - 2) - 1]; };
        std::size_t pos = 0;
        if (!cp.empty()) attach[{b, cp[0]}] = hang(pos++);
        for (auto leaf : leaves) edges.push_back({hang(pos++), leaf});
        if (cp.size() == 2) attach[{b, cp[1]}] = hang(pos++);
    }
    for (NodeId c = 0; c < size; ++c) {
        // a rectangle without wires separates nothing; the forest is joined below
        if (!boundary_rect(c) || routes[c].entry_order.empty()) continue;
        auto parent = static_cast<NodeId>(emb.parent[c]);
        NodeId prev = attach.at({block_of_node(c), c});
        for (auto d : spine[c]) {
            NodeId x = fresh(std::nullopt);
            edges.push_back({prev, x});
            edges.push_back({x, fresh(d)});
            prev = x;
        }
        edges.push_back({prev, attach.at({block_of_node(parent), c})});
    }
    auto out = join_forest(rep.planarization.planar.num_vertices(), edges, labels);
    rep.validated_width = validate_carving(rep.planarization.planar, out);
    rep.claimed_width = rep.crossings_added > 0 ? std::max<std::size_t>(claimed, 4) : claimed;
    rep.witness = std::move(out);
    for (NodeId c = 0; c < size; ++c)
        if (boundary_rect(c)) rep.routings.push_back(std::move(routes[c]));
    return rep;
}

}  // namespace planwidth
