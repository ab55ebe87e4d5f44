#include "planwidth/planarizers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "shear.hpp"

namespace planwidth {

std::size_t cr_pair_k3n(std::size_t n) {
    if (n < 1) throw graph_error("cr_pair_k3n needs n >= 1");
    return (n / 2) * ((n - 1) / 2);
}

Rational lexicographic_shear(const std::vector<const Point*>& pts) {
    std::vector<const Rational*> xs;
    Rational ymax = 0;
    for (auto p : pts) {
        xs.push_back(&p->x);
        Rational a = abs(p->y);
        if (a > ymax) ymax = a;
    }
    std::sort(xs.begin(), xs.end(), [](auto a, auto b) { return *a < *b; });
    std::optional<Rational> gap;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        if (*xs[i] == *xs[i + 1]) continue;
        Rational d = *xs[i + 1] - *xs[i];
        if (!gap || d < *gap) gap = d;
    }
    unsigned k = 1;
    if (gap) {
        Rational bound = 2 * ymax / *gap;
        while (pow2(k) <= bound) ++k;
    }
    return 1 / pow2(k);
}

Drawing shear_drawing(const Drawing& d, const Rational& eps) {
    Drawing out{d.graph, d.pos};
    for (auto& p : out.pos) p.x += eps * p.y;
    return out;
}

// shear the drawing so that x-order equals the lexicographic order of all events
Drawing shear_to_general_position(const Drawing& d) {
    auto events = crossing_events_unchecked_x(d);
    std::vector<const Point*> pts;
    for (const auto& p : d.pos) pts.push_back(&p);
    for (const auto& ev : events) pts.push_back(&ev.at);
    Rational eps = lexicographic_shear(pts);
    for (int attempt = 0; attempt < 8; ++attempt, eps /= 2) {
        auto sheared = shear_drawing(d, eps);
        if (!check_general_position(sheared)) return sheared;
    }
    throw internal_error("shear failed to reach general position");
}

LinearArrangement x_order(const Drawing& d) {
    auto events = crossings(d);
    const auto n = d.graph.num_vertices();
    std::vector<std::pair<const Rational*, VertexId>> items;
    for (VertexId v = 0; v < n; ++v) items.push_back({&d.pos[v].x, v});
    for (std::size_t k = 0; k < events.size(); ++k)
        items.push_back({&events[k].at.x, static_cast<VertexId>(n + k)});
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return *a.first < *b.first; });
    std::vector<VertexId> order;
    for (const auto& it : items) order.push_back(it.second);
    return LinearArrangement(std::move(order));
}

PlanarizationReport report_from_drawing(const std::string& strategy, const Drawing& d) {
    PlanarizationReport r;
    r.strategy = strategy;
    r.planarization = planarize_drawing(d);
    auto xo = x_order(d);
    std::vector<VertexId> originals;
    for (auto v : xo.order())
        if (v < d.graph.num_vertices()) originals.push_back(v);
    r.crossings_added = r.planarization.planar.dummy_count();
    r.claimed_width = edge_separation(d.graph, LinearArrangement(originals));
    r.validated_width = edge_separation(r.planarization.planar, xo);
    r.witness = xo;
    return r;
}

// ---------------------------------------------------------------------------

Drawing zarankiewicz_k3n(std::size_t n) {
    if (n < 1) throw graph_error("zarankiewicz_k3n needs n >= 1");
    Graph g = gen_complete_bipartite(3, n);
    std::vector<long> base;
    for (long i = static_cast<long>(n / 2); i >= 1; --i) base.push_back(-i);
    for (long i = 1; i <= static_cast<long>((n + 1) / 2); ++i) base.push_back(i);

    static const long primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                  43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    for (unsigned attempt = 0; attempt < 16; ++attempt) {
        Drawing d;
        d.graph = g;
        d.pos = {{0, -1}, {0, 1}, {0, 2}};
        for (std::size_t j = 0; j < n; ++j) {
            Rational x(base[j]);
            if (attempt > 0) {
                // nudge away from the origin by distinct prime fractions
                Rational nudge = Rational(1) / (pow2(attempt + 1) * primes[j % 25] * static_cast<long>(j / 25 + 1));
                x += base[j] < 0 ? -nudge : nudge;
            }
            d.pos.push_back({x, 0});
        }
        try {
            return shear_to_general_position(d);
        } catch (const degeneracy_error&) {
            continue;
        }
    }
    throw internal_error("no general-position Zarankiewicz drawing found");
}

// ---------------------------------------------------------------------------

ConvexLift convex_lift(const Graph& g, const LinearArrangement& a) {
    const auto n = g.num_vertices();
    if (a.size() != n) throw graph_error("arrangement size differs from vertex count");
    if (n == 0) throw graph_error("convex_lift needs at least one vertex");
    for (unsigned j = 0; j < 64; ++j) {
        // y = x^2 + mu x^4 stays strictly convex; mu > 0 only after a triple point on the parabola
        Rational mu = j == 0 ? Rational(0) : 1 / pow2(j);
        Drawing d;
        d.graph = g;
        d.pos.resize(n);
        for (VertexId v = 0; v < n; ++v) {
            Rational x(static_cast<unsigned long>(a.position(v)));
            d.pos[v] = {x, x * x + mu * x * x * x * x};
        }
        try {
            auto sheared = shear_to_general_position(d);
            auto report = report_from_drawing("convex", sheared);
            return {std::move(sheared), std::move(report)};
        } catch (const degeneracy_error& err) {
            if (err.report().kind != PositionViolation::concurrent_segments)
                throw internal_error(std::string("convex placement degenerate: ") + err.what());
        }
    }
    throw internal_error("convex_lift: perturbation retries exhausted");
}

// ---------------------------------------------------------------------------

PlanarizationReport carving_guided(const Graph& g, const CarvingDecomposition& cd) {
    const auto w = validate_carving(g, cd);
    const auto n = g.num_vertices();
    PlanarizationReport rep;
    rep.strategy = "carving";

    bool has_internal = false;
    for (NodeId x = 0; x < cd.tree.size(); ++x) has_internal |= cd.tree.degree(x) >= 2;
    if (!has_internal) {
        std::vector<std::vector<VertexId>> chains;
        for (const auto& e : g.edges()) chains.push_back({e.u, e.v});
        rep.planarization = make_planarization(g, {}, std::move(chains));
        rep.witness = cd;
        rep.claimed_width = w;
        rep.validated_width = validate_carving(rep.planarization.planar, cd);
        return rep;
    }

    auto emb = embed_carving(cd.tree, cd.leaf_vertex);
    auto routes = route_rectangles(g, cd.tree, emb);
    const auto size = cd.tree.size();

    std::vector<VertexKind> kinds;
    std::vector<std::map<EdgeId, std::vector<VertexId>>> on_wire(size);
    std::vector<std::vector<VertexId>> spine(size);
    for (NodeId c = 0; c < size; ++c) {
        if (c == emb.root) continue;
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

    std::vector<std::vector<VertexId>> chains(g.num_edges());
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        auto& ch = chains[e];
        ch.push_back(g.edge(e).u);
        for (const auto& step : wire_path(g, emb, e)) {
            auto it = on_wire[step.child].find(e);
            if (it == on_wire[step.child].end()) continue;
            if (step.upward) ch.insert(ch.end(), it->second.begin(), it->second.end());
            else ch.insert(ch.end(), it->second.rbegin(), it->second.rend());
        }
        ch.push_back(g.edge(e).v);
    }
    rep.planarization = make_planarization(g, kinds, std::move(chains));
    rep.crossings_added = kinds.size();

    // each rectangle becomes a caterpillar over its dummies, child end first
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<std::optional<VertexId>> labels(cd.leaf_vertex.begin(), cd.leaf_vertex.end());
    auto fresh = [&](std::optional<VertexId> l) {
        labels.push_back(l);
        return static_cast<NodeId>(labels.size() - 1);
    };
    for (NodeId c = 0; c < size; ++c) {
        if (c == emb.root) continue;
        NodeId prev = c;
        for (auto d : spine[c]) {
            NodeId x = fresh(std::nullopt);
            edges.push_back({prev, x});
            edges.push_back({x, fresh(d)});
            prev = x;
        }
        edges.push_back({prev, static_cast<NodeId>(emb.parent[c])});
    }
    CarvingDecomposition out{Tree(labels.size(), std::move(edges)), std::move(labels)};
    rep.validated_width = validate_carving(rep.planarization.planar, out);
    rep.claimed_width = rep.crossings_added > 0 ? std::max<std::size_t>(w, 4) : w;
    rep.witness = std::move(out);
    for (NodeId c = 0; c < size; ++c)
        if (c != emb.root) rep.routings.push_back(std::move(routes[c]));
    return rep;
}

// ---------------------------------------------------------------------------

std::string export_tree_svg(const CarvingDecomposition& cd) {
    const auto& t = cd.tree;
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(2);
    if (t.size() == 0) {
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
            << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"100\" height=\"100\"></svg>\n";
        return out.str();
    }
    NodeId root = 0;
    for (NodeId x = 0; x < t.size(); ++x)
        if (t.degree(x) >= 2) {
            root = x;
            break;
        }
    auto rv = root_tree(t, root);
    // leaves spread evenly, internal nodes centred over their children
    std::vector<double> px(t.size(), 0), py(t.size(), 0);
    std::vector<std::vector<NodeId>> kids(t.size());
    for (auto x : rv.preorder)
        if (rv.parent[x] >= 0) kids[rv.parent[x]].push_back(x);
    double next_leaf = 0;
    std::uint32_t max_depth = 0;
    for (auto it = rv.preorder.rbegin(); it != rv.preorder.rend(); ++it) max_depth = std::max(max_depth, rv.depth[*it]);
    std::vector<NodeId> post;
    std::vector<std::pair<NodeId, std::size_t>> stack{{root, 0}};
    while (!stack.empty()) {
        auto& [x, i] = stack.back();
        if (i < kids[x].size()) {
            auto c = kids[x][i++];
            stack.push_back({c, 0});
        } else {
            post.push_back(x);
            stack.pop_back();
        }
    }
    for (auto x : post) {
        if (kids[x].empty()) {
            px[x] = next_leaf++;
        } else {
            double s = 0;
            for (auto c : kids[x]) s += px[c];
            px[x] = s / static_cast<double>(kids[x].size());
        }
        py[x] = rv.depth[x];
    }
    const double sx = 40, sy = 60, margin = 30;
    double width = 2 * margin + std::max(next_leaf - 1, 1.0) * sx;
    double height = 2 * margin + std::max<double>(max_depth, 1) * sy;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
        << "\">\n<g class=\"rectangles\" stroke=\"#9ab\" stroke-width=\"10\" stroke-linecap=\"round\">\n";
    for (auto [a, b] : t.edges())
        out << "<line x1=\"" << margin + px[a] * sx << "\" y1=\"" << margin + py[a] * sy << "\" x2=\""
            << margin + px[b] * sx << "\" y2=\"" << margin + py[b] * sy << "\"/>\n";
    out << "</g>\n<g class=\"disks\">\n";
    for (NodeId x = 0; x < t.size(); ++x) {
        bool leaf = cd.leaf_vertex.size() > x && cd.leaf_vertex[x].has_value();
        out << "<circle cx=\"" << margin + px[x] * sx << "\" cy=\"" << margin + py[x] * sy << "\" r=\""
            << (leaf ? 6 : 9) << "\" fill=\"" << (leaf ? "#fff" : "#cde") << "\" stroke=\"#000\"/>\n";
        if (leaf)
            out << "<text x=\"" << margin + px[x] * sx - 4 << "\" y=\"" << margin + py[x] * sy + 20
                << "\" font-size=\"10\">" << *cd.leaf_vertex[x] << "</text>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

}  // namespace planwidth
