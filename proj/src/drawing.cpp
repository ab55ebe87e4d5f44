#include "planwidth/drawing.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace planwidth {

const char* violation_tag(PositionViolation v) {
    switch (v) {
        case PositionViolation::duplicate_x: return "a:duplicate-x";
        case PositionViolation::concurrent_segments: return "b:concurrent-segments";
        case PositionViolation::vertex_on_edge: return "c:vertex-on-edge";
        case PositionViolation::collinear_overlap: return "d:collinear-overlap";
    }
    return "?";
}

degeneracy_error::degeneracy_error(PositionReport report)
    : std::runtime_error(std::string("degenerate drawing (") + violation_tag(report.kind) +
                         "): " + report.detail),
      report_(std::move(report)) {}

int orientation(const Point& p, const Point& q, const Point& r) {
    Rational c = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    return sgn(c);
}

namespace {

void check_shape(const Drawing& d) {
    if (d.pos.size() != d.graph.num_vertices())
        throw graph_error("drawing has " + std::to_string(d.pos.size()) + " positions for " +
                          std::to_string(d.graph.num_vertices()) + " vertices");
}

// coordinate along the segment's dominant axis; valid for points on the segment's line
const Rational& axis_coord(const Point& p, bool use_x) { return use_x ? p.x : p.y; }

bool strictly_between(const Point& a, const Point& b, const Point& w) {
    bool use_x = a.x != b.x;
    const auto& lo = std::min(axis_coord(a, use_x), axis_coord(b, use_x));
    const auto& hi = std::max(axis_coord(a, use_x), axis_coord(b, use_x));
    const auto& c = axis_coord(w, use_x);
    return lo < c && c < hi;
}

std::string edge_str(const Graph& g, EdgeId e) {
    return "edge " + std::to_string(e) + " (" + std::to_string(g.edge(e).u) + "," +
           std::to_string(g.edge(e).v) + ")";
}

struct Scan {
    std::vector<CrossingEvent> events;
    std::optional<PositionReport> overlap;
    std::optional<PositionReport> on_edge;
    std::optional<PositionReport> concurrent;
};

Scan scan(const Drawing& d) {
    check_shape(d);
    const Graph& g = d.graph;
    const auto m = g.num_edges();
    Scan s;

    // (d) collinear overlaps
    for (EdgeId i = 0; i < m && !s.overlap; ++i) {
        const auto& ei = g.edge(i);
        const Point &a = d.pos[ei.u], &b = d.pos[ei.v];
        for (EdgeId j = i + 1; j < m; ++j) {
            const auto& ej = g.edge(j);
            const Point &c = d.pos[ej.u], &dd = d.pos[ej.v];
            if (orientation(a, b, c) != 0 || orientation(a, b, dd) != 0) continue;
            bool use_x = a.x != b.x || c.x != dd.x;
            Rational lo1 = std::min(axis_coord(a, use_x), axis_coord(b, use_x));
            Rational hi1 = std::max(axis_coord(a, use_x), axis_coord(b, use_x));
            Rational lo2 = std::min(axis_coord(c, use_x), axis_coord(dd, use_x));
            Rational hi2 = std::max(axis_coord(c, use_x), axis_coord(dd, use_x));
            if (std::max(lo1, lo2) < std::min(hi1, hi2)) {
                s.overlap = PositionReport{PositionViolation::collinear_overlap, {i, j}, {},
                                           edge_str(g, i) + " overlaps " + edge_str(g, j)};
                break;
            }
        }
    }

    // (c) a vertex in the relative interior of a segment it does not belong to
    for (EdgeId i = 0; i < m && !s.on_edge; ++i) {
        const auto& e = g.edge(i);
        const Point &a = d.pos[e.u], &b = d.pos[e.v];
        for (VertexId w = 0; w < g.num_vertices(); ++w) {
            if (w == e.u || w == e.v) continue;
            if (orientation(a, b, d.pos[w]) == 0 && strictly_between(a, b, d.pos[w])) {
                s.on_edge = PositionReport{PositionViolation::vertex_on_edge, {i}, {w},
                                           "vertex " + std::to_string(w) + " lies on " + edge_str(g, i)};
                break;
            }
        }
    }

    for (EdgeId i = 0; i < m; ++i) {
        const auto& ei = g.edge(i);
        const Point &a = d.pos[ei.u], &b = d.pos[ei.v];
        for (EdgeId j = i + 1; j < m; ++j) {
            const auto& ej = g.edge(j);
            if (ej.u == ei.u || ej.u == ei.v || ej.v == ei.u || ej.v == ei.v) continue;
            const Point &c = d.pos[ej.u], &dd = d.pos[ej.v];
            int o1 = orientation(a, b, c), o2 = orientation(a, b, dd);
            if (o1 * o2 >= 0) continue;
            int o3 = orientation(c, dd, a), o4 = orientation(c, dd, b);
            if (o3 * o4 >= 0) continue;
            Rational rx = b.x - a.x, ry = b.y - a.y, sx = dd.x - c.x, sy = dd.y - c.y;
            Rational t = ((c.x - a.x) * sy - (c.y - a.y) * sx) / (rx * sy - ry * sx);
            s.events.push_back({i, j, Point{a.x + t * rx, a.y + t * ry}});
        }
    }

    // (b) two events at one point means three or more segments through it
    std::vector<std::size_t> idx(s.events.size());
    std::iota(idx.begin(), idx.end(), 0);
    auto by_point = [&](std::size_t p, std::size_t q) {
        const auto &P = s.events[p].at, &Q = s.events[q].at;
        if (P.x != Q.x) return P.x < Q.x;
        if (P.y != Q.y) return P.y < Q.y;
        return p < q;
    };
    std::sort(idx.begin(), idx.end(), by_point);
    for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
        const auto &E = s.events[idx[k]], &F = s.events[idx[k + 1]];
        if (E.at == F.at) {
            std::vector<EdgeId> es{E.edge_a, E.edge_b, F.edge_a, F.edge_b};
            std::sort(es.begin(), es.end());
            es.erase(std::unique(es.begin(), es.end()), es.end());
            std::string names;
            for (auto e : es) names += (names.empty() ? "" : ", ") + edge_str(d.graph, e);
            s.concurrent = PositionReport{PositionViolation::concurrent_segments, es, {},
                                          "segments meet at one point: " + names};
            break;
        }
    }
    return s;
}

std::optional<PositionReport> first_structural(const Scan& s) {
    if (s.overlap) return s.overlap;
    if (s.on_edge) return s.on_edge;
    if (s.concurrent) return s.concurrent;
    return std::nullopt;
}

std::optional<PositionReport> duplicate_x(const Drawing& d, const std::vector<CrossingEvent>& events) {
    // (value, is_vertex, id)
    struct Item {
        const Rational* x;
        bool vertex;
        std::size_t id;
    };
    std::vector<Item> items;
    for (VertexId v = 0; v < d.graph.num_vertices(); ++v) items.push_back({&d.pos[v].x, true, v});
    for (std::size_t k = 0; k < events.size(); ++k) items.push_back({&events[k].at.x, false, k});
    std::sort(items.begin(), items.end(), [](const Item& p, const Item& q) {
        if (*p.x != *q.x) return *p.x < *q.x;
        if (p.vertex != q.vertex) return p.vertex;
        return p.id < q.id;
    });
    for (std::size_t k = 0; k + 1 < items.size(); ++k) {
        if (*items[k].x != *items[k + 1].x) continue;
        PositionReport r{PositionViolation::duplicate_x, {}, {}, ""};
        auto describe = [&](const Item& it) {
            if (it.vertex) {
                r.vertices.push_back(static_cast<VertexId>(it.id));
                return "vertex " + std::to_string(it.id);
            }
            const auto& ev = events[it.id];
            r.edges.push_back(ev.edge_a);
            r.edges.push_back(ev.edge_b);
            return "crossing of edges " + std::to_string(ev.edge_a) + "/" + std::to_string(ev.edge_b);
        };
        auto lhs = describe(items[k]);
        auto rhs = describe(items[k + 1]);
        r.detail = lhs + " and " + rhs + " share x = " + to_string(*items[k].x);
        return r;
    }
    return std::nullopt;
}

}  // namespace

std::optional<PositionReport> check_general_position(const Drawing& d) {
    auto s = scan(d);
    if (auto r = first_structural(s)) return r;
    return duplicate_x(d, s.events);
}

std::vector<CrossingEvent> crossing_events_unchecked_x(const Drawing& d) {
    auto s = scan(d);
    if (auto r = first_structural(s)) throw degeneracy_error(*r);
    return std::move(s.events);
}

std::vector<CrossingEvent> crossings(const Drawing& d) {
    auto s = scan(d);
    if (auto r = first_structural(s)) throw degeneracy_error(*r);
    if (auto r = duplicate_x(d, s.events)) throw degeneracy_error(*r);
    return std::move(s.events);
}

// ---------------------------------------------------------------------------

Planarization make_planarization(const Graph& original, std::vector<VertexKind> dummy_kinds,
                                 std::vector<std::vector<VertexId>> chains) {
    const auto n = original.num_vertices();
    const auto total = n + dummy_kinds.size();
    if (chains.size() != original.num_edges())
        throw graph_error("one chain per original edge required");

    std::vector<VertexKind> kinds(original.kinds().begin(), original.kinds().end());
    for (auto& k : dummy_kinds) {
        if (!k.dummy) throw graph_error("dummy vertex without crossing provenance");
        kinds.push_back(k);
    }
    std::vector<Edge> edges;
    std::vector<int> uses(total, 0);
    for (EdgeId e = 0; e < chains.size(); ++e) {
        const auto& c = chains[e];
        const auto& oe = original.edge(e);
        if (c.size() < 2 || c.front() != oe.u || c.back() != oe.v)
            throw graph_error("chain of edge " + std::to_string(e) + " does not join its endpoints");
        for (std::size_t i = 1; i + 1 < c.size(); ++i) {
            auto x = c[i];
            if (x < n || x >= total) throw graph_error("chain interior vertex is not a dummy");
            const auto& k = kinds[x];
            if (k.edge_a != e && k.edge_b != e)
                throw graph_error("dummy " + std::to_string(x) + " on chain of unrelated edge " +
                                  std::to_string(e));
            ++uses[x];
        }
        for (std::size_t i = 0; i + 1 < c.size(); ++i)
            edges.push_back({std::min(c[i], c[i + 1]), std::max(c[i], c[i + 1])});
    }
    for (std::size_t x = n; x < total; ++x)
        if (uses[x] != 2) throw graph_error("dummy " + std::to_string(x) + " is not on exactly two chains");

    Planarization p;
    p.original = original;
    p.planar = Graph(total, std::move(edges), std::move(kinds));
    p.chains = std::move(chains);
    return p;
}

Planarization planarize_drawing(const Drawing& d) {
    auto events = crossings(d);
    const Graph& g = d.graph;
    const auto n = g.num_vertices();

    std::vector<std::vector<std::pair<const Point*, VertexId>>> on_edge(g.num_edges());
    std::vector<VertexKind> dummy_kinds;
    for (std::size_t k = 0; k < events.size(); ++k) {
        auto id = static_cast<VertexId>(n + k);
        on_edge[events[k].edge_a].push_back({&events[k].at, id});
        on_edge[events[k].edge_b].push_back({&events[k].at, id});
        dummy_kinds.push_back(VertexKind::crossing(events[k].edge_a, events[k].edge_b));
    }

    std::vector<std::vector<VertexId>> chains(g.num_edges());
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        const auto& ed = g.edge(e);
        const Point &a = d.pos[ed.u], &b = d.pos[ed.v];
        bool use_x = a.x != b.x;
        bool forward = use_x ? a.x < b.x : a.y < b.y;
        auto& list = on_edge[e];
        std::sort(list.begin(), list.end(), [&](const auto& p, const auto& q) {
            const auto& pc = axis_coord(*p.first, use_x);
            const auto& qc = axis_coord(*q.first, use_x);
            return forward ? pc < qc : pc > qc;
        });
        chains[e].push_back(ed.u);
        for (const auto& [pt, id] : list) chains[e].push_back(id);
        chains[e].push_back(ed.v);
    }
    return make_planarization(g, std::move(dummy_kinds), std::move(chains));
}

Graph contract_dummies(const Planarization& p) {
    const auto n = p.original.num_vertices();
    std::map<Edge, int> covered;
    for (const auto& e : p.planar.edges()) covered[e] = 0;
    std::vector<Edge> rebuilt;
    for (const auto& c : p.chains) {
        for (std::size_t i = 0; i + 1 < c.size(); ++i) {
            Edge e{std::min(c[i], c[i + 1]), std::max(c[i], c[i + 1])};
            auto it = covered.find(e);
            if (it == covered.end() || it->second++ != 0)
                throw graph_error("chain step is not a unique planar edge");
        }
        if (c.front() >= n || c.back() >= n) throw graph_error("chain endpoint is a dummy");
        rebuilt.push_back({c.front(), c.back()});
    }
    for (const auto& [e, count] : covered)
        if (count != 1) throw graph_error("planar edge not covered by any chain");
    return Graph(n, std::move(rebuilt));
}

Graph crossing_graph(const Drawing& d) {
    std::vector<Edge> edges;
    for (const auto& ev : crossings(d)) edges.push_back({ev.edge_a, ev.edge_b});
    return Graph(d.graph.num_edges(), std::move(edges));
}

// ---------------------------------------------------------------------------

std::string export_svg(const Drawing& d, const SvgOptions& opts) {
    check_shape(d);
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(2);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << opts.width
        << "\" height=\"" << opts.height << "\" viewBox=\"0 0 " << opts.width << ' ' << opts.height
        << "\">\n";
    const auto n = d.graph.num_vertices();
    if (n == 0) {
        out << "</svg>\n";
        return out.str();
    }

    std::vector<double> xs(n), ys(n);
    for (std::size_t v = 0; v < n; ++v) {
        xs[v] = d.pos[v].x.get_d();
        ys[v] = d.pos[v].y.get_d();
    }
    auto [xmin, xmax] = std::minmax_element(xs.begin(), xs.end());
    auto [ymin, ymax] = std::minmax_element(ys.begin(), ys.end());
    double spanx = std::max(*xmax - *xmin, 1e-9), spany = std::max(*ymax - *ymin, 1e-9);
    double scale = std::min((opts.width - 2 * opts.margin) / spanx, (opts.height - 2 * opts.margin) / spany);
    double x0 = *xmin, y1 = *ymax;
    auto px = [&](double x) { return opts.margin + (x - x0) * scale; };
    auto py = [&](double y) { return opts.margin + (y1 - y) * scale; };  // y grows upward

    out << "<g class=\"edges\" stroke=\"#333\" stroke-width=\"1.2\">\n";
    for (const auto& e : d.graph.edges())
        out << "<line x1=\"" << px(xs[e.u]) << "\" y1=\"" << py(ys[e.u]) << "\" x2=\"" << px(xs[e.v])
            << "\" y2=\"" << py(ys[e.v]) << "\"/>\n";
    out << "</g>\n";

    if (opts.mark_crossings) {
        std::vector<CrossingEvent> events;
        try {
            events = crossing_events_unchecked_x(d);
        } catch (const degeneracy_error&) {
            events.clear();
        }
        if (!events.empty()) {
            double r = opts.vertex_radius * 0.7;
            out << "<g class=\"crossings\" fill=\"#d33\">\n";
            for (const auto& ev : events)
                out << "<rect x=\"" << px(ev.at.x.get_d()) - r << "\" y=\"" << py(ev.at.y.get_d()) - r
                    << "\" width=\"" << 2 * r << "\" height=\"" << 2 * r << "\"/>\n";
            out << "</g>\n";
        }
    }

    out << "<g class=\"vertices\">\n";
    for (std::size_t v = 0; v < n; ++v) {
        if (d.graph.kind(static_cast<VertexId>(v)).dummy) {
            double r = opts.vertex_radius * 0.7;
            out << "<rect class=\"dummy\" fill=\"#d33\" x=\"" << px(xs[v]) - r << "\" y=\"" << py(ys[v]) - r
                << "\" width=\"" << 2 * r << "\" height=\"" << 2 * r << "\"/>\n";
        } else {
            out << "<circle class=\"vertex\" fill=\"#fff\" stroke=\"#000\" cx=\"" << px(xs[v]) << "\" cy=\""
                << py(ys[v]) << "\" r=\"" << opts.vertex_radius << "\"/>\n";
        }
        if (opts.label_vertices)
            out << "<text x=\"" << px(xs[v]) + opts.vertex_radius + 2 << "\" y=\"" << py(ys[v]) - 2
                << "\" font-size=\"10\">" << v << "</text>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

}  // namespace planwidth
