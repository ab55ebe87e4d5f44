#include "planwidth/graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <random>
#include <sstream>

namespace planwidth {

VertexKind VertexKind::crossing(EdgeId a, EdgeId b) {
    if (a == b) throw graph_error("dummy vertex must reference two distinct edges");
    VertexKind k;
    k.dummy = true;
    k.edge_a = std::min(a, b);
    k.edge_b = std::max(a, b);
    return k;
}

Graph::Graph(std::size_t n, std::vector<Edge> edges, std::vector<VertexKind> kinds)
    : n_(n), edges_(std::move(edges)), adj_(n), kinds_(std::move(kinds)) {
    if (kinds_.empty()) kinds_.assign(n, VertexKind::original());
    if (kinds_.size() != n) throw graph_error("kind map size differs from vertex count");
    for (auto& e : edges_) {
        if (e.u == e.v) throw graph_error("self-loop at vertex " + std::to_string(e.u));
        if (e.u >= n || e.v >= n)
            throw graph_error("edge endpoint out of range: " + std::to_string(e.u) + " " +
                              std::to_string(e.v));
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end());
    if (auto it = std::adjacent_find(edges_.begin(), edges_.end()); it != edges_.end())
        throw graph_error("parallel edge " + std::to_string(it->u) + " " + std::to_string(it->v));
    for (const auto& e : edges_) {
        adj_[e.u].push_back(e.v);
        adj_[e.v].push_back(e.u);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
}

bool Graph::has_edge(VertexId u, VertexId v) const { return edge_id(u, v).has_value(); }

std::optional<EdgeId> Graph::edge_id(VertexId u, VertexId v) const {
    if (u > v) std::swap(u, v);
    Edge key{u, v};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key) return std::nullopt;
    return static_cast<EdgeId>(it - edges_.begin());
}

std::size_t Graph::dummy_count() const {
    return static_cast<std::size_t>(
        std::count_if(kinds_.begin(), kinds_.end(), [](const VertexKind& k) { return k.dummy; }));
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

bool to_size(std::string_view tok, std::size_t& out) {
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && p == tok.data() + tok.size();
}

}  // namespace

Graph parse_graph(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) nl = text.size();
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    // trailing blank lines are tolerated, nothing else is
    while (!lines.empty() && split_ws(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) throw parse_error(ParseErrorKind::malformed_line, 1, "missing header line");

    auto header = split_ws(lines[0]);
    std::size_t n = 0, m = 0;
    if (header.size() != 2 || !to_size(header[0], n) || !to_size(header[1], m))
        throw parse_error(ParseErrorKind::malformed_line, 1, "header must be `n m`");
    if (lines.size() - 1 != m)
        throw parse_error(ParseErrorKind::malformed_line, lines.size(),
                          "expected " + std::to_string(m) + " edge lines, found " +
                              std::to_string(lines.size() - 1));

    std::vector<Edge> edges;
    edges.reserve(m);
    std::vector<Edge> seen;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto tok = split_ws(lines[i]);
        std::size_t u = 0, v = 0;
        if (tok.size() != 2 || !to_size(tok[0], u) || !to_size(tok[1], v))
            throw parse_error(ParseErrorKind::malformed_line, i + 1, "edge line must be `u v`");
        if (u >= n || v >= n)
            throw parse_error(ParseErrorKind::endpoint_out_of_range, i + 1,
                              "endpoint >= n on line " + std::to_string(i + 1));
        if (u == v)
            throw parse_error(ParseErrorKind::self_loop, i + 1,
                              "self-loop on line " + std::to_string(i + 1));
        edges.push_back({static_cast<VertexId>(std::min(u, v)), static_cast<VertexId>(std::max(u, v))});
    }
    seen = edges;
    std::sort(seen.begin(), seen.end());
    if (auto it = std::adjacent_find(seen.begin(), seen.end()); it != seen.end()) {
        // report the line of the second occurrence
        std::size_t hits = 0;
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (edges[i] == *it && ++hits == 2)
                throw parse_error(ParseErrorKind::duplicate_edge, i + 2,
                                  "duplicate edge on line " + std::to_string(i + 2));
    }
    return Graph(n, std::move(edges));
}

std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    out << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------

Graph gen_complete_bipartite(std::size_t a, std::size_t b) {
    if (a == 0 || b == 0) throw graph_error("complete bipartite sides must be positive");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < b; ++j)
            edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(a + j)});
    return Graph(a + b, std::move(edges));
}

Graph gen_disjoint_cliques(std::size_t k, std::size_t s) {
    if (k == 0 || s == 0) throw graph_error("clique count and size must be positive");
    std::vector<Edge> edges;
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = i + 1; j < s; ++j)
                edges.push_back({static_cast<VertexId>(c * s + i), static_cast<VertexId>(c * s + j)});
    return Graph(k * s, std::move(edges));
}

Graph gen_circulant(std::size_t n, const std::vector<std::size_t>& offsets) {
    if (n < 3) throw graph_error("circulant needs n >= 3");
    std::vector<Edge> edges;
    for (auto o : offsets) {
        if (o < 1 || 2 * o > n) throw graph_error("circulant offset out of range: " + std::to_string(o));
        for (std::size_t i = 0; i < n; ++i) {
            auto j = (i + o) % n;
            edges.push_back({static_cast<VertexId>(std::min(i, j)), static_cast<VertexId>(std::max(i, j))});
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Graph(n, std::move(edges));
}

Graph gen_path(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < n; ++i)
        edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(i + 1)});
    return Graph(n, std::move(edges));
}

Graph gen_cycle(std::size_t n) { return gen_circulant(n, {1}); }

Graph gen_complete(std::size_t n) {
    if (n == 0) return Graph();
    return gen_disjoint_cliques(1, n);
}

Graph gen_star(std::size_t leaves) {
    std::vector<Edge> edges;
    for (std::size_t i = 1; i <= leaves; ++i) edges.push_back({0, static_cast<VertexId>(i)});
    return Graph(leaves + 1, std::move(edges));
}

Graph gen_random_connected(std::size_t n, unsigned p_num, unsigned p_den, std::uint64_t seed) {
    if (p_den == 0 || p_num > p_den) throw graph_error("edge probability must lie in [0,1]");
    std::mt19937_64 rng(seed);
    std::vector<Edge> edges;
    for (std::size_t v = 1; v < n; ++v) {
        std::uniform_int_distribution<std::size_t> pick(0, v - 1);
        edges.push_back({static_cast<VertexId>(pick(rng)), static_cast<VertexId>(v)});
    }
    std::uniform_int_distribution<unsigned> coin(0, p_den - 1);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
            bool draw = coin(rng) < p_num;
            Edge e{static_cast<VertexId>(u), static_cast<VertexId>(v)};
            if (draw && std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
        }
    return Graph(n, std::move(edges));
}

Graph gen_random_bounded_degree(std::size_t n, std::size_t max_deg, std::size_t target_edges,
                                std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Edge> edges;
    std::vector<std::size_t> deg(n, 0);
    if (n < 2) return Graph(n, {});
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::size_t attempts = 0;
    while (edges.size() < target_edges && attempts < 200 * (target_edges + 1)) {
        ++attempts;
        auto u = pick(rng), v = pick(rng);
        if (u == v || deg[u] >= max_deg || deg[v] >= max_deg) continue;
        Edge e{static_cast<VertexId>(std::min(u, v)), static_cast<VertexId>(std::max(u, v))};
        if (std::find(edges.begin(), edges.end(), e) != edges.end()) continue;
        edges.push_back(e);
        ++deg[u];
        ++deg[v];
    }
    return Graph(n, std::move(edges));
}

// ---------------------------------------------------------------------------

Rational density(const Graph& g) {
    auto n = g.num_vertices();
    if (n < 2) throw graph_error("density needs at least two vertices");
    Rational r(static_cast<unsigned long>(2 * g.num_edges()), static_cast<unsigned long>(n * (n - 1)));
    r.canonicalize();
    return r;
}

std::vector<std::vector<VertexId>> components(const Graph& g) {
    std::vector<std::vector<VertexId>> out;
    std::vector<bool> seen(g.num_vertices(), false);
    for (VertexId s = 0; s < g.num_vertices(); ++s) {
        if (seen[s]) continue;
        std::vector<VertexId> comp{s};
        seen[s] = true;
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (auto w : g.neighbors(comp[i]))
                if (!seen[w]) {
                    seen[w] = true;
                    comp.push_back(w);
                }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

std::vector<VertexId> densest_component(const Graph& g) {
    if (g.num_edges() == 0) throw graph_error("densest component of an edgeless graph");
    std::vector<std::size_t> comp_of(g.num_vertices());
    auto comps = components(g);
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (auto v : comps[c]) comp_of[v] = c;
    std::vector<std::size_t> m(comps.size(), 0);
    for (const auto& e : g.edges()) ++m[comp_of[e.u]];

    std::size_t best = 0;
    for (std::size_t c = 1; c < comps.size(); ++c) {
        // m_c / n_c > m_best / n_best
        if (m[c] * comps[best].size() > m[best] * comps[c].size()) best = c;
    }
    return comps[best];
}

std::size_t max_degree(const Graph& g) {
    std::size_t d = 0;
    for (VertexId v = 0; v < g.num_vertices(); ++v) d = std::max(d, g.degree(v));
    return d;
}

Graph induced_subgraph(const Graph& g, const std::vector<VertexId>& vertices) {
    std::vector<std::int64_t> index(g.num_vertices(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) index.at(vertices[i]) = static_cast<std::int64_t>(i);
    std::vector<Edge> edges;
    for (const auto& e : g.edges())
        if (index[e.u] >= 0 && index[e.v] >= 0)
            edges.push_back({static_cast<VertexId>(index[e.u]), static_cast<VertexId>(index[e.v])});
    return Graph(vertices.size(), std::move(edges));
}

Rational parse_rational(const std::string& text) {
    Rational r;
    if (text.empty() || r.set_str(text, 10) != 0) throw std::invalid_argument("bad rational: " + text);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    r.canonicalize();
    return r;
}

}  // namespace planwidth
