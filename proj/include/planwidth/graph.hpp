#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "planwidth/rational.hpp"

namespace planwidth {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
    VertexId u = 0;
    VertexId v = 0;  // u < v always

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Provenance of a vertex. A dummy replaces the crossing of two original edges.
struct VertexKind {
    bool dummy = false;
    EdgeId edge_a = 0;
    EdgeId edge_b = 0;

    static VertexKind original() { return {}; }
    static VertexKind crossing(EdgeId a, EdgeId b);

    friend bool operator==(const VertexKind&, const VertexKind&) = default;
};

class graph_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Immutable simple undirected graph. Edges are stored sorted; an EdgeId is
/// the index into that sorted list.
class Graph {
public:
    Graph() = default;
    Graph(std::size_t n, std::vector<Edge> edges, std::vector<VertexKind> kinds = {});

    std::size_t num_vertices() const { return n_; }
    std::size_t num_edges() const { return edges_.size(); }

    std::span<const Edge> edges() const { return edges_; }
    const Edge& edge(EdgeId e) const { return edges_.at(e); }
    std::span<const VertexId> neighbors(VertexId v) const { return adj_.at(v); }
    std::size_t degree(VertexId v) const { return adj_.at(v).size(); }
    const VertexKind& kind(VertexId v) const { return kinds_.at(v); }
    std::span<const VertexKind> kinds() const { return kinds_; }

    bool has_edge(VertexId u, VertexId v) const;
    std::optional<EdgeId> edge_id(VertexId u, VertexId v) const;
    std::size_t dummy_count() const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_ && a.kinds_ == b.kinds_;
    }

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<VertexId>> adj_;
    std::vector<VertexKind> kinds_;
};

// -- edge-list text format ------------------------------------------------

enum class ParseErrorKind { malformed_line, endpoint_out_of_range, duplicate_edge, self_loop };

class parse_error : public std::runtime_error {
public:
    parse_error(ParseErrorKind kind, std::size_t line, const std::string& what)
        : std::runtime_error(what), kind_(kind), line_(line) {}
    ParseErrorKind kind() const { return kind_; }
    std::size_t line() const { return line_; }

private:
    ParseErrorKind kind_;
    std::size_t line_;
};

Graph parse_graph(std::string_view text);
std::string serialize_graph(const Graph& g);

// -- generators -----------------------------------------------------------

Graph gen_complete_bipartite(std::size_t a, std::size_t b);
Graph gen_disjoint_cliques(std::size_t k, std::size_t s);
Graph gen_circulant(std::size_t n, const std::vector<std::size_t>& offsets);
Graph gen_path(std::size_t n);
Graph gen_cycle(std::size_t n);
Graph gen_complete(std::size_t n);
Graph gen_star(std::size_t leaves);
/// Random spanning tree plus each remaining pair with probability p_num/p_den.
Graph gen_random_connected(std::size_t n, unsigned p_num, unsigned p_den, std::uint64_t seed);
/// Random graph with every degree at most max_deg (greedy random edge insertion).
Graph gen_random_bounded_degree(std::size_t n, std::size_t max_deg, std::size_t target_edges,
                                std::uint64_t seed);

// -- statistics -----------------------------------------------------------

Rational density(const Graph& g);
std::vector<std::vector<VertexId>> components(const Graph& g);
std::vector<VertexId> densest_component(const Graph& g);
std::size_t max_degree(const Graph& g);
Graph induced_subgraph(const Graph& g, const std::vector<VertexId>& vertices);

}  // namespace planwidth
