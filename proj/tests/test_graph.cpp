#include <doctest.h>

#include "planwidth/graph.hpp"
#include "planwidth/json_io.hpp"
#include "planwidth/planarizers.hpp"

using namespace planwidth;

TEST_CASE("parse_graph") {
    auto g = parse_graph("2 1\n0 1");
    CHECK(g.num_vertices() == 2);
    CHECK(g.num_edges() == 1);
    CHECK(g.has_edge(1, 0));

    auto e = parse_graph("3 0");
    CHECK(e.num_vertices() == 3);
    CHECK(e.num_edges() == 0);

    try {
        parse_graph("2 1\n0 0");
        FAIL("self-loop accepted");
    } catch (const parse_error& err) {
        CHECK(err.kind() == ParseErrorKind::self_loop);
    }
    CHECK_THROWS_AS(parse_graph("2 1\n0 5"), parse_error);
    CHECK_THROWS_AS(parse_graph("3 2\n0 1\n1 0"), parse_error);
    CHECK_THROWS_AS(parse_graph("x"), parse_error);
}

TEST_CASE("serialization round trip") {
    for (const auto& g : {gen_complete_bipartite(3, 5), gen_circulant(9, {1, 3}), gen_path(1), parse_graph("4 0")}) {
        CHECK(parse_graph(serialize_graph(g)) == g);
        CHECK(graph_from_json(to_json(g)) == g);
    }
}

TEST_CASE("generators") {
    auto k35 = gen_complete_bipartite(3, 5);
    CHECK(k35.num_vertices() == 8);
    CHECK(k35.num_edges() == 15);
    CHECK(gen_complete_bipartite(1, 1).num_edges() == 1);
    auto k311 = gen_complete_bipartite(3, 11);
    CHECK(k311.num_vertices() == 14);
    CHECK(k311.num_edges() == 33);

    auto dc = gen_disjoint_cliques(2, 3);
    CHECK(dc.num_vertices() == 6);
    CHECK(dc.num_edges() == 6);
    CHECK(components(dc).size() == 2);
    CHECK(gen_disjoint_cliques(1, 4) == gen_complete(4));
    CHECK(gen_disjoint_cliques(3, 5).num_edges() == 30);

    CHECK(gen_circulant(5, {1}) == gen_cycle(5));
    auto c6 = gen_circulant(6, {1, 2});
    CHECK(c6.num_edges() == 12);
    CHECK(max_degree(c6) == 4);

    CHECK(gen_star(4).num_edges() == 4);
    CHECK(gen_path(5).num_edges() == 4);

    // random families are deterministic in the seed
    CHECK(gen_random_connected(12, 1, 3, 7) == gen_random_connected(12, 1, 3, 7));
    CHECK(components(gen_random_connected(12, 1, 3, 7)).size() == 1);
    auto b = gen_random_bounded_degree(20, 3, 25, 4);
    CHECK(max_degree(b) <= 3);
}

TEST_CASE("statistics") {
    CHECK(density(gen_complete(4)) == 1);
    CHECK(density(parse_graph("5 0")) == 0);
    CHECK(max_degree(gen_complete_bipartite(3, 5)) == 5);
    CHECK(components(gen_disjoint_cliques(3, 2)).size() == 3);

    // K3 plus a separate edge
    auto g = parse_graph("5 4\n0 1\n1 2\n0 2\n3 4");
    CHECK(densest_component(g) == std::vector<VertexId>{0, 1, 2});
    auto p = gen_path(6);
    CHECK(densest_component(p).size() == 6);

    // two K4, one of them missing an edge: 6/4 against 5/4
    auto k = gen_disjoint_cliques(2, 4);
    std::vector<Edge> es;
    for (const auto& e : k.edges())
        if (!(e.u == 0 && e.v == 1)) es.push_back(e);
    CHECK(densest_component(Graph(8, es)) == std::vector<VertexId>{4, 5, 6, 7});
}

TEST_CASE("planarization degrees") {
    auto rep = report_from_drawing("zarankiewicz", zarankiewicz_k3n(6));
    const auto& p = rep.planarization.planar;
    CHECK(max_degree(p) == std::max<std::size_t>(max_degree(gen_complete_bipartite(3, 6)), 4));
    for (VertexId v = 6 + 3; v < p.num_vertices(); ++v) CHECK(p.degree(v) == 4);
}
