#include <doctest.h>

#include "../oracle/oracle.hpp"
#include "planwidth/drawing.hpp"
#include "planwidth/planarity.hpp"
#include "planwidth/planarizers.hpp"

using namespace planwidth;

namespace {

Drawing make(std::size_t n, std::vector<Edge> edges, std::vector<std::pair<Rational, Rational>> pts) {
    Drawing d;
    d.graph = Graph(n, std::move(edges));
    for (auto& [x, y] : pts) d.pos.push_back({x, y});
    return d;
}

}  // namespace

TEST_CASE("crossing events") {
    auto apart = make(4, {{0, 1}, {2, 3}}, {{0, 0}, {1, 0}, {2, 1}, {3, 1}});
    CHECK(crossings(apart).empty());

    // an X
    auto x = make(4, {{0, 1}, {2, 3}}, {{0, 0}, {2, 2}, {Rational(1, 2), 2}, {Rational(5, 2), 0}});
    auto ev = crossings(x);
    REQUIRE(ev.size() == 1);

    // the symmetric X has shared x; the unchecked variant still finds the point
    auto sym = make(4, {{0, 1}, {2, 3}}, {{0, 0}, {2, 2}, {0, 2}, {2, 0}});
    auto ev2 = crossing_events_unchecked_x(sym);
    REQUIRE(ev2.size() == 1);
    CHECK(ev2[0].at == Point{1, 1});

    auto z = zarankiewicz_k3n(11);
    CHECK(crossings(z).size() == 25);
    CHECK(oracle::crossing_count(z) == 25);
}

TEST_CASE("general position") {
    auto vertical = make(3, {}, {{1, 0}, {1, 1}, {1, 2}});
    auto r = check_general_position(vertical);
    REQUIRE(r);
    CHECK(r->kind == PositionViolation::duplicate_x);

    // affine image of a regular hexagon: the three main diagonals meet at the centre
    auto hex = make(6, {{0, 3}, {1, 4}, {2, 5}},
                    {{2, 0}, {1, 2}, {-1, 2}, {-2, 0}, {-1, -2}, {1, -2}});
    auto h = check_general_position(hex);
    REQUIRE(h);
    CHECK(h->kind == PositionViolation::concurrent_segments);
    CHECK(std::string(violation_tag(h->kind)) == "b:concurrent-segments");
    CHECK_THROWS_AS(crossings(hex), degeneracy_error);

    auto on_edge = make(3, {{0, 2}}, {{0, 0}, {1, 1}, {2, 2}});
    auto oe = check_general_position(on_edge);
    REQUIRE(oe);
    CHECK(oe->kind == PositionViolation::vertex_on_edge);

    auto lift = convex_lift(gen_complete_bipartite(3, 4), LinearArrangement::identity(7));
    CHECK_FALSE(check_general_position(lift.drawing));
}

TEST_CASE("planarize_drawing") {
    auto tri = make(3, {{0, 1}, {1, 2}, {0, 2}}, {{0, 0}, {1, 2}, {2, 1}});
    auto p = planarize_drawing(tri);
    CHECK(p.planar.dummy_count() == 0);
    CHECK(p.planar == tri.graph);

    auto x = make(4, {{0, 1}, {2, 3}}, {{0, 0}, {2, 2}, {Rational(1, 2), 2}, {Rational(5, 2), 0}});
    auto px = planarize_drawing(x);
    CHECK(px.planar.num_vertices() == 5);
    CHECK(px.planar.num_edges() == 4);
    CHECK(px.planar.degree(4) == 4);
    CHECK(px.planar.kind(4).dummy);
    CHECK(contract_dummies(px) == x.graph);

    auto pz = planarize_drawing(zarankiewicz_k3n(11));
    CHECK(pz.planar.num_vertices() == 39);
    CHECK(is_planar(pz.planar));
    CHECK(contract_dummies(pz) == gen_complete_bipartite(3, 11));
}

TEST_CASE("crossing graph") {
    auto tri = make(3, {{0, 1}, {1, 2}, {0, 2}}, {{0, 0}, {1, 2}, {2, 1}});
    CHECK(crossing_graph(tri).num_edges() == 0);
    auto c11 = crossing_graph(zarankiewicz_k3n(11));
    CHECK(c11.num_vertices() == 33);
    CHECK(c11.num_edges() == 25);
    CHECK(crossing_graph(zarankiewicz_k3n(6)).num_edges() == 6);
    // density of the K(3,12) crossing graph reaches (12^2/4)/C(36,2) only up to the 1 - 2/n term
    auto c12 = crossing_graph(zarankiewicz_k3n(12));
    CHECK(density(c12) == make_rational(30, 630));
}

TEST_CASE("svg") {
    Drawing empty;
    auto s = export_svg(empty);
    CHECK(s.find("<svg") != std::string::npos);
    CHECK(s.find("<circle") == std::string::npos);
    CHECK(s.find("<line") == std::string::npos);

    auto one = export_svg(make(2, {{0, 1}}, {{0, 0}, {1, 1}}));
    auto count = [](const std::string& text, const std::string& tag) {
        std::size_t c = 0;
        for (auto p = text.find(tag); p != std::string::npos; p = text.find(tag, p + 1)) ++c;
        return c;
    };
    CHECK(count(one, "<circle") == 2);
    CHECK(count(one, "<line") == 1);

    auto z = export_svg(zarankiewicz_k3n(11));
    CHECK(count(z, "<line") == 33);
}
