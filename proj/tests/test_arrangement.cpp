#include <doctest.h>

#include <algorithm>
#include <random>

#include "../oracle/oracle.hpp"
#include "planwidth/arrangement.hpp"
#include "planwidth/decomposition.hpp"

using namespace planwidth;

TEST_CASE("separation numbers") {
    auto p = gen_path(6);
    auto id = LinearArrangement::identity(6);
    CHECK(edge_separation(p, id) == 1);
    CHECK(vertex_separation(p, id) == 1);
    CHECK(span(p, id) == 1);

    // K(3,4): two houses, the three utilities, two houses
    auto k34 = gen_complete_bipartite(3, 4);
    LinearArrangement split_order({3, 4, 0, 1, 2, 5, 6});
    CHECK(edge_separation(k34, split_order) == 6);
    CHECK(prefix_cuts(k34, split_order) == std::vector<std::size_t>{3, 6, 6, 6, 6, 3});

    // K(3,5) with the utilities first
    auto k35 = gen_complete_bipartite(3, 5);
    CHECK(vertex_separation(k35, LinearArrangement::identity(8)) == 3);

    CHECK(span(gen_cycle(7), LinearArrangement::identity(7)) == 6);
    CHECK(span(gen_circulant(8, {1, 2, 3}), LinearArrangement::identity(8)) == 7);
    CHECK(span(gen_circulant(12, {1, 2, 3}), fold_arrangement(12)) == 6);
}

TEST_CASE("arrangement bounds on random orders") {
    std::mt19937_64 rng(11);
    for (std::size_t n = 2; n <= 6; ++n) {
        auto g = gen_complete_bipartite(3, n);
        std::vector<VertexId> order(n + 3);
        std::iota(order.begin(), order.end(), 0);
        for (int trial = 0; trial < 40; ++trial) {
            std::shuffle(order.begin(), order.end(), rng);
            LinearArrangement a(order);
            // K(3,n) cutwidth lower bound, which holds for even n
            if (n % 2 == 0) CHECK(edge_separation(g, a) >= 3 * ((n + 1) / 2));
            CHECK(vertex_separation(g, a) <= edge_separation(g, a));
            CHECK(validate_tree_decomposition(g, arrangement_to_path_decomposition(g, a)) ==
                  static_cast<long>(vertex_separation(g, a)));
        }
    }
}

TEST_CASE("exact cutwidth") {
    CHECK(exact_cutwidth(gen_complete_bipartite(3, 4)).value == 6);
    CHECK(exact_cutwidth(gen_path(7)).value == 1);
    auto k33 = exact_cutwidth(gen_complete_bipartite(3, 3));
    CHECK(k33.value == 5);
    CHECK(oracle::cutwidth(gen_complete_bipartite(3, 3)) == 5);
    CHECK(edge_separation(gen_complete_bipartite(3, 3), k33.witness) == 5);
}

TEST_CASE("exact pathwidth") {
    CHECK(exact_pathwidth(gen_complete_bipartite(3, 5)).value == 3);
    CHECK(oracle::pathwidth(gen_complete_bipartite(3, 5)) == 3);
    CHECK(exact_pathwidth(gen_star(5)).value == 1);
    CHECK(exact_pathwidth(gen_complete(4)).value == 3);
    auto r = exact_pathwidth(gen_circulant(9, {1, 2}));
    CHECK(vertex_separation(gen_circulant(9, {1, 2}), r.witness) == r.value);
}

TEST_CASE("exact bandwidth") {
    CHECK(exact_bandwidth(gen_path(6)).value == 1);
    CHECK(exact_bandwidth(gen_cycle(7)).value == 2);
    auto k34 = gen_complete_bipartite(3, 4);
    auto r = exact_bandwidth(k34);
    CHECK(r.value == oracle::bandwidth(k34));
    CHECK(span(k34, r.witness) == r.value);
    // K8 minus a perfect matching: only the two end positions may hold a non-adjacent pair
    auto c8 = gen_circulant(8, {1, 2, 3});
    CHECK(exact_bandwidth(c8).value == 6);
    CHECK(oracle::bandwidth(c8) == 6);
}

TEST_CASE("solvers agree with exhaustive search") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        auto g = gen_random_connected(7, 2, 5, seed);
        CHECK(exact_cutwidth(g).value == oracle::cutwidth(g));
        CHECK(exact_pathwidth(g).value == oracle::pathwidth(g));
        CHECK(exact_bandwidth(g).value == oracle::bandwidth(g));
    }
}

TEST_CASE("limits are errors") {
    SolverLimits lim;
    lim.cutwidth = 5;
    CHECK_THROWS_AS(exact_cutwidth(gen_path(6), lim), limit_exceeded);
    lim.apply("cutwidth=6");
    CHECK(exact_cutwidth(gen_path(6), lim).value == 1);
    CHECK_THROWS(LinearArrangement({0, 0, 1}));
}
