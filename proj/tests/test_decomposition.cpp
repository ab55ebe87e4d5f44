#include <doctest.h>

#include <cmath>

#include "../oracle/oracle.hpp"
#include "planwidth/decomposition.hpp"
#include "planwidth/planarizers.hpp"

using namespace planwidth;

namespace {

Tree path_tree(std::size_t n) {
    std::vector<std::pair<NodeId, NodeId>> e;
    for (NodeId i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
    return Tree(n, e);
}

// three leaves around one centre (node 3)
Tree claw() { return Tree(4, {{0, 3}, {1, 3}, {2, 3}}); }

DecompositionFault fault_of(const auto& fn) {
    try {
        fn();
    } catch (const decomposition_error& e) {
        return e.fault();
    }
    FAIL("no decomposition_error");
    return DecompositionFault::malformed_tree;
}

}  // namespace

TEST_CASE("tree decomposition validator") {
    // utilities in every bag, one house per bag
    auto k35 = gen_complete_bipartite(3, 5);
    TreeDecomposition utilities_path{path_tree(5), {}};
    for (VertexId h = 3; h < 8; ++h) utilities_path.bags.push_back({0, 1, 2, h});
    CHECK(validate_tree_decomposition(k35, utilities_path) == 3);

    TreeDecomposition one{Tree(1, {}), {{0, 1, 2, 3, 4, 5, 6, 7}}};
    CHECK(validate_tree_decomposition(k35, one) == 7);

    auto missing = utilities_path;
    missing.bags[2] = {0, 1, 5};
    CHECK(fault_of([&] { validate_tree_decomposition(k35, missing); }) == DecompositionFault::edge_uncovered);

    auto split = utilities_path;
    split.bags[1].push_back(7);
    CHECK(fault_of([&] { validate_tree_decomposition(k35, split); }) == DecompositionFault::disconnected_bags);
}

TEST_CASE("exact treewidth") {
    CHECK(exact_treewidth(gen_path(6)).width == 1);
    CHECK(exact_treewidth(gen_star(5)).width == 1);
    for (std::size_t n = 3; n <= 6; ++n) CHECK(exact_treewidth(gen_complete_bipartite(3, n)).width == 3);
    CHECK(oracle::treewidth(gen_complete_bipartite(3, 5)) == 3);
    CHECK(exact_treewidth(gen_complete(5)).width == 4);

    auto g = report_from_drawing("zarankiewicz", zarankiewicz_k3n(5)).planarization.planar;
    auto r = exact_treewidth(g);
    CHECK(r.width == 4);
    CHECK(validate_tree_decomposition(g, r.decomposition) == r.width);

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto h = gen_random_connected(8, 2, 5, seed);
        CHECK(exact_treewidth(h).width == static_cast<long>(oracle::treewidth(h)));
    }
}

TEST_CASE("tree-depth counts edges on the longest root path") {
    CHECK(exact_treedepth(gen_complete_bipartite(3, 8)).depth == 3);
    CHECK(oracle::treedepth(gen_complete_bipartite(3, 8)) == 3);
    CHECK(exact_treedepth(gen_path(4)).depth == 2);
    CHECK(exact_treedepth(gen_path(1)).depth == 0);
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        auto g = gen_random_connected(9, 1, 3, seed);
        auto r = exact_treedepth(g);
        CHECK(r.depth == oracle::treedepth(g));
        CHECK(validate_elimination_forest(g, r.forest) == r.depth);
    }
}

TEST_CASE("carving validator") {
    auto star = gen_star(3);  // centre 0
    CarvingDecomposition cd{claw(), {1, 2, 3, std::nullopt}};
    CHECK(validate_carving(gen_star(3), CarvingDecomposition{Tree(6, {{0, 4}, {1, 4}, {4, 5}, {2, 5}, {3, 5}}),
                                                            {0, 1, 2, 3, std::nullopt, std::nullopt}}) == 3);
    CHECK(fault_of([&] { validate_carving(star, cd); }) == DecompositionFault::vertex_missing);

    auto tri = gen_complete(3);
    CHECK(validate_carving(tri, {claw(), {0, 1, 2, std::nullopt}}) == 2);
    CHECK(fault_of([&] { validate_carving(tri, {claw(), {0, 1, 1, std::nullopt}}); }) ==
          DecompositionFault::duplicate_label);
    CHECK(fault_of([&] { validate_carving(tri, {claw(), {0, 1, std::nullopt, 2}}); }) ==
          DecompositionFault::unlabelled_leaf);
    CHECK(fault_of([&] { validate_carving(tri, {Tree(4, {{0, 3}, {3, 1}, {1, 2}}), {0, std::nullopt, 2, 1}}); }) ==
          DecompositionFault::bad_degree);
}

TEST_CASE("exact carving width") {
    CHECK(exact_carving_width(gen_complete_bipartite(3, 3)).width == 4);
    CHECK(exact_carving_width(gen_cycle(4)).width == 2);
    CHECK(exact_carving_width(gen_path(5)).width == 2);
    CHECK(exact_carving_width(gen_star(3)).width == 3);
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        auto g = gen_random_connected(7, 2, 5, seed);
        auto r = exact_carving_width(g);
        CHECK(r.width == oracle::carving_width(g));
        CHECK(validate_carving(g, r.decomposition) == r.width);
    }
}

TEST_CASE("caterpillar carving") {
    auto k34 = gen_complete_bipartite(3, 4);
    auto a = exact_cutwidth(k34).witness;
    CHECK(validate_carving(k34, caterpillar_carving_from_arrangement(k34, a)) <= 6);
    auto p = gen_path(7);
    CHECK(validate_carving(p, caterpillar_carving_from_arrangement(p, LinearArrangement::identity(7))) <= 2);

    // planarization of K(3,4) in its own x-order
    auto lift = convex_lift(k34, a);
    const auto& pg = lift.report.planarization.planar;
    auto xo = x_order(lift.drawing);
    CHECK(validate_carving(pg, caterpillar_carving_from_arrangement(pg, xo)) <=
          std::max(edge_separation(pg, xo), max_degree(pg)));
}

TEST_CASE("branch and carving conversions") {
    auto edge = gen_path(2);
    BranchDecomposition single{Tree(1, {}), {0}};
    CHECK(validate_branch(edge, single) == 0);
    auto cd = branch_to_carving(edge, single);
    CHECK(cd.tree.size() == 2);
    CHECK(validate_carving(edge, cd) == 1);

    auto tri = gen_complete(3);
    BranchDecomposition tb{claw(), {0, 1, 2, std::nullopt}};
    CHECK(validate_branch(tri, tb) == 2);
    CHECK(validate_carving(tri, branch_to_carving(tri, tb)) <= 4);
    auto back = carving_to_branch(tri, {claw(), {0, 1, 2, std::nullopt}});
    CHECK(validate_branch(tri, back) == 2);

    auto k33 = gen_complete_bipartite(3, 3);
    auto opt = exact_carving_width(k33).decomposition;
    CHECK(validate_branch(k33, carving_to_branch(k33, opt)) <= 3 * 4);

    // a star: any carving pays the centre degree, the branch width is 1
    auto star = gen_star(3);
    BranchDecomposition sb{claw(), {0, 1, 2, std::nullopt}};
    CHECK(validate_branch(star, sb) == 1);
    CHECK(validate_carving(star, branch_to_carving(star, sb)) == 3);

    CHECK_THROWS_AS(carving_to_branch(parse_graph("3 1\n0 1"), CarvingDecomposition{claw(), {0, 1, 2, std::nullopt}}),
                    graph_error);
}

TEST_CASE("restricted partition") {
    auto small = gen_random_binary_tree(5, 1);
    auto whole = restricted_partition(small, small.size());
    CHECK(whole.blocks.size() == 1);

    auto ones = restricted_partition(small, 1);
    CHECK(ones.blocks.size() == small.size());
    CHECK_FALSE(check_restricted_partition(small, ones));

    auto t = gen_random_binary_tree(251, 3);
    REQUIRE(t.size() == 500);
    auto rp = restricted_partition(t, 10);
    CHECK_FALSE(check_restricted_partition(t, rp));
    CHECK(rp.blocks.size() <= 6 * 50);
    for (std::size_t b = 0; b < rp.blocks.size(); ++b) {
        CHECK(rp.blocks[b].size() <= 10);
        if (block_boundary(t, rp, b) > 2) CHECK(rp.blocks[b].size() == 1);
    }

    // a partition with a mergeable pair is rejected
    auto broken = ones;
    CHECK(check_restricted_partition(small, restricted_partition(small, 3)) == std::nullopt);
    broken.z = 3;
    CHECK(check_restricted_partition(small, broken).has_value());
}
