#include <doctest.h>

#include "planwidth/planarity.hpp"
#include "planwidth/planarizers.hpp"

using namespace planwidth;

namespace {

void check_sound(const Graph& g, const PlanarizationReport& rep) {
    const auto& p = rep.planarization;
    CHECK(p.original == g);
    CHECK(is_planar(p.planar));
    CHECK(contract_dummies(p) == g);
    CHECK(p.planar.dummy_count() == rep.crossings_added);
    CHECK(p.planar.num_vertices() == g.num_vertices() + rep.crossings_added);
}

CarvingDecomposition per_component_carving(const Graph& g) {
    std::vector<CarvingDecomposition> parts;
    auto comps = components(g);
    for (const auto& c : comps) parts.push_back(exact_carving_width(induced_subgraph(g, c)).decomposition);
    return combine_carvings(g.num_vertices(), parts, comps);
}

}  // namespace

TEST_CASE("pair crossing number of K(3,n)") {
    CHECK(cr_pair_k3n(2) == 0);
    CHECK(cr_pair_k3n(3) == 1);
    CHECK(cr_pair_k3n(6) == 6);
    CHECK(cr_pair_k3n(11) == 25);
}

TEST_CASE("zarankiewicz drawing") {
    for (std::size_t n : {1, 2, 3, 6, 11}) {
        auto d = zarankiewicz_k3n(n);
        CHECK(d.graph == gen_complete_bipartite(3, n));
        CHECK(crossings(d).size() == cr_pair_k3n(n));
        auto rep = report_from_drawing("zarankiewicz", d);
        check_sound(d.graph, rep);
        CHECK(rep.validated_width >= rep.claimed_width);
    }
}

TEST_CASE("convex lift") {
    auto p = gen_path(6);
    auto lp = convex_lift(p, LinearArrangement::identity(6));
    CHECK(lp.report.crossings_added == 0);
    CHECK(lp.report.planarization.planar == p);

    auto k34 = gen_complete_bipartite(3, 4);
    auto lk = convex_lift(k34, exact_cutwidth(k34).witness);
    check_sound(k34, lk.report);
    CHECK(lk.report.validated_width == 6);
    CHECK(lk.report.claimed_width == 6);

    // the folded circulant keeps one x-order span
    std::size_t first = 0;
    for (std::size_t n : {12, 24}) {
        auto g = gen_circulant(n, {1, 2, 3});
        auto lift = convex_lift(g, fold_arrangement(n));
        check_sound(g, lift.report);
        auto s = span(lift.report.planarization.planar, x_order(lift.drawing));
        if (first == 0) first = s;
        CHECK(s == first);
    }
    CHECK(first == 34);
}

TEST_CASE("carving guided") {
    for (const auto& t : {gen_path(6), gen_star(4)}) {
        auto rep = carving_guided(t, exact_carving_width(t).decomposition);
        CHECK(rep.crossings_added == 0);
        check_sound(t, rep);
    }

    auto k33 = gen_complete_bipartite(3, 3);
    auto cd = exact_carving_width(k33).decomposition;
    auto rep = carving_guided(k33, cd);
    check_sound(k33, rep);
    CHECK(rep.crossings_added <= 18);
    CHECK(rep.validated_width <= 4);
    std::size_t swaps = 0;
    for (const auto& r : rep.routings) {
        CHECK(r.transpositions.size() == inversion_count(r.entry_order, r.exit_order));
        swaps += r.transpositions.size();
    }
    CHECK(swaps == rep.crossings_added);
    CHECK(std::holds_alternative<CarvingDecomposition>(rep.witness));

    auto k34 = gen_complete_bipartite(3, 4);
    auto cat = caterpillar_carving_from_arrangement(k34, exact_cutwidth(k34).witness);
    auto rk = carving_guided(k34, cat);
    check_sound(k34, rk);
    CHECK(rk.validated_width <= 6);
}

TEST_CASE("clustered") {
    CHECK(default_cluster_order(1) == 2);
    CHECK(default_cluster_order(9) == 3);
    CHECK(default_cluster_order(10) == 4);

    auto k33 = gen_complete_bipartite(3, 3);
    auto cd = exact_carving_width(k33).decomposition;
    auto whole = clustered_carving(k33, cd, cd.tree.size());
    CHECK(whole.clusters.size() == 1);
    check_sound(k33, whole);
    CHECK(whole.crossings_added == whole.clusters[0].crossings);

    auto z2 = clustered_carving(k33, cd, 2);
    check_sound(k33, z2);
    CHECK(z2.validated_width <= 4);

    for (std::size_t s : {3, 4, 5}) {
        auto g = gen_disjoint_cliques(4, s);
        auto pc = per_component_carving(g);
        auto rep = clustered_carving(g, pc);
        check_sound(g, rep);
        CHECK(rep.validated_width <= validate_carving(g, pc));
    }

    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        auto g = gen_random_connected(9, 1, 3, seed);
        auto c = exact_carving_width(g).decomposition;
        for (std::size_t z : {2, 3, 5}) check_sound(g, clustered_carving(g, c, z));
    }
}
