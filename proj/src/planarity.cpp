#include "planwidth/planarity.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

namespace planwidth {

bool is_planar(const Graph& g) {
    using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    BoostGraph bg(g.num_vertices());
    for (const auto& e : g.edges()) boost::add_edge(e.u, e.v, bg);
    return boost::boyer_myrvold_planarity_test(bg);
}

bool satisfies_euler_bound(const Graph& g) {
    auto n = g.num_vertices();
    if (n < 3) return true;
    return g.num_edges() <= 3 * n - 6;
}

}  // namespace planwidth
