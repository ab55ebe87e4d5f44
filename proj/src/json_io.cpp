#include "planwidth/json_io.hpp"

namespace planwidth {

namespace {

template <class T>
json optional_array(const std::vector<std::optional<T>>& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(x ? json(*x) : json(nullptr));
    return out;
}

template <class T>
std::vector<std::optional<T>> optional_vector(const json& j) {
    std::vector<std::optional<T>> out;
    for (const auto& x : j) out.push_back(x.is_null() ? std::nullopt : std::optional<T>(x.get<T>()));
    return out;
}

std::vector<VertexKind> kinds_from_json(const json& j, std::size_t n) {
    std::vector<VertexKind> kinds(n);
    if (j.is_null()) return kinds;
    if (j.size() != n) throw graph_error("kinds length differs from n");
    for (std::size_t v = 0; v < n; ++v)
        if (!j[v].is_null()) kinds[v] = VertexKind::crossing(j[v].at(0).get<EdgeId>(), j[v].at(1).get<EdgeId>());
    return kinds;
}

}  // namespace

json to_json(const Graph& g) {
    json edges = json::array(), kinds = json::array();
    for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
    for (const auto& k : g.kinds()) kinds.push_back(k.dummy ? json{k.edge_a, k.edge_b} : json(nullptr));
    return {{"n", g.num_vertices()}, {"edges", edges}, {"kinds", kinds}};
}

Graph graph_from_json(const json& j) {
    const auto n = j.at("n").get<std::size_t>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
        auto u = e.at(0).get<VertexId>(), v = e.at(1).get<VertexId>();
        edges.push_back({std::min(u, v), std::max(u, v)});
    }
    return Graph(n, std::move(edges), kinds_from_json(j.value("kinds", json(nullptr)), n));
}

json to_json(const Rational& r) { return {r.get_num().get_str(), r.get_den().get_str()}; }

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    Rational r(Integer(j.at(0).get<std::string>()), Integer(j.at(1).get<std::string>()));
    r.canonicalize();
    return r;
}

json to_json(const Drawing& d) {
    json pos = json::array();
    for (const auto& p : d.pos) pos.push_back({{"x", to_json(p.x)}, {"y", to_json(p.y)}});
    return {{"graph", to_json(d.graph)}, {"positions", pos}};
}

Drawing drawing_from_json(const json& j) {
    Drawing d;
    d.graph = graph_from_json(j.at("graph"));
    for (const auto& p : j.at("positions")) d.pos.push_back({rational_from_json(p.at("x")), rational_from_json(p.at("y"))});
    if (d.pos.size() != d.graph.num_vertices()) throw graph_error("one position per vertex required");
    return d;
}

json to_json(const Planarization& p) {
    return {{"original", to_json(p.original)}, {"planar", to_json(p.planar)}, {"chains", p.chains}};
}

Planarization planarization_from_json(const json& j) {
    auto original = graph_from_json(j.at("original"));
    auto planar = graph_from_json(j.at("planar"));
    std::vector<VertexKind> dummies(planar.kinds().begin() + static_cast<std::ptrdiff_t>(original.num_vertices()),
                                    planar.kinds().end());
    auto p = make_planarization(original, std::move(dummies), j.at("chains").get<std::vector<std::vector<VertexId>>>());
    if (!(p.planar == planar)) throw graph_error("planar graph disagrees with its chains");
    return p;
}

json to_json(const LinearArrangement& a) { return {{"order", a.order()}}; }

LinearArrangement arrangement_from_json(const json& j) {
    return LinearArrangement(j.at("order").get<std::vector<VertexId>>());
}

json to_json(const Tree& t) {
    json edges = json::array();
    for (auto [a, b] : t.edges()) edges.push_back({a, b});
    return {{"size", t.size()}, {"edges", edges}};
}

Tree tree_from_json(const json& j) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (const auto& e : j.at("edges")) edges.push_back({e.at(0).get<NodeId>(), e.at(1).get<NodeId>()});
    return Tree(j.at("size").get<std::size_t>(), std::move(edges));
}

json to_json(const TreeDecomposition& td) {
    return {{"kind", "tree"}, {"tree", to_json(td.tree)}, {"bags", td.bags}};
}

TreeDecomposition tree_decomposition_from_json(const json& j) {
    return {tree_from_json(j.at("tree")), j.at("bags").get<std::vector<std::vector<VertexId>>>()};
}

json to_json(const BranchDecomposition& bd) {
    return {{"kind", "branch"}, {"tree", to_json(bd.tree)}, {"leaf_edge", optional_array(bd.leaf_edge)}};
}

BranchDecomposition branch_from_json(const json& j) {
    return {tree_from_json(j.at("tree")), optional_vector<EdgeId>(j.at("leaf_edge"))};
}

json to_json(const CarvingDecomposition& cd) {
    return {{"kind", "carving"}, {"tree", to_json(cd.tree)}, {"leaf_vertex", optional_array(cd.leaf_vertex)}};
}

CarvingDecomposition carving_from_json(const json& j) {
    return {tree_from_json(j.at("tree")), optional_vector<VertexId>(j.at("leaf_vertex"))};
}

json to_json(const EliminationForest& f) { return {{"kind", "elimination_forest"}, {"parent", optional_array(f.parent)}}; }

json to_json(const RectangleRouting& r) {
    return {{"tree_edge", r.tree_edge},     {"child", r.child},           {"parent", r.parent},
            {"entry_order", r.entry_order}, {"exit_order", r.exit_order}, {"transpositions", r.transpositions}};
}

json to_json(const ClusterSummary& c) {
    return {{"tree_nodes", c.tree_nodes},
            {"ports", c.ports},
            {"wires", c.wires},
            {"internal_edges", c.internal_edges},
            {"crossings", c.crossings}};
}

json to_json(const PlanarizationReport& r) {
    json j{{"strategy", r.strategy},
           {"crossings_added", r.crossings_added},
           {"claimed_width", r.claimed_width},
           {"validated_width", r.validated_width},
           {"planarization", to_json(r.planarization)}};
    if (auto a = std::get_if<LinearArrangement>(&r.witness)) j["witness"] = to_json(*a);
    else j["witness"] = to_json(std::get<CarvingDecomposition>(r.witness));
    if (!r.routings.empty()) {
        j["routings"] = json::array();
        for (const auto& x : r.routings) j["routings"].push_back(to_json(x));
    }
    if (!r.clusters.empty()) {
        j["clusters"] = json::array();
        for (const auto& x : r.clusters) j["clusters"].push_back(to_json(x));
    }
    return j;
}

json to_json(const PositionReport& r) {
    return {{"violation", violation_tag(r.kind)}, {"edges", r.edges}, {"vertices", r.vertices}, {"detail", r.detail}};
}

}  // namespace planwidth
