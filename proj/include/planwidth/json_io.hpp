#pragma once

#include <json.hpp>

#include "planwidth/arrangement.hpp"
#include "planwidth/decomposition.hpp"
#include "planwidth/drawing.hpp"
#include "planwidth/planarizers.hpp"

namespace planwidth {

using json = nlohmann::json;

// Graph: {"n", "edges": [[u,v],...], "kinds": [null | [a,b], ...]}
json to_json(const Graph& g);
Graph graph_from_json(const json& j);

// rationals travel as ["num", "den"] string pairs
json to_json(const Rational& r);
Rational rational_from_json(const json& j);

json to_json(const Drawing& d);
Drawing drawing_from_json(const json& j);

json to_json(const Planarization& p);
Planarization planarization_from_json(const json& j);

json to_json(const LinearArrangement& a);
LinearArrangement arrangement_from_json(const json& j);

json to_json(const Tree& t);
Tree tree_from_json(const json& j);

json to_json(const TreeDecomposition& td);
TreeDecomposition tree_decomposition_from_json(const json& j);
json to_json(const BranchDecomposition& bd);
BranchDecomposition branch_from_json(const json& j);
json to_json(const CarvingDecomposition& cd);
CarvingDecomposition carving_from_json(const json& j);
json to_json(const EliminationForest& f);

json to_json(const RectangleRouting& r);
json to_json(const ClusterSummary& c);
json to_json(const PlanarizationReport& r);

json to_json(const PositionReport& r);

}  // namespace planwidth
