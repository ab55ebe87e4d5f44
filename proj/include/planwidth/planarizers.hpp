#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "planwidth/arrangement.hpp"
#include "planwidth/decomposition.hpp"
#include "planwidth/drawing.hpp"
#include "planwidth/routing.hpp"

namespace planwidth {

struct ClusterSummary {
    std::vector<NodeId> tree_nodes;
    std::size_t ports = 0;
    std::size_t wires = 0;          // chords drawn inside the cluster
    std::size_t internal_edges = 0; // graph edges with both ends in the cluster
    std::size_t crossings = 0;
};

struct PlanarizationReport {
    std::string strategy;
    Planarization planarization;
    std::size_t crossings_added = 0;
    std::variant<LinearArrangement, CarvingDecomposition> witness;
    std::size_t claimed_width = 0;
    std::size_t validated_width = 0;
    std::vector<RectangleRouting> routings;  // carving strategies only
    std::vector<ClusterSummary> clusters;    // clustered strategy only
};

class internal_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

std::size_t cr_pair_k3n(std::size_t n);

Drawing zarankiewicz_k3n(std::size_t n);

/// Planarizes a drawing and measures it along its own x-order (the shape used by the
/// geometric strategies). claimed = edge separation of the original graph in that order.
PlanarizationReport report_from_drawing(const std::string& strategy, const Drawing& d);

/// Left-to-right order of all planarization vertices (originals and crossing points).
LinearArrangement x_order(const Drawing& d);

struct ConvexLift {
    Drawing drawing;
    PlanarizationReport report;
};

ConvexLift convex_lift(const Graph& g, const LinearArrangement& a);

PlanarizationReport carving_guided(const Graph& g, const CarvingDecomposition& cd);

/// z = 0 selects the default max(2, ceil(sqrt(w))).
PlanarizationReport clustered_carving(const Graph& g, const CarvingDecomposition& cd, std::size_t z = 0);

std::size_t default_cluster_order(std::size_t w);

/// Schematic SVG of a carving tree drawn as thickened disks and rectangles.
std::string export_tree_svg(const CarvingDecomposition& cd);

}  // namespace planwidth
