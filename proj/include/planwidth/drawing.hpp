#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "planwidth/graph.hpp"
#include "planwidth/rational.hpp"

namespace planwidth {

struct Point {
    Rational x;
    Rational y;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Straight-line drawing: each edge is the segment between its endpoints.
struct Drawing {
    Graph graph;
    std::vector<Point> pos;
};

struct CrossingEvent {
    EdgeId edge_a = 0;  // edge_a < edge_b
    EdgeId edge_b = 0;
    Point at;
};

enum class PositionViolation {
    duplicate_x,         // (a)
    concurrent_segments, // (b) triple point
    vertex_on_edge,      // (c)
    collinear_overlap,   // (d)
};

const char* violation_tag(PositionViolation v);

struct PositionReport {
    PositionViolation kind;
    std::vector<EdgeId> edges;
    std::vector<VertexId> vertices;
    std::string detail;
};

class degeneracy_error : public std::runtime_error {
public:
    explicit degeneracy_error(PositionReport report);
    const PositionReport& report() const { return report_; }

private:
    PositionReport report_;
};

/// Sign of the turn p -> q -> r (+1 counter-clockwise, -1 clockwise, 0 collinear).
int orientation(const Point& p, const Point& q, const Point& r);

/// First violation found in order (d), (c), (b), (a); nullopt when in general position.
std::optional<PositionReport> check_general_position(const Drawing& d);

/// Proper crossings of a drawing whose structure is sound: no overlaps, no vertex on a
/// foreign segment, no triple points. Shared x-coordinates are allowed here.
/// Throws degeneracy_error otherwise.
std::vector<CrossingEvent> crossing_events_unchecked_x(const Drawing& d);

/// All crossings, sorted by (edge_a, edge_b). Requires full general position.
std::vector<CrossingEvent> crossings(const Drawing& d);

struct Planarization {
    Graph original;
    Graph planar;  // vertices [0, n) are the originals; dummies carry VertexKind::crossing
    std::vector<std::vector<VertexId>> chains;  // per original EdgeId, from edge.u to edge.v
};

Planarization planarize_drawing(const Drawing& d);

/// Assembles and checks a planarization from per-edge chains (used by the combinatorial planarizers).
Planarization make_planarization(const Graph& original, std::vector<VertexKind> dummy_kinds,
                                 std::vector<std::vector<VertexId>> chains);

/// Reverse of planarization: contract every dummy and rebuild the original edge set.
Graph contract_dummies(const Planarization& p);

Graph crossing_graph(const Drawing& d);

struct SvgOptions {
    double width = 640.0;
    double height = 480.0;
    double margin = 24.0;
    double vertex_radius = 5.0;
    bool mark_crossings = true;
    bool label_vertices = false;
};

std::string export_svg(const Drawing& d, const SvgOptions& opts = {});

}  // namespace planwidth
