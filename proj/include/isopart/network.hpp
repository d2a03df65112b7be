#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isopart/geom.hpp"

// Planar partitions represented as networks of straight segments and
// circular arcs: regions, vertices (possibly at infinity), oriented edges
// with pressure-difference curvatures.

namespace isopart {

struct Region {
  std::string label;
  // Prescribed measure: a positive number, 0 for improper limit regions, or
  // infinite for unbounded regions.
  double measure = 0.0;
  bool infinite = false;
};

struct Vertex {
  enum class Kind { Interior, AtInfinity };
  int id = -1;
  Kind kind = Kind::Interior;
  Vec2 pos;  // position (interior) or ray anchor (at infinity)
  Vec2 dir;  // unit direction to infinity (at-infinity vertices only)
};

// Oriented interface between two regions. kappa is the pressure-difference
// curvature: kappa = p(left) - p(right), positive when the arc is concave
// toward the left region (its curvature center lies on the left of the
// traversal). The geometric bulge therefore goes to the right: the
// chord-geometry arc has curvature -kappa.
struct ArcEdge {
  int id = -1;
  int v_start = -1;
  int v_end = -1;
  double kappa = 0.0;
  int left = -1;   // region index
  int right = -1;  // region index
  bool major = false;
};

struct FarField {
  enum class Kind { Cluster, Line, TripleRays, Invalid };
  Kind kind = Kind::Cluster;
  // Line: one entry, the full line {anchor + t*dir}. TripleRays: three
  // entries, actual half-lines. Empty for Cluster.
  struct Ray {
    Vec2 anchor;
    Vec2 dir;
  };
  std::vector<Ray> rays;
  std::string reason;  // set when Invalid
};

struct ArcPartition {
  std::vector<Region> regions;
  std::vector<Vertex> vertices;
  std::vector<ArcEdge> edges;
  double window_radius = 10.0;
  FarField far_field;

  int region_index(const std::string& label) const;
  const Vertex& vertex(int id) const;
};

// Geometric realization of an edge.
struct EdgeGeometry {
  enum class Type { Arc, Ray, Line };
  Type type = Type::Arc;
  CircularArc arc;  // Type::Arc
  Vec2 anchor;      // Ray: start point; Line: a point on the line
  Vec2 dir;         // Ray/Line direction (unit)
};
EdgeGeometry edge_geometry(const ArcPartition& p, const ArcEdge& e);

// Length of the edge inside the closed disk of the given radius.
double edge_length_in_disk(const ArcPartition& p, const ArcEdge& e, double radius);

// Outgoing unit tangent of edge e at vertex v (which must be one of its
// interior endpoints).
Vec2 outgoing_tangent(const ArcPartition& p, const ArcEdge& e, int vertex_id);

// ---- diagnostics -----------------------------------------------------------

struct TopologyDiagnostics {
  std::vector<std::string> violations;
  bool valid() const { return violations.empty(); }
};

// Degree conditions, region-boundary closedness, duplicate edges, unbounded
// edge curvature. Collects violations, never throws. Interior vertices of
// degree 2 are accepted only as subdivision points of a smooth interface
// (same region pair on both edges, continuous tangent).
TopologyDiagnostics validate_topology(const ArcPartition& p);

// Region containing the point, by nearest-interface side. Reliable away from
// the boundary (distance large compared to numerical noise).
int locate_region(const ArcPartition& p, const Vec2& point);

struct MeasureReport {
  double radius = 0.0;
  std::vector<double> region_areas;       // clipped to the disk
  std::vector<double> interface_lengths;  // per edge, inside the disk
  double perimeter = 0.0;                 // each interface counted once
};

// Areas via exact Green-theorem arc moments (infinite regions clipped to the
// disk); perimeter as the sum of clipped interface lengths.
MeasureReport region_measures(const ArcPartition& p, double radius);

struct Pressures {
  std::vector<double> p;  // per region, gauge: infinite regions at 0
  double residual = 0.0;  // max |kappa_ij - (p_i - p_j)| over edges
  bool gauge_flagged = false;  // no infinite region: first region pinned to 0
};

// Least-squares solve of p(left) - p(right) = kappa over all interfaces.
Pressures solve_pressures(const ArcPartition& p);

struct StationarityTolerances {
  double angle = 1e-9;          // radians, per-vertex 120-degree residual
  double curvature_sum = 1e-9;  // per-vertex signed curvature sum
  double infinite_kappa = 1e-9; // curvature between two infinite regions
};

struct StationarityReport {
  std::vector<double> vertex_angle_residuals;
  std::vector<double> vertex_curvature_residuals;
  double max_angle_residual = 0.0;
  double max_curvature_residual = 0.0;
  double max_infinite_interface_kappa = 0.0;
  bool eventually_flat = true;  // every infinite-infinite interface has a ray
  FarField::Kind far_field = FarField::Kind::Cluster;
  std::string far_field_reason;
  StationarityTolerances tolerances;
  bool pass = false;
};

StationarityReport check_stationarity(const ArcPartition& p,
                                      const StationarityTolerances& tol = {});

// Far-field classification from the unbounded edges: none -> Cluster, two
// collinear opposite rays -> Line, three rays with pairwise direction angles
// of 2*pi/3 -> TripleRays (they need not be concurrent), anything else
// Invalid with a reason.
FarField classify_far_field(const ArcPartition& p);

// ---- first variation -------------------------------------------------------

struct PerturbationResponse {
  double dP = 0.0;               // central difference of perimeter
  std::vector<double> dA;        // central differences of region areas
  double first_variation_gap = 0.0;  // |dP - sum_k p_k dA_k|
};

// Re-fit one edge through its endpoints with curvature kappa +- dkappa and
// measure the response. Requires a bounded edge and a feasible perturbed
// chord (|kappa'| * chord / 2 <= 1).
PerturbationResponse perturbation_response(const ArcPartition& p, int edge_id,
                                           double dkappa);

// Scale the whole partition by lambda > 0 about the origin (areas scale by
// lambda^2, lengths by lambda, curvatures by 1/lambda).
ArcPartition scaled(const ArcPartition& p, double lambda);

// Area centroid of a finite region (Green moments via arc quadrature).
Vec2 region_centroid(const ArcPartition& p, int region);

// Translate all coordinates by t.
ArcPartition translated(const ArcPartition& p, const Vec2& t);

}  // namespace isopart
