#pragma once

#include <string>

#include "isopart/network.hpp"

// Constructors for the standard planar partitions with prescribed areas:
// half-plane and triple-junction cones, lens, double bubble, peanut,
// Reuleaux-triangle partition. All outputs satisfy the junction conditions
// (120-degree triples, zero curvature sums, curvature = pressure difference)
// to machine precision and reproduce the prescribed areas exactly.

namespace isopart {

enum class ConeKind { HalfPlane, TripleJunction };

struct ConstructionSpec {
  enum class Kind { HalfPlane, TripleJunction, Lens, Peanut, Reuleaux, DoubleBubble };
  Kind kind = Kind::Lens;
  std::vector<double> areas;   // per finite region, count depends on kind
  double window_radius = 0.0;  // 0: choose automatically
};

// One straight interface through the origin (Line far field) or three rays
// from the origin at mutual 120 degrees (TripleRays far field).
ArcPartition make_cone(ConeKind kind, double window_radius = 12.0);

// Lens of area m between two half-planes: two arcs of central angle 2*pi/3
// and radius r with 2 r^2 (pi/3 - sqrt(3)/4) = m, plus two collinear rays.
ArcPartition make_lens(double m, double window_radius = 0.0);

// Standard double bubble with prescribed areas. The middle interface
// curvature equals the difference of the outer arc curvatures.
ArcPartition make_double_bubble(double m1, double m2, double window_radius = 0.0);

// Two finite regions in a row on the axis between two half-plane-like
// regions. Areas are matched by a Newton iteration on the two pressures.
ArcPartition make_peanut(double m3, double m4, double window_radius = 0.0);

// One bulged-triangle region with three radial rays leaving its vertices.
ArcPartition make_reuleaux(double m, double window_radius = 0.0);

ArcPartition construct(const ConstructionSpec& spec);

ConstructionSpec::Kind construction_kind_from_name(const std::string& name);

}  // namespace isopart
