#pragma once

// Hand-built partitions used across test suites. These are constructed from
// first principles (explicit coordinates and curvatures), independent of the
// constructors module, so the two can cross-validate each other.

#include <cmath>

#include "isopart/network.hpp"

namespace isopart::fixtures {

// Two infinite half-planes split by the x-axis.
inline ArcPartition line_partition(double window = 12.0) {
  ArcPartition p;
  p.regions = {{"up", 0.0, true}, {"down", 0.0, true}};
  p.vertices = {
      {0, Vertex::Kind::AtInfinity, {0, 0}, {-1, 0}},
      {1, Vertex::Kind::AtInfinity, {0, 0}, {1, 0}},
  };
  // Traversal west -> east: up on the left.
  p.edges = {{0, 0, 1, 0.0, 0, 1, false}};
  p.window_radius = window;
  p.far_field.kind = FarField::Kind::Line;
  p.far_field.rays = {{{0, 0}, {1, 0}}};
  return p;
}

// Three infinite sectors meeting at the origin, rays at 90, 210, 330 degrees.
inline ArcPartition triple_junction(double window = 12.0) {
  ArcPartition p;
  p.regions = {{"west", 0.0, true}, {"east", 0.0, true}, {"south", 0.0, true}};
  auto dir = [](double deg) {
    double a = deg * M_PI / 180.0;
    return Vec2{std::cos(a), std::sin(a)};
  };
  p.vertices = {
      {0, Vertex::Kind::Interior, {0, 0}, {}},
      {1, Vertex::Kind::AtInfinity, {0, 0}, dir(90)},
      {2, Vertex::Kind::AtInfinity, {0, 0}, dir(210)},
      {3, Vertex::Kind::AtInfinity, {0, 0}, dir(330)},
  };
  p.edges = {
      {0, 0, 1, 0.0, 0, 1, false},  // up ray: west left, east right
      {1, 0, 2, 0.0, 2, 0, false},  // down-left ray: south left, west right
      {2, 0, 3, 0.0, 1, 2, false},  // down-right ray: east left, south right
  };
  p.window_radius = window;
  p.far_field.kind = FarField::Kind::TripleRays;
  p.far_field.rays = {{{0, 0}, dir(90)}, {{0, 0}, dir(210)}, {{0, 0}, dir(330)}};
  return p;
}

// Lens of circumradius r between two half-planes; lens area 2 r^2 (pi/3 - sqrt(3)/4).
inline ArcPartition lens_partition(double r, double window = 12.0) {
  ArcPartition p;
  double m = 2 * r * r * (M_PI / 3 - std::sqrt(3.0) / 4);
  p.regions = {{"lens", m, false}, {"up", 0.0, true}, {"down", 0.0, true}};
  double tip = std::sqrt(3.0) / 2 * r;
  p.vertices = {
      {0, Vertex::Kind::Interior, {-tip, 0}, {}},
      {1, Vertex::Kind::Interior, {tip, 0}, {}},
      {2, Vertex::Kind::AtInfinity, {tip, 0}, {1, 0}},
      {3, Vertex::Kind::AtInfinity, {-tip, 0}, {-1, 0}},
  };
  p.edges = {
      // Upper arc east -> west over the top: lens on the left.
      {0, 1, 0, 1.0 / r, 0, 1, false},
      // Lower arc west -> east under the bottom: lens on the left.
      {1, 0, 1, 1.0 / r, 0, 2, false},
      {2, 1, 2, 0.0, 1, 2, false},  // right ray
      {3, 0, 3, 0.0, 2, 1, false},  // left ray
  };
  p.window_radius = window;
  p.far_field.kind = FarField::Kind::Line;
  p.far_field.rays = {{{0, 0}, {1, 0}}};
  return p;
}

// A single disk region of radius r centered at the origin inside an infinite
// exterior: the 1-bubble cluster. The circle is split at (+-r, 0) into two
// subdivision vertices of order 2.
inline ArcPartition disk_cluster(double r, double window = 12.0) {
  ArcPartition p;
  p.regions = {{"disk", M_PI * r * r, false}, {"out", 0.0, true}};
  p.vertices = {
      {0, Vertex::Kind::Interior, {-r, 0}, {}},
      {1, Vertex::Kind::Interior, {r, 0}, {}},
  };
  // Counterclockwise traversal keeps the disk on the left; the pressure
  // difference convention then gives kappa = 1/r on both halves.
  p.edges = {
      {0, 0, 1, 1.0 / r, 0, 1, false},  // lower half
      {1, 1, 0, 1.0 / r, 0, 1, false},  // upper half
  };
  p.window_radius = window;
  p.far_field.kind = FarField::Kind::Cluster;
  return p;
}

// Invalid fixture: four rays from the origin at right angles.
inline ArcPartition four_ray_cross(double window = 12.0) {
  ArcPartition p;
  p.regions = {{"ne", 0.0, true}, {"nw", 0.0, true}, {"sw", 0.0, true}, {"se", 0.0, true}};
  auto dir = [](double deg) {
    double a = deg * M_PI / 180.0;
    return Vec2{std::cos(a), std::sin(a)};
  };
  p.vertices = {
      {0, Vertex::Kind::Interior, {0, 0}, {}},
      {1, Vertex::Kind::AtInfinity, {0, 0}, dir(0)},
      {2, Vertex::Kind::AtInfinity, {0, 0}, dir(90)},
      {3, Vertex::Kind::AtInfinity, {0, 0}, dir(180)},
      {4, Vertex::Kind::AtInfinity, {0, 0}, dir(270)},
  };
  p.edges = {
      {0, 0, 1, 0.0, 0, 3, false},
      {1, 0, 2, 0.0, 1, 0, false},
      {2, 0, 3, 0.0, 2, 1, false},
      {3, 0, 4, 0.0, 3, 2, false},
  };
  p.window_radius = window;
  return p;
}

// Invalid far field: two parallel rays pointing the same way.
inline ArcPartition parallel_rays(double window = 12.0) {
  ArcPartition p;
  p.regions = {{"a", 0.0, true}, {"b", 0.0, true}, {"c", 0.0, true}};
  p.vertices = {
      {0, Vertex::Kind::Interior, {0, 0}, {}},
      {1, Vertex::Kind::Interior, {0, 1}, {}},
      {2, Vertex::Kind::AtInfinity, {0, 0}, {1, 0}},
      {3, Vertex::Kind::AtInfinity, {0, 1}, {1, 0}},
  };
  p.edges = {
      {0, 0, 2, 0.0, 1, 0, false},
      {1, 1, 3, 0.0, 2, 1, false},
      {2, 0, 1, 0.0, 1, 2, false},
  };
  p.window_radius = window;
  return p;
}

}  // namespace isopart::fixtures
