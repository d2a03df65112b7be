#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

// Planar primitives for straight segments and circular arcs: lengths,
// tangents, signed Green-theorem area contributions, disk clipping.

namespace isopart {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2 operator-() const { return {-x, -y}; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
inline double dist(const Vec2& a, const Vec2& b) { return norm(a - b); }
// Rotate by +90 degrees (the "left" normal of a direction).
inline Vec2 perp(const Vec2& a) { return {-a.y, a.x}; }
inline Vec2 normalized(const Vec2& a) {
  double n = norm(a);
  if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
  return a / n;
}
inline Vec2 rotated(const Vec2& v, double angle) {
  double c = std::cos(angle), s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}
inline Vec2 dir_from_angle(double a) { return {std::cos(a), std::sin(a)}; }
inline double angle_of(const Vec2& v) { return std::atan2(v.y, v.x); }

// Wrap an angle into [0, 2*pi).
double wrap_angle(double a);
// Smallest absolute difference between two directions (range [0, pi]).
double angle_between(const Vec2& a, const Vec2& b);

// Circular arc traversed start -> end. kappa is the signed curvature
// (1/radius); kappa > 0 means the arc bulges to the left of the chord,
// kappa = 0 is a straight segment. Arcs with central angle > pi carry the
// explicit major flag since the chord + curvature pair alone is ambiguous.
struct CircularArc {
  Vec2 start;
  Vec2 end;
  double kappa = 0.0;
  bool major = false;
};

bool arc_degenerate(const CircularArc& arc);

// Half the central angle, in (0, pi]. Requires kappa != 0.
double arc_half_aperture(const CircularArc& arc);

// Center of the supporting circle. Requires kappa != 0.
Vec2 arc_center(const CircularArc& arc);

double arc_length(const CircularArc& arc);

// Green's-theorem line integral (1/2) * (x dy - y dx) along the arc.
// Summed over a closed positively-oriented (counterclockwise) boundary this
// yields the enclosed area.
double arc_area_moment(const CircularArc& arc);

// Unit tangents of the start->end traversal at the two endpoints.
// Throws on degenerate arcs.
std::pair<Vec2, Vec2> endpoint_tangents(const CircularArc& arc);

// Point at arc parameter t in [0, 1] (t=0 start, t=1 end).
Vec2 arc_point(const CircularArc& arc, double t);

// Same arc traversed end -> start.
CircularArc reversed(const CircularArc& arc);

// Distance from p to the arc, and which side of the traversal p falls on
// (+1 left, -1 right, 0 on the arc) evaluated at the nearest arc point.
struct ArcSide {
  double distance = 0.0;
  int side = 0;
};
ArcSide arc_side_of(const CircularArc& arc, const Vec2& p);

// Gauss-Legendre integral of f over the arc parameterized by t in [0,1]
// against arclength, with 32 fixed nodes.
double arc_integral(const CircularArc& arc, const std::function<double(Vec2)>& f);

// ---- disk clipping -------------------------------------------------------

// A maximal connected piece of a curve inside the closed disk of radius R
// centered at the origin. start_on_circle/end_on_circle record whether the
// piece endpoint lies on the clipping circle.
struct ClippedPiece {
  CircularArc arc;
  bool start_on_circle = false;
  bool end_on_circle = false;
};

// Clip an arc (or segment when kappa = 0) to the closed origin disk.
std::vector<ClippedPiece> clip_arc_to_disk(const CircularArc& arc, double R);

// Clip the ray {anchor + t*dir : t >= 0} to the disk; dir need not be unit.
std::vector<ClippedPiece> clip_ray_to_disk(const Vec2& anchor, const Vec2& dir, double R);

// Clip the full line through anchor with direction dir to the disk.
std::vector<ClippedPiece> clip_line_to_disk(const Vec2& anchor, const Vec2& dir, double R);

// Area of (region) intersect (origin disk of radius R), where the region's
// boundary is given as oriented pieces with the region on the LEFT of each
// traversal. Pieces may come from several loops; loops need not be connected.
// `inside` decides membership for points of the clipping circle and is only
// consulted when no boundary piece crosses the circle.
double clipped_region_area(const std::vector<ClippedPiece>& pieces, double R,
                           const std::function<bool(const Vec2&)>& inside);

// ---- analytic shapes used by benchmarks ----------------------------------

// Disk of radius r centered at c, or a half-plane {x : dot(x - c, n) <= 0}.
struct Disk {
  Vec2 center;
  double radius = 1.0;
};

struct HalfPlane {
  Vec2 point;
  Vec2 normal;  // region is where dot(x - point, normal) <= 0
};

// Angular interval(s) of the circle |x| = rho lying inside the shape.
// Returns intervals as (start angle, length), length in [0, 2*pi].
std::vector<std::pair<double, double>> circle_trace(const Disk& d, double rho);
std::vector<std::pair<double, double>> circle_trace(const HalfPlane& h, double rho);

// Total angular measure of the symmetric difference of two interval sets on
// the circle (each given as (start, length) with length in [0, 2*pi]).
double interval_symmetric_difference(std::vector<std::pair<double, double>> a,
                                     std::vector<std::pair<double, double>> b);

// Intersection points of two circles (center/radius). Generic position only:
// returns 0 or 2 points.
std::vector<Vec2> circle_circle_intersections(const Vec2& c0, double r0, const Vec2& c1,
                                              double r1);

}  // namespace isopart
