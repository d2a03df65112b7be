#pragma once

#include <cstdint>
#include <vector>

#include "isopart/geom.hpp"

// Voronoi partitions of the d-sphere generated by N pairwise equidistant
// sites, with stereographic projection to the plane R^d and rotation control.

namespace isopart {

using VecN = std::vector<double>;  // vectors in R^(d+1)

struct SimplexSites {
  int d = 2;  // sphere dimension; sites live in R^(d+1)
  int N = 3;  // number of sites, 2 <= N <= d+2
  std::vector<VecN> sites;
};

struct SpherePartition {
  SimplexSites sites;
  // Orthogonal rotation of R^(d+1), row-major (d+1)x(d+1). The projection
  // pole is the north pole e_{d+1}.
  std::vector<double> rotation;

  int dim() const { return sites.d; }
  VecN rotated_site(int k) const;
};

// N unit vectors in R^(d+1) with pairwise inner products -1/(N-1), supported
// on the first N-1 coordinates. Throws when N > d+2 or N < 2.
SimplexSites make_equidistant_sites(int N, int d);

SpherePartition make_sphere_partition(int N, int d);

// Rotate the partition so the pole moves toward site j by `angle` radians
// (in the plane spanned by the pole and the rotated site direction).
void nudge_rotation_toward(SpherePartition& p, int j, double angle);

// Largest inner product wins; ties (within 1e-12) are reported.
struct VoronoiLabel {
  int index = -1;
  bool tie = false;
};
VoronoiLabel voronoi_label(const VecN& x, const SpherePartition& p);

// Stereographic projection from the north pole and its inverse.
// project: S^d minus pole -> R^d, lift: R^d -> S^d minus pole.
VecN project_to_plane(const VecN& x);
VecN lift_to_sphere(const VecN& y);
bool at_pole(const VecN& x, double tol = 1e-12);

// Membership oracle of the projected partition.
VoronoiLabel planar_label(const VecN& y, const SpherePartition& p);

struct MonteCarloMeasures {
  std::vector<double> volume;  // per region
  std::vector<double> stderr_; // one standard error per region
  std::int64_t samples = 0;
};

// Uniform sampling on the sphere S^d (window_radius <= 0) or uniform.
// sampling in the planar ball of the given radius (window_radius > 0).
// Deterministic for a fixed seed.
MonteCarloMeasures monte_carlo_measures(const SpherePartition& p, double window_radius,
                                        std::int64_t samples, std::uint64_t seed);

// Gram-matrix defect: max |<v_i, v_j> - expected| over all pairs.
double gram_defect(const SimplexSites& sites);

// Point on the boundary between the cells of a and b, found by bisection
// along the great-circle arc between them. a and b must carry the two labels.
VecN bisect_boundary(const SpherePartition& p, VecN a, VecN b, double tol = 1e-10);

// Sample `count` planar boundary points between cells i and j near the
// window of the given radius, for circle/line fitting. Deterministic.
std::vector<Vec2> sample_projected_boundary(const SpherePartition& p, int i, int j,
                                            int count, double window_radius,
                                            std::uint64_t seed);

// Circle through three points; returns infinite radius (line) indication via
// `is_line`. Used to verify projected cell boundaries are circles or lines.
struct CircleFit {
  bool is_line = false;
  Vec2 center;
  double radius = 0.0;
  Vec2 line_point, line_dir;  // when is_line
};
CircleFit fit_circle_three_points(const Vec2& a, const Vec2& b, const Vec2& c);
double circle_fit_distance(const CircleFit& fit, const Vec2& p);

}  // namespace isopart
