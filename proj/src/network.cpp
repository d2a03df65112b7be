#include "isopart/network.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace isopart {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

int ArcPartition::region_index(const std::string& label) const {
  for (size_t i = 0; i < regions.size(); ++i)
    if (regions[i].label == label) return int(i);
  throw std::invalid_argument("unknown region label: " + label);
}

const Vertex& ArcPartition::vertex(int id) const {
  for (const auto& v : vertices)
    if (v.id == id) return v;
  throw std::invalid_argument("unknown vertex id");
}

EdgeGeometry edge_geometry(const ArcPartition& p, const ArcEdge& e) {
  const Vertex& a = p.vertex(e.v_start);
  const Vertex& b = p.vertex(e.v_end);
  EdgeGeometry g;
  if (a.kind == Vertex::Kind::Interior && b.kind == Vertex::Kind::Interior) {
    g.type = EdgeGeometry::Type::Arc;
    g.arc = {a.pos, b.pos, -e.kappa, e.major};
  } else if (a.kind == Vertex::Kind::Interior) {
    g.type = EdgeGeometry::Type::Ray;
    g.anchor = a.pos;
    g.dir = normalized(b.dir);
  } else if (b.kind == Vertex::Kind::Interior) {
    g.type = EdgeGeometry::Type::Ray;
    g.anchor = b.pos;
    g.dir = normalized(a.dir);
  } else {
    g.type = EdgeGeometry::Type::Line;
    g.anchor = a.pos;
    g.dir = normalized(b.dir);
  }
  return g;
}

double edge_length_in_disk(const ArcPartition& p, const ArcEdge& e, double radius) {
  EdgeGeometry g = edge_geometry(p, e);
  double total = 0.0;
  std::vector<ClippedPiece> pieces;
  switch (g.type) {
    case EdgeGeometry::Type::Arc:
      pieces = clip_arc_to_disk(g.arc, radius);
      break;
    case EdgeGeometry::Type::Ray:
      pieces = clip_ray_to_disk(g.anchor, g.dir, radius);
      break;
    case EdgeGeometry::Type::Line:
      pieces = clip_line_to_disk(g.anchor, g.dir, radius);
      break;
  }
  for (const auto& piece : pieces) total += arc_length(piece.arc);
  return total;
}

Vec2 outgoing_tangent(const ArcPartition& p, const ArcEdge& e, int vertex_id) {
  EdgeGeometry g = edge_geometry(p, e);
  if (g.type == EdgeGeometry::Type::Ray) {
    return g.dir;  // anchored at the interior endpoint, pointing out
  }
  if (g.type == EdgeGeometry::Type::Line)
    throw std::invalid_argument("line edge has no interior endpoint");
  auto [t0, t1] = endpoint_tangents(g.arc);
  if (e.v_start == vertex_id) return t0;
  if (e.v_end == vertex_id) return -t1;
  throw std::invalid_argument("vertex is not an endpoint of the edge");
}

// ---- validate_topology ------------------------------------------------------

TopologyDiagnostics validate_topology(const ArcPartition& p) {
  TopologyDiagnostics diag;
  auto fail = [&](const std::string& msg) { diag.violations.push_back(msg); };

  if (p.regions.empty()) fail("partition has no regions");

  std::map<int, std::vector<const ArcEdge*>> incident;
  std::set<int> vertex_ids;
  for (const auto& v : p.vertices) {
    if (!vertex_ids.insert(v.id).second) {
      std::ostringstream os;
      os << "duplicate vertex id " << v.id;
      fail(os.str());
    }
  }
  for (const auto& e : p.edges) {
    if (!vertex_ids.count(e.v_start) || !vertex_ids.count(e.v_end)) {
      fail("edge references unknown vertex");
      continue;
    }
    if (e.left < 0 || e.left >= int(p.regions.size()) || e.right < 0 ||
        e.right >= int(p.regions.size())) {
      fail("edge references unknown region");
      continue;
    }
    if (e.left == e.right) fail("edge has the same region on both sides");
    incident[e.v_start].push_back(&e);
    incident[e.v_end].push_back(&e);
    const Vertex& a = p.vertex(e.v_start);
    const Vertex& b = p.vertex(e.v_end);
    bool unbounded =
        a.kind == Vertex::Kind::AtInfinity || b.kind == Vertex::Kind::AtInfinity;
    if (unbounded && e.kappa != 0.0) fail("unbounded edge with nonzero curvature");
    if (unbounded && (!p.regions[e.left].infinite || !p.regions[e.right].infinite))
      fail("finite region adjacent to an unbounded edge");
  }

  // Identical duplicated edges (same endpoints, same sides, same curvature).
  for (size_t i = 0; i < p.edges.size(); ++i) {
    for (size_t j = i + 1; j < p.edges.size(); ++j) {
      const ArcEdge& e = p.edges[i];
      const ArcEdge& f = p.edges[j];
      bool same = (e.v_start == f.v_start && e.v_end == f.v_end && e.kappa == f.kappa &&
                   e.left == f.left && e.right == f.right && e.major == f.major);
      bool rev = (e.v_start == f.v_end && e.v_end == f.v_start && e.kappa == -f.kappa &&
                  e.left == f.right && e.right == f.left && e.major == f.major);
      if (same || rev) fail("duplicated edge");
    }
  }

  for (const auto& v : p.vertices) {
    size_t deg = incident[v.id].size();
    if (v.kind == Vertex::Kind::AtInfinity) {
      if (deg != 1) {
        std::ostringstream os;
        os << "vertex " << v.id << " at infinity has order " << deg << " != 1";
        fail(os.str());
      }
      continue;
    }
    if (deg == 3) continue;
    if (deg == 2) {
      // Accepted only as a subdivision point of a smooth interface: same
      // region pair on both edges and the tangent passes straight through.
      const ArcEdge* e0 = incident[v.id][0];
      const ArcEdge* e1 = incident[v.id][1];
      bool same_pair = (e0->left == e1->left && e0->right == e1->right) ||
                       (e0->left == e1->right && e0->right == e1->left);
      bool smooth = false;
      if (same_pair) {
        Vec2 t0 = outgoing_tangent(p, *e0, v.id);
        Vec2 t1 = outgoing_tangent(p, *e1, v.id);
        smooth = angle_between(t0, -t1) < 1e-9;
      }
      if (same_pair && smooth) continue;
      std::ostringstream os;
      os << "vertex " << v.id << " order 2 is not a smooth subdivision point";
      fail(os.str());
      continue;
    }
    std::ostringstream os;
    os << "vertex " << v.id << " order " << deg << " != 3";
    fail(os.str());
  }

  // Region boundary closedness: at every interior vertex each region is a
  // side of an even number of incident edge-ends.
  for (const auto& v : p.vertices) {
    if (v.kind == Vertex::Kind::AtInfinity) continue;
    std::map<int, int> count;
    for (const ArcEdge* e : incident[v.id]) {
      count[e->left]++;
      count[e->right]++;
    }
    for (auto [region, c] : count) {
      if (c % 2 != 0) {
        std::ostringstream os;
        os << "boundary of region '" << p.regions[region].label
           << "' does not close at vertex " << v.id;
        fail(os.str());
      }
    }
  }

  return diag;
}

// ---- locate_region ----------------------------------------------------------

int locate_region(const ArcPartition& p, const Vec2& point) {
  double best = std::numeric_limits<double>::infinity();
  int region = -1;
  for (const auto& e : p.edges) {
    EdgeGeometry g = edge_geometry(p, e);
    ArcSide s;
    if (g.type == EdgeGeometry::Type::Arc) {
      s = arc_side_of(g.arc, point);
    } else {
      double t = dot(point - g.anchor, g.dir);
      if (g.type == EdgeGeometry::Type::Ray) t = std::max(t, 0.0);
      Vec2 q = g.anchor + g.dir * t;
      double c = cross(g.dir, point - q);
      s = {dist(point, q), c > 0 ? 1 : (c < 0 ? -1 : 0)};
    }
    if (s.distance < best) {
      best = s.distance;
      region = s.side >= 0 ? e.left : e.right;
    }
  }
  if (region < 0) {
    if (p.regions.size() == 1) return 0;
    throw std::runtime_error("locate_region: empty network");
  }
  return region;
}

// ---- region_measures --------------------------------------------------------

namespace {

std::vector<ClippedPiece> region_boundary_pieces(const ArcPartition& p, int region,
                                                 double radius) {
  std::vector<ClippedPiece> pieces;
  for (const auto& e : p.edges) {
    if (e.left != region && e.right != region) continue;
    EdgeGeometry g = edge_geometry(p, e);
    bool flip = (e.right == region);  // orient with the region on the left
    std::vector<ClippedPiece> raw;
    switch (g.type) {
      case EdgeGeometry::Type::Arc:
        raw = clip_arc_to_disk(flip ? reversed(g.arc) : g.arc, radius);
        break;
      case EdgeGeometry::Type::Ray:
        raw = clip_ray_to_disk(g.anchor, g.dir, radius);
        break;
      case EdgeGeometry::Type::Line:
        raw = clip_line_to_disk(g.anchor, g.dir, radius);
        break;
    }
    if (g.type != EdgeGeometry::Type::Arc && flip) {
      for (auto& piece : raw) {
        piece.arc = reversed(piece.arc);
        std::swap(piece.start_on_circle, piece.end_on_circle);
      }
    }
    for (auto& piece : raw) pieces.push_back(piece);
  }
  return pieces;
}

}  // namespace

MeasureReport region_measures(const ArcPartition& p, double radius) {
  if (radius > p.window_radius + 1e-12)
    throw std::invalid_argument("measurement radius exceeds the window radius");
  MeasureReport report;
  report.radius = radius;
  report.region_areas.resize(p.regions.size(), 0.0);
  report.interface_lengths.resize(p.edges.size(), 0.0);
  for (size_t k = 0; k < p.regions.size(); ++k) {
    auto pieces = region_boundary_pieces(p, int(k), radius);
    report.region_areas[k] = clipped_region_area(
        pieces, radius, [&](const Vec2& q) { return locate_region(p, q) == int(k); });
  }
  double perimeter = 0.0;
  for (size_t i = 0; i < p.edges.size(); ++i) {
    report.interface_lengths[i] = edge_length_in_disk(p, p.edges[i], radius);
    perimeter += report.interface_lengths[i];
  }
  report.perimeter = perimeter;
  return report;
}

// ---- solve_pressures --------------------------------------------------------

Pressures solve_pressures(const ArcPartition& p) {
  const int n = int(p.regions.size());
  Pressures out;
  out.p.assign(n, 0.0);

  std::vector<int> gauge;
  for (int k = 0; k < n; ++k)
    if (p.regions[k].infinite) gauge.push_back(k);
  if (gauge.empty()) {
    gauge.push_back(0);
    out.gauge_flagged = true;
  }

  // Least squares on p(left) - p(right) = kappa with hard gauge rows.
  const int rows = int(p.edges.size()) + int(gauge.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
  int r = 0;
  for (const auto& e : p.edges) {
    A(r, e.left) += 1.0;
    A(r, e.right) -= 1.0;
    b(r) = e.kappa;
    ++r;
  }
  const double w = 1e8;
  for (int k : gauge) {
    A(r, k) = w;
    ++r;
  }
  Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
  for (int k = 0; k < n; ++k) out.p[k] = x(k);
  for (int k : gauge) out.p[k] = 0.0;
  double res = 0.0;
  for (const auto& e : p.edges)
    res = std::max(res, std::abs(e.kappa - (out.p[e.left] - out.p[e.right])));
  out.residual = res;
  return out;
}

// ---- check_stationarity -----------------------------------------------------

StationarityReport check_stationarity(const ArcPartition& p,
                                      const StationarityTolerances& tol) {
  StationarityReport report;
  report.tolerances = tol;

  std::map<int, std::vector<const ArcEdge*>> incident;
  for (const auto& e : p.edges) {
    incident[e.v_start].push_back(&e);
    incident[e.v_end].push_back(&e);
  }

  for (const auto& v : p.vertices) {
    if (v.kind == Vertex::Kind::AtInfinity) continue;
    const auto& edges = incident[v.id];
    if (edges.size() == 2) continue;  // subdivision point, no junction here
    if (edges.size() != 3) {
      report.vertex_angle_residuals.push_back(kPi);
      report.vertex_curvature_residuals.push_back(
          std::numeric_limits<double>::infinity());
      continue;
    }
    std::vector<double> angles;
    double kappa_sum = 0.0;
    for (const ArcEdge* e : edges) {
      angles.push_back(angle_of(outgoing_tangent(p, *e, v.id)));
      kappa_sum += (e->v_start == v.id) ? e->kappa : -e->kappa;
    }
    std::sort(angles.begin(), angles.end());
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
      double gap =
          (i < 2) ? angles[i + 1] - angles[i] : 2 * kPi - (angles[2] - angles[0]);
      worst = std::max(worst, std::abs(gap - 2 * kPi / 3));
    }
    report.vertex_angle_residuals.push_back(worst);
    report.vertex_curvature_residuals.push_back(std::abs(kappa_sum));
  }

  for (double a : report.vertex_angle_residuals)
    report.max_angle_residual = std::max(report.max_angle_residual, a);
  for (double c : report.vertex_curvature_residuals)
    report.max_curvature_residual = std::max(report.max_curvature_residual, c);

  // Interfaces between two infinite regions must be straight, and every such
  // adjacent pair must own a half-line reaching infinity.
  std::set<std::pair<int, int>> infinite_pairs;
  std::set<std::pair<int, int>> pairs_with_ray;
  for (const auto& e : p.edges) {
    if (!p.regions[e.left].infinite || !p.regions[e.right].infinite) continue;
    report.max_infinite_interface_kappa =
        std::max(report.max_infinite_interface_kappa, std::abs(e.kappa));
    auto key = std::minmax(e.left, e.right);
    infinite_pairs.insert({key.first, key.second});
    bool unbounded = p.vertex(e.v_start).kind == Vertex::Kind::AtInfinity ||
                     p.vertex(e.v_end).kind == Vertex::Kind::AtInfinity;
    if (unbounded) pairs_with_ray.insert({key.first, key.second});
  }
  for (const auto& pair : infinite_pairs)
    if (!pairs_with_ray.count(pair)) report.eventually_flat = false;

  FarField ff = classify_far_field(p);
  report.far_field = ff.kind;
  report.far_field_reason = ff.reason;

  report.pass = report.max_angle_residual <= tol.angle &&
                report.max_curvature_residual <= tol.curvature_sum &&
                report.max_infinite_interface_kappa <= tol.infinite_kappa &&
                report.eventually_flat && ff.kind != FarField::Kind::Invalid;
  return report;
}

// ---- classify_far_field -----------------------------------------------------

FarField classify_far_field(const ArcPartition& p) {
  FarField out;
  std::vector<FarField::Ray> rays;
  for (const auto& e : p.edges) {
    const Vertex& a = p.vertex(e.v_start);
    const Vertex& b = p.vertex(e.v_end);
    if (a.kind == Vertex::Kind::AtInfinity && b.kind == Vertex::Kind::AtInfinity) {
      rays.push_back({a.pos, normalized(a.dir)});
      rays.push_back({a.pos, normalized(b.dir)});
    } else if (a.kind == Vertex::Kind::AtInfinity) {
      rays.push_back({b.pos, normalized(a.dir)});
    } else if (b.kind == Vertex::Kind::AtInfinity) {
      rays.push_back({a.pos, normalized(b.dir)});
    }
  }

  const double R = p.window_radius;
  if (rays.empty()) {
    out.kind = FarField::Kind::Cluster;
    return out;
  }
  if (rays.size() == 2) {
    double ang = angle_between(rays[0].dir, rays[1].dir);
    double offset = std::abs(cross(rays[0].dir, rays[1].anchor - rays[0].anchor));
    if (std::abs(ang - kPi) <= 1e-9 && offset <= 1e-9 * R) {
      out.kind = FarField::Kind::Line;
      out.rays = {{rays[0].anchor, rays[0].dir}};
      return out;
    }
    out.kind = FarField::Kind::Invalid;
    out.reason = "two rays that are not collinear and opposite";
    return out;
  }
  if (rays.size() == 3) {
    bool ok = true;
    for (int i = 0; i < 3; ++i) {
      double ang = angle_between(rays[i].dir, rays[(i + 1) % 3].dir);
      if (std::abs(ang - 2 * kPi / 3) > 1e-9) ok = false;
    }
    if (ok) {
      out.kind = FarField::Kind::TripleRays;
      out.rays = rays;
      return out;
    }
    out.kind = FarField::Kind::Invalid;
    out.reason = "three rays whose directions are not pairwise at 120 degrees";
    return out;
  }
  out.kind = FarField::Kind::Invalid;
  std::ostringstream os;
  os << rays.size() << " rays reach infinity; at most 3 are possible";
  out.reason = os.str();
  return out;
}

// ---- perturbation_response --------------------------------------------------

PerturbationResponse perturbation_response(const ArcPartition& p, int edge_id,
                                           double dkappa) {
  const ArcEdge* target = nullptr;
  for (const auto& e : p.edges)
    if (e.id == edge_id) target = &e;
  if (!target) throw std::invalid_argument("unknown edge id");
  const Vertex& a = p.vertex(target->v_start);
  const Vertex& b = p.vertex(target->v_end);
  if (a.kind != Vertex::Kind::Interior || b.kind != Vertex::Kind::Interior)
    throw std::invalid_argument("cannot re-fit an unbounded edge through endpoints");
  double chord = dist(a.pos, b.pos);
  for (double k : {target->kappa + dkappa, target->kappa - dkappa})
    if (std::abs(k) * chord / 2.0 > 1.0)
      throw std::invalid_argument("perturbed curvature is infeasible for the chord");

  auto measure = [&](double kappa) {
    ArcPartition q = p;
    for (auto& e : q.edges)
      if (e.id == edge_id) e.kappa = kappa;
    return region_measures(q, q.window_radius);
  };
  MeasureReport plus = measure(target->kappa + dkappa);
  MeasureReport minus = measure(target->kappa - dkappa);

  PerturbationResponse out;
  out.dP = (plus.perimeter - minus.perimeter) / 2.0;
  out.dA.resize(p.regions.size());
  for (size_t k = 0; k < p.regions.size(); ++k)
    out.dA[k] = (plus.region_areas[k] - minus.region_areas[k]) / 2.0;
  Pressures pr = solve_pressures(p);
  double sum = 0.0;
  for (size_t k = 0; k < p.regions.size(); ++k) sum += pr.p[k] * out.dA[k];
  out.first_variation_gap = std::abs(out.dP - sum);
  return out;
}

// ---- transforms -------------------------------------------------------------

ArcPartition scaled(const ArcPartition& p, double lambda) {
  if (lambda <= 0) throw std::invalid_argument("scale factor must be positive");
  ArcPartition q = p;
  for (auto& v : q.vertices) v.pos = v.pos * lambda;
  for (auto& e : q.edges) e.kappa /= lambda;
  for (auto& r : q.regions)
    if (!r.infinite) r.measure *= lambda * lambda;
  q.window_radius *= lambda;
  for (auto& ray : q.far_field.rays) ray.anchor = ray.anchor * lambda;
  return q;
}

ArcPartition translated(const ArcPartition& p, const Vec2& t) {
  ArcPartition q = p;
  for (auto& v : q.vertices) v.pos = v.pos + t;
  for (auto& ray : q.far_field.rays) ray.anchor = ray.anchor + t;
  return q;
}

Vec2 region_centroid(const ArcPartition& p, int region) {
  if (p.regions[region].infinite)
    throw std::invalid_argument("centroid of an infinite region");
  double area = 0.0, mx = 0.0, my = 0.0;
  for (const auto& e : p.edges) {
    if (e.left != region && e.right != region) continue;
    EdgeGeometry g = edge_geometry(p, e);
    if (g.type != EdgeGeometry::Type::Arc)
      throw std::invalid_argument("finite region bounded by an unbounded edge");
    CircularArc arc = (e.right == region) ? reversed(g.arc) : g.arc;
    area += arc_area_moment(arc);
    // First moments via the boundary integrals of x^2 dy and y^2 dx,
    // midpoint rule on a fine arc subdivision.
    const int n = 512;
    double sx = 0.0, sy = 0.0;
    Vec2 prev = arc_point(arc, 0.0);
    for (int i = 1; i <= n; ++i) {
      Vec2 cur = arc_point(arc, double(i) / n);
      Vec2 mid = arc_point(arc, (i - 0.5) / n);
      sx += mid.x * mid.x * (cur.y - prev.y);
      sy += mid.y * mid.y * (cur.x - prev.x);
      prev = cur;
    }
    mx += sx / 2.0;
    my += -sy / 2.0;
  }
  if (std::abs(area) < 1e-30) return {0, 0};
  return {mx / area, my / area};
}

}  // namespace isopart
