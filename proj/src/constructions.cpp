#include "isopart/constructions.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

namespace isopart {

namespace {

constexpr double kPi = 3.14159265358979323846;

double require_positive(double m, const char* what) {
  if (!(m > 0.0)) {
    std::ostringstream os;
    os << what << " must be positive, got " << m;
    throw std::invalid_argument(os.str());
  }
  return m;
}

// Exact area of a finite region from the Green moments of its arcs.
double finite_region_area(const ArcPartition& p, int region) {
  double area = 0.0;
  for (const auto& e : p.edges) {
    if (e.left != region && e.right != region) continue;
    EdgeGeometry g = edge_geometry(p, e);
    CircularArc arc = (e.right == region) ? reversed(g.arc) : g.arc;
    area += arc_area_moment(arc);
  }
  return area;
}

double auto_window(double requested, double extent) {
  double w = requested > 0 ? requested : std::max(12.0, 3.0 * extent);
  if (extent > w / 2)
    throw std::invalid_argument(
        "window radius too small: finite regions must fit in half the window");
  return w;
}

ArcPartition place_centroid_at_origin(ArcPartition p, const std::vector<int>& finite) {
  double total = 0.0;
  Vec2 weighted{0, 0};
  for (int k : finite) {
    double a = finite_region_area(p, k);
    weighted = weighted + region_centroid(p, k) * a;
    total += a;
  }
  return translated(p, Vec2{0, 0} - weighted / total);
}

}  // namespace

// ---- cones -------------------------------------------------------------------

ArcPartition make_cone(ConeKind kind, double window_radius) {
  ArcPartition p;
  p.window_radius = window_radius;
  if (kind == ConeKind::HalfPlane) {
    p.regions = {{"up", 0.0, true}, {"down", 0.0, true}};
    p.vertices = {
        {0, Vertex::Kind::AtInfinity, {0, 0}, {-1, 0}},
        {1, Vertex::Kind::AtInfinity, {0, 0}, {1, 0}},
    };
    p.edges = {{0, 0, 1, 0.0, 0, 1, false}};
    p.far_field.kind = FarField::Kind::Line;
    p.far_field.rays = {{{0, 0}, {1, 0}}};
    return p;
  }
  // Triple junction: rays at 90, 210, 330 degrees.
  p.regions = {{"west", 0.0, true}, {"east", 0.0, true}, {"south", 0.0, true}};
  auto dir = [](double deg) { return dir_from_angle(deg * kPi / 180.0); };
  p.vertices = {
      {0, Vertex::Kind::Interior, {0, 0}, {}},
      {1, Vertex::Kind::AtInfinity, {0, 0}, dir(90)},
      {2, Vertex::Kind::AtInfinity, {0, 0}, dir(210)},
      {3, Vertex::Kind::AtInfinity, {0, 0}, dir(330)},
  };
  p.edges = {
      {0, 0, 1, 0.0, 0, 1, false},
      {1, 0, 2, 0.0, 2, 0, false},
      {2, 0, 3, 0.0, 1, 2, false},
  };
  p.far_field.kind = FarField::Kind::TripleRays;
  p.far_field.rays = {{{0, 0}, dir(90)}, {{0, 0}, dir(210)}, {{0, 0}, dir(330)}};
  return p;
}

// ---- lens --------------------------------------------------------------------

ArcPartition make_lens(double m, double window_radius) {
  require_positive(m, "lens area");
  double r = std::sqrt(m / (2.0 * (kPi / 3 - std::sqrt(3.0) / 4)));
  double tip = std::sqrt(3.0) / 2 * r;
  ArcPartition p;
  p.window_radius = auto_window(window_radius, tip);
  p.regions = {{"lens", m, false}, {"up", 0.0, true}, {"down", 0.0, true}};
  p.vertices = {
      {0, Vertex::Kind::Interior, {-tip, 0}, {}},
      {1, Vertex::Kind::Interior, {tip, 0}, {}},
      {2, Vertex::Kind::AtInfinity, {tip, 0}, {1, 0}},
      {3, Vertex::Kind::AtInfinity, {-tip, 0}, {-1, 0}},
  };
  p.edges = {
      {0, 1, 0, 1.0 / r, 0, 1, false},  // upper arc, lens on the left
      {1, 0, 1, 1.0 / r, 0, 2, false},  // lower arc, lens on the left
      {2, 1, 2, 0.0, 1, 2, false},
      {3, 0, 3, 0.0, 2, 1, false},
  };
  p.far_field.kind = FarField::Kind::Line;
  p.far_field.rays = {{{0, 0}, {1, 0}}};
  return p;
}

// ---- double bubble -------------------------------------------------------------

namespace {

struct BubbleGeometry {
  double a;        // half chord between the two triple points
  double alpha_m;  // middle arc half-aperture (signed, >= 0 when p1 >= p2)
};

// Half chord from the junction conditions: the three arcs through the two
// triple points have tangent-chord angles 2pi/3 - alpha_m, alpha_m and
// 2pi/3 + alpha_m, with sin(angle) = curvature * a for each.
BubbleGeometry double_bubble_geometry(double p1, double p2) {
  double dk = p1 - p2;
  auto f = [&](double a) { return std::sin(2 * kPi / 3 - std::asin(dk * a)) - p1 * a; };
  double hi = 1.0 / p1;
  if (dk > 0) hi = std::min(hi, 1.0 / dk);
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (f(mid) > 0 ? lo : hi) = mid;
  }
  double a = 0.5 * (lo + hi);
  return {a, std::asin(dk * a)};
}

ArcPartition assemble_double_bubble(double p1, double p2, double m1, double m2,
                                    double window_radius) {
  BubbleGeometry g = double_bubble_geometry(p1, p2);
  double a = g.a;
  double alpha1 = 2 * kPi / 3 - g.alpha_m;
  double alpha2 = 2 * kPi / 3 + g.alpha_m;
  ArcPartition p;
  p.window_radius = window_radius;
  p.regions = {{"b1", m1, false}, {"b2", m2, false}, {"out", 0.0, true}};
  p.vertices = {
      {0, Vertex::Kind::Interior, {0, a}, {}},
      {1, Vertex::Kind::Interior, {0, -a}, {}},
  };
  p.edges = {
      // Outer arc of bubble 1 around the west, bubble 1 on the left.
      {0, 0, 1, p1, 0, 2, alpha1 > kPi / 2},
      // Outer arc of bubble 2 around the east.
      {1, 1, 0, p2, 1, 2, alpha2 > kPi / 2},
      // Middle interface, traversed south: bubble 2 on the left.
      {2, 0, 1, p2 - p1, 1, 0, false},
  };
  p.far_field.kind = FarField::Kind::Cluster;
  return p;
}

// Damped Newton on the two pressures with targets walked by continuation.
template <typename Assemble>
Eigen::Vector2d solve_two_pressures(const Assemble& assemble, Eigen::Vector2d pr,
                                    double m_first, double m_second, const char* what) {
  double mean = 0.5 * (m_first + m_second);
  auto residual = [&](const Eigen::Vector2d& q, double t1, double t2) -> Eigen::Vector2d {
    ArcPartition part = assemble(q(0), q(1), t1, t2);
    return {finite_region_area(part, 0) - t1, finite_region_area(part, 1) - t2};
  };
  double ratio = std::max(m_first, m_second) / std::min(m_first, m_second);
  const int steps = ratio > 3.0 ? 8 : 3;
  for (int s = 1; s <= steps; ++s) {
    double t1 = mean + (m_first - mean) * s / steps;
    double t2 = mean + (m_second - mean) * s / steps;
    for (int it = 0; it < 60; ++it) {
      Eigen::Vector2d r = residual(pr, t1, t2);
      if (r.norm() < 1e-14 * std::max(1.0, std::max(t1, t2))) break;
      Eigen::Matrix2d J;
      double h = 1e-7;
      for (int c = 0; c < 2; ++c) {
        Eigen::Vector2d qp = pr, qm = pr;
        qp(c) += h;
        qm(c) -= h;
        J.col(c) = (residual(qp, t1, t2) - residual(qm, t1, t2)) / (2 * h);
      }
      Eigen::Vector2d step = J.fullPivLu().solve(r);
      double damp = 1.0;
      double base = r.norm();
      bool moved = false;
      for (int bt = 0; bt < 30; ++bt) {
        Eigen::Vector2d trial = pr - damp * step;
        if (trial(0) > 0 && trial(1) > 0 && residual(trial, t1, t2).norm() < base) {
          pr = trial;
          moved = true;
          break;
        }
        damp /= 2;
      }
      if (!moved) break;
    }
    Eigen::Vector2d fin = residual(pr, t1, t2);
    if (fin.norm() > 1e-10) {
      std::ostringstream os;
      os << what << " Newton stalled; area residual " << fin.norm();
      throw std::runtime_error(os.str());
    }
  }
  return pr;
}

}  // namespace

ArcPartition make_double_bubble(double m1, double m2, double window_radius) {
  require_positive(m1, "bubble area");
  require_positive(m2, "bubble area");

  double seg = 2 * kPi / 3 - std::sin(2 * kPi / 3) * std::cos(2 * kPi / 3);
  double mean = 0.5 * (m1 + m2);
  Eigen::Vector2d init(std::sqrt(seg / mean), std::sqrt(seg / mean));
  auto assemble = [](double p1, double p2, double t1, double t2) {
    return assemble_double_bubble(p1, p2, t1, t2, 1.0);
  };
  Eigen::Vector2d pr = solve_two_pressures(assemble, init, m1, m2, "double bubble");

  BubbleGeometry g = double_bubble_geometry(pr(0), pr(1));
  double extent = g.a + 2.0 / std::min(pr(0), pr(1));
  ArcPartition out =
      assemble_double_bubble(pr(0), pr(1), m1, m2, auto_window(window_radius, extent));
  return place_centroid_at_origin(out, {0, 1});
}

// ---- peanut --------------------------------------------------------------------

namespace {

struct PeanutGeometry {
  double beta;  // middle arc half-aperture (signed; > 0 when p3 > p4)
  double ym;    // top junction height
  double xL, xR, xm;
};

// The junction conditions at the top vertex make the two upper arcs span
// central angles pi/2 -+ beta; equating the junction height reached from the
// left and right tips pins beta.
PeanutGeometry peanut_geometry(double p3, double p4) {
  double r3 = 1.0 / p3, r4 = 1.0 / p4;
  auto g = [&](double b) {
    return r3 * (std::sin(kPi / 3 + b) - 0.5) - r4 * (std::sin(2 * kPi / 3 + b) - 0.5);
  };
  double lo = -kPi / 6, hi = kPi / 6;
  if (g(lo) > 0 || g(hi) < 0) throw std::runtime_error("peanut bracketing failed");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (g(mid) < 0 ? lo : hi) = mid;
  }
  PeanutGeometry out;
  out.beta = 0.5 * (lo + hi);
  out.ym = r3 * (std::sin(kPi / 3 + out.beta) - 0.5);
  out.xm = 0.0;
  out.xL = -r3 * (std::sqrt(3.0) / 2 + std::cos(kPi / 3 + out.beta));
  out.xR = -r4 * (-std::sqrt(3.0) / 2 + std::cos(2 * kPi / 3 + out.beta));
  return out;
}

ArcPartition assemble_peanut(double p3, double p4, double m3, double m4,
                             double window_radius) {
  PeanutGeometry g = peanut_geometry(p3, p4);
  ArcPartition p;
  p.window_radius = window_radius;
  p.regions = {{"left", m3, false}, {"right", m4, false}, {"up", 0.0, true},
               {"down", 0.0, true}};
  p.vertices = {
      {0, Vertex::Kind::Interior, {g.xL, 0}, {}},
      {1, Vertex::Kind::Interior, {g.xm, g.ym}, {}},
      {2, Vertex::Kind::Interior, {g.xm, -g.ym}, {}},
      {3, Vertex::Kind::Interior, {g.xR, 0}, {}},
      {4, Vertex::Kind::AtInfinity, {g.xL, 0}, {-1, 0}},
      {5, Vertex::Kind::AtInfinity, {g.xR, 0}, {1, 0}},
  };
  p.edges = {
      {0, 1, 0, p3, 0, 2, false},       // upper-left arc, region "left" on the left
      {1, 0, 2, p3, 0, 3, false},       // lower-left arc
      {2, 1, 2, p4 - p3, 1, 0, false},  // middle interface traversed south
      {3, 3, 1, p4, 1, 2, false},       // upper-right arc, "right" on the left
      {4, 2, 3, p4, 1, 3, false},       // lower-right arc
      {5, 0, 4, 0.0, 3, 2, false},      // west ray
      {6, 3, 5, 0.0, 2, 3, false},      // east ray
  };
  p.far_field.kind = FarField::Kind::Line;
  p.far_field.rays = {{{0, 0}, {1, 0}}};
  return p;
}

}  // namespace

ArcPartition make_peanut(double m3, double m4, double window_radius) {
  require_positive(m3, "peanut area");
  require_positive(m4, "peanut area");

  double mean = 0.5 * (m3 + m4);
  double coeff = kPi / 2 - 0.5;  // symmetric region area at unit pressure
  Eigen::Vector2d init(std::sqrt(coeff / mean), std::sqrt(coeff / mean));
  auto assemble = [](double p3, double p4, double t3, double t4) {
    return assemble_peanut(p3, p4, t3, t4, 1.0);
  };
  Eigen::Vector2d pr = solve_two_pressures(assemble, init, m3, m4, "peanut");

  PeanutGeometry g = peanut_geometry(pr(0), pr(1));
  double extent = std::max(std::abs(g.xL), std::abs(g.xR));
  ArcPartition out =
      assemble_peanut(pr(0), pr(1), m3, m4, auto_window(window_radius, extent));
  // Canonical placement slides the configuration along the axis; rays keep
  // their anchors on the axis.
  out = place_centroid_at_origin(out, {0, 1});
  for (auto& v : out.vertices)
    if (v.kind == Vertex::Kind::AtInfinity) v.pos.y = 0.0;
  return out;
}

// ---- Reuleaux ------------------------------------------------------------------

ArcPartition make_reuleaux(double m, double window_radius) {
  require_positive(m, "region area");
  // Area = (pi/2 - sqrt(3)/2) s^2 where s is both the triangle side and the
  // arc radius; the vertices sit at distance s/sqrt(3) from the center.
  double s = std::sqrt(m / (kPi / 2 - std::sqrt(3.0) / 2));
  double v = s / std::sqrt(3.0);
  double pres = 1.0 / s;
  ArcPartition p;
  p.window_radius = auto_window(window_radius, v);
  p.regions = {{"core", m, false}, {"west", 0.0, true}, {"south", 0.0, true},
               {"east", 0.0, true}};
  auto at = [&](double deg) { return dir_from_angle(deg * kPi / 180.0) * v; };
  auto dir = [](double deg) { return dir_from_angle(deg * kPi / 180.0); };
  p.vertices = {
      {0, Vertex::Kind::Interior, at(90), {}},
      {1, Vertex::Kind::Interior, at(210), {}},
      {2, Vertex::Kind::Interior, at(330), {}},
      {3, Vertex::Kind::AtInfinity, at(90), dir(90)},
      {4, Vertex::Kind::AtInfinity, at(210), dir(210)},
      {5, Vertex::Kind::AtInfinity, at(330), dir(330)},
  };
  p.edges = {
      {0, 0, 1, pres, 0, 1, false},  // core on the left, west sector on the right
      {1, 1, 2, pres, 0, 2, false},
      {2, 2, 0, pres, 0, 3, false},
      {3, 0, 3, 0.0, 1, 3, false},
      {4, 1, 4, 0.0, 2, 1, false},
      {5, 2, 5, 0.0, 3, 2, false},
  };
  p.far_field.kind = FarField::Kind::TripleRays;
  p.far_field.rays = {{at(90), dir(90)}, {at(210), dir(210)}, {at(330), dir(330)}};
  return p;
}

// ---- dispatch ------------------------------------------------------------------

ArcPartition construct(const ConstructionSpec& spec) {
  using Kind = ConstructionSpec::Kind;
  auto expect_areas = [&](size_t n) {
    if (spec.areas.size() != n) {
      std::ostringstream os;
      os << "construction expects " << n << " area(s), got " << spec.areas.size();
      throw std::invalid_argument(os.str());
    }
  };
  switch (spec.kind) {
    case Kind::HalfPlane:
      expect_areas(0);
      return make_cone(ConeKind::HalfPlane,
                       spec.window_radius > 0 ? spec.window_radius : 12.0);
    case Kind::TripleJunction:
      expect_areas(0);
      return make_cone(ConeKind::TripleJunction,
                       spec.window_radius > 0 ? spec.window_radius : 12.0);
    case Kind::Lens:
      expect_areas(1);
      return make_lens(spec.areas[0], spec.window_radius);
    case Kind::Peanut:
      expect_areas(2);
      return make_peanut(spec.areas[0], spec.areas[1], spec.window_radius);
    case Kind::Reuleaux:
      expect_areas(1);
      return make_reuleaux(spec.areas[0], spec.window_radius);
    case Kind::DoubleBubble:
      expect_areas(2);
      return make_double_bubble(spec.areas[0], spec.areas[1], spec.window_radius);
  }
  throw std::logic_error("unknown construction kind");
}

ConstructionSpec::Kind construction_kind_from_name(const std::string& name) {
  using Kind = ConstructionSpec::Kind;
  if (name == "halfplane") return Kind::HalfPlane;
  if (name == "triple_junction") return Kind::TripleJunction;
  if (name == "lens") return Kind::Lens;
  if (name == "peanut") return Kind::Peanut;
  if (name == "reuleaux") return Kind::Reuleaux;
  if (name == "double_bubble") return Kind::DoubleBubble;
  throw std::invalid_argument("unknown construction kind: " + name);
}

}  // namespace isopart
