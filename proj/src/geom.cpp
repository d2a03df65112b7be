#include "isopart/geom.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace isopart {

namespace {
constexpr double kPi = 3.14159265358979323846;
// Below |kappa|*chord < 1e-6 the closed forms lose digits to cancellation;
// evaluate length/area by series instead.
constexpr double kSeriesThreshold = 1e-6;
}  // namespace

double wrap_angle(double a) {
  double w = std::fmod(a, 2 * kPi);
  if (w < 0) w += 2 * kPi;
  return w;
}

double angle_between(const Vec2& a, const Vec2& b) {
  double c = dot(a, b) / (norm(a) * norm(b));
  c = std::clamp(c, -1.0, 1.0);
  return std::acos(c);
}

bool arc_degenerate(const CircularArc& arc) {
  return dist(arc.start, arc.end) == 0.0 && arc.kappa == 0.0 && !arc.major;
}

double arc_half_aperture(const CircularArc& arc) {
  double c = dist(arc.start, arc.end);
  double s = std::abs(arc.kappa) * c / 2.0;
  if (s > 1.0 + 1e-12) throw std::invalid_argument("arc chord exceeds diameter");
  double a = std::asin(std::min(s, 1.0));
  return arc.major ? kPi - a : a;
}

Vec2 arc_center(const CircularArc& arc) {
  if (arc.kappa == 0.0) throw std::invalid_argument("straight segment has no center");
  double r = 1.0 / std::abs(arc.kappa);
  Vec2 mid = (arc.start + arc.end) / 2.0;
  double c = dist(arc.start, arc.end);
  if (c == 0.0) throw std::invalid_argument("degenerate chord");
  Vec2 left = perp((arc.end - arc.start) / c);
  double alpha = arc_half_aperture(arc);
  // For a minor bulge-left arc the center sits right of the chord; past the
  // semicircle (major) it crosses to the bulge side. -r*cos covers both.
  double offset = -r * std::cos(alpha);
  double sgn = arc.kappa > 0 ? 1.0 : -1.0;
  return mid + left * (sgn * offset);
}

double arc_length(const CircularArc& arc) {
  double c = dist(arc.start, arc.end);
  if (arc.kappa == 0.0) return c;
  double u = std::abs(arc.kappa) * c / 2.0;
  if (!arc.major && u < kSeriesThreshold) {
    double u2 = u * u;
    return c * (1.0 + u2 / 6.0 + 3.0 * u2 * u2 / 40.0);
  }
  double alpha = arc_half_aperture(arc);
  return 2.0 * alpha / std::abs(arc.kappa);
}

double arc_area_moment(const CircularArc& arc) {
  double base = 0.5 * cross(arc.start, arc.end);
  if (arc.kappa == 0.0) return base;
  double c = dist(arc.start, arc.end);
  double u = arc.kappa * c / 2.0;  // signed
  double bulge;
  if (!arc.major && std::abs(u) < kSeriesThreshold) {
    // sign(kappa) * r^2 (alpha - sin alpha cos alpha) expanded in u
    bulge = arc.kappa * c * c * c / 12.0 * (1.0 + 3.0 * u * u / 10.0);
  } else {
    double alpha = arc_half_aperture(arc);
    double r = 1.0 / std::abs(arc.kappa);
    double seg = r * r * (alpha - std::sin(alpha) * std::cos(alpha));
    bulge = (arc.kappa > 0 ? seg : -seg);
  }
  // A bulge to the left of the traversal subtracts from the area enclosed by
  // a counterclockwise loop, which keeps its material on the left.
  return base - bulge;
}

std::pair<Vec2, Vec2> endpoint_tangents(const CircularArc& arc) {
  if (arc_degenerate(arc)) throw std::invalid_argument("degenerate arc has no tangents");
  double c = dist(arc.start, arc.end);
  if (c == 0.0) throw std::invalid_argument("zero chord");
  Vec2 u = (arc.end - arc.start) / c;
  if (arc.kappa == 0.0) return {u, u};
  double alpha = arc_half_aperture(arc);
  double sgn = arc.kappa > 0 ? 1.0 : -1.0;
  return {rotated(u, sgn * alpha), rotated(u, -sgn * alpha)};
}

Vec2 arc_point(const CircularArc& arc, double t) {
  if (arc.kappa == 0.0) return arc.start + (arc.end - arc.start) * t;
  Vec2 ctr = arc_center(arc);
  double alpha = arc_half_aperture(arc);
  // Positive kappa arcs are traversed clockwise around their center.
  double sweep = -2.0 * alpha * (arc.kappa > 0 ? 1.0 : -1.0);
  Vec2 rel = arc.start - ctr;
  return ctr + rotated(rel, sweep * t);
}

CircularArc reversed(const CircularArc& arc) {
  return {arc.end, arc.start, -arc.kappa, arc.major};
}

ArcSide arc_side_of(const CircularArc& arc, const Vec2& p) {
  auto side_of_point = [&](const Vec2& q, const Vec2& tangent) {
    double s = cross(tangent, p - q);
    return s > 0 ? 1 : (s < 0 ? -1 : 0);
  };
  if (arc.kappa == 0.0) {
    Vec2 d = arc.end - arc.start;
    double len2 = dot(d, d);
    double t = len2 == 0 ? 0.0 : std::clamp(dot(p - arc.start, d) / len2, 0.0, 1.0);
    Vec2 q = arc.start + d * t;
    return {dist(p, q), side_of_point(q, d)};
  }
  Vec2 ctr = arc_center(arc);
  double alpha = arc_half_aperture(arc);
  double a0 = angle_of(arc.start - ctr);
  double sweep = -2.0 * alpha * (arc.kappa > 0 ? 1.0 : -1.0);
  double ap = angle_of(p - ctr);
  // Fraction of the sweep at which the ray center->p crosses the arc.
  double rel = wrap_angle((ap - a0) * (sweep > 0 ? 1.0 : -1.0));
  double t = rel / std::abs(sweep);
  double r = 1.0 / std::abs(arc.kappa);
  Vec2 q, tangent;
  if (t <= 1.0) {
    q = ctr + normalized(p - ctr) * r;
    tangent = rotated(normalized(q - ctr), sweep > 0 ? kPi / 2 : -kPi / 2);
  } else {
    // Nearest endpoint.
    double ds = dist(p, arc.start), de = dist(p, arc.end);
    auto tan = endpoint_tangents(arc);
    if (ds <= de) {
      q = arc.start;
      tangent = tan.first;
    } else {
      q = arc.end;
      tangent = tan.second;
    }
  }
  return {dist(p, q), side_of_point(q, tangent)};
}

double arc_integral(const CircularArc& arc, const std::function<double(Vec2)>& f) {
  // 16-point Gauss-Legendre rule mapped from [-1,1] to [0,1].
  static const std::array<double, 8> xs = {0.0950125098376374, 0.2816035507792589,
                                           0.4580167776572274, 0.6178762444026438,
                                           0.7554044083550030, 0.8656312023878318,
                                           0.9445750230732326, 0.9894009349916499};
  static const std::array<double, 8> ws = {0.1894506104550685, 0.1826034150449236,
                                           0.1691565193950025, 0.1495959888165767,
                                           0.1246289712555339, 0.0951585116824928,
                                           0.0622535239386479, 0.0271524594117541};
  double L = arc_length(arc);
  double total = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    double tp = 0.5 * (1.0 + xs[i]);
    double tm = 0.5 * (1.0 - xs[i]);
    total += 0.5 * ws[i] * (f(arc_point(arc, tp)) + f(arc_point(arc, tm)));
  }
  return total * L;
}

// ---- clipping --------------------------------------------------------------

namespace {

// Sub-arc of `arc` between parameters t0 < t1. The curvature magnitude is
// unchanged; only the major flag needs recomputing from the swept angle.
CircularArc sub_arc(const CircularArc& arc, double t0, double t1, const Vec2& p0,
                    const Vec2& p1) {
  if (arc.kappa == 0.0) return {p0, p1, 0.0, false};
  double sweep = 2.0 * arc_half_aperture(arc) * (t1 - t0);
  return {p0, p1, arc.kappa, sweep > kPi};
}

std::vector<ClippedPiece> pieces_from_params(const CircularArc& arc,
                                             std::vector<double> cuts, double R) {
  std::vector<ClippedPiece> out;
  cuts.push_back(0.0);
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-13; }),
             cuts.end());
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    double t0 = cuts[i], t1 = cuts[i + 1];
    Vec2 mid = arc_point(arc, 0.5 * (t0 + t1));
    if (norm(mid) > R) continue;
    Vec2 p0 = arc_point(arc, t0);
    Vec2 p1 = arc_point(arc, t1);
    ClippedPiece piece;
    piece.arc = sub_arc(arc, t0, t1, p0, p1);
    // Interior cut parameters lie on the circle by construction; original
    // endpoints only if they happen to touch it.
    piece.start_on_circle = t0 > 1e-13 || std::abs(norm(p0) - R) < 1e-9 * std::max(1.0, R);
    piece.end_on_circle = t1 < 1.0 - 1e-13 || std::abs(norm(p1) - R) < 1e-9 * std::max(1.0, R);
    out.push_back(piece);
  }
  return out;
}

}  // namespace

std::vector<Vec2> circle_circle_intersections(const Vec2& c0, double r0, const Vec2& c1,
                                              double r1) {
  double d = dist(c0, c1);
  if (d == 0.0) return {};
  if (d > r0 + r1 || d < std::abs(r0 - r1)) return {};
  double a = (r0 * r0 - r1 * r1 + d * d) / (2.0 * d);
  double h2 = r0 * r0 - a * a;
  if (h2 < 0) return {};
  double h = std::sqrt(h2);
  Vec2 u = (c1 - c0) / d;
  Vec2 base = c0 + u * a;
  if (h == 0.0) return {base};
  return {base + perp(u) * h, base - perp(u) * h};
}

std::vector<ClippedPiece> clip_arc_to_disk(const CircularArc& arc, double R) {
  std::vector<double> cuts;
  if (arc.kappa == 0.0) {
    Vec2 d = arc.end - arc.start;
    double a = dot(d, d);
    if (a == 0.0) {
      if (norm(arc.start) <= R) return {{arc, false, false}};
      return {};
    }
    double b = 2.0 * dot(arc.start, d);
    double c = dot(arc.start, arc.start) - R * R;
    double disc = b * b - 4 * a * c;
    if (disc > 0) {
      double sq = std::sqrt(disc);
      for (double t : {(-b - sq) / (2 * a), (-b + sq) / (2 * a)})
        if (t > 1e-13 && t < 1.0 - 1e-13) cuts.push_back(t);
    }
  } else {
    Vec2 ctr = arc_center(arc);
    double r = 1.0 / std::abs(arc.kappa);
    for (const Vec2& p : circle_circle_intersections({0, 0}, R, ctr, r)) {
      double alpha = arc_half_aperture(arc);
      double sweep = -2.0 * alpha * (arc.kappa > 0 ? 1.0 : -1.0);
      double a0 = angle_of(arc.start - ctr);
      double rel = wrap_angle((angle_of(p - ctr) - a0) * (sweep > 0 ? 1.0 : -1.0));
      double t = rel / std::abs(sweep);
      if (t > 1e-13 && t < 1.0 - 1e-13) cuts.push_back(t);
    }
  }
  return pieces_from_params(arc, std::move(cuts), R);
}

std::vector<ClippedPiece> clip_ray_to_disk(const Vec2& anchor, const Vec2& dir, double R) {
  Vec2 u = normalized(dir);
  double b = 2.0 * dot(anchor, u);
  double c = dot(anchor, anchor) - R * R;
  double disc = b * b - 4 * c;
  if (disc <= 0) return {};
  double sq = std::sqrt(disc);
  double t0 = (-b - sq) / 2.0, t1 = (-b + sq) / 2.0;
  t0 = std::max(t0, 0.0);
  if (t1 <= t0) return {};
  Vec2 p0 = anchor + u * t0;
  Vec2 p1 = anchor + u * t1;
  ClippedPiece piece;
  piece.arc = {p0, p1, 0.0, false};
  piece.start_on_circle = std::abs(norm(p0) - R) < 1e-9 * std::max(1.0, R);
  piece.end_on_circle = true;
  return {piece};
}

std::vector<ClippedPiece> clip_line_to_disk(const Vec2& anchor, const Vec2& dir, double R) {
  Vec2 u = normalized(dir);
  double b = 2.0 * dot(anchor, u);
  double c = dot(anchor, anchor) - R * R;
  double disc = b * b - 4 * c;
  if (disc <= 0) return {};
  double sq = std::sqrt(disc);
  double t0 = (-b - sq) / 2.0, t1 = (-b + sq) / 2.0;
  Vec2 p0 = anchor + u * t0;
  Vec2 p1 = anchor + u * t1;
  ClippedPiece piece;
  piece.arc = {p0, p1, 0.0, false};
  piece.start_on_circle = true;
  piece.end_on_circle = true;
  return {piece};
}

double clipped_region_area(const std::vector<ClippedPiece>& pieces, double R,
                           const std::function<bool(const Vec2&)>& inside) {
  double total = 0.0;
  struct Event {
    double angle;
    bool entry;  // region boundary enters the disk here (piece starts)
  };
  std::vector<Event> events;
  for (const auto& piece : pieces) {
    total += arc_area_moment(piece.arc);
    if (piece.start_on_circle) events.push_back({wrap_angle(angle_of(piece.arc.start)), true});
    if (piece.end_on_circle) events.push_back({wrap_angle(angle_of(piece.arc.end)), false});
  }
  if (events.empty()) {
    // No boundary piece touches the circle: the region either misses it or
    // owns the whole rim. One probe point decides.
    if (inside(dir_from_angle(0.7853981) * R)) total += kPi * R * R;
    return total;
  }
  std::vector<Event> exits, entries;
  for (const auto& e : events) (e.entry ? entries : exits).push_back(e);
  if (exits.size() != entries.size())
    throw std::runtime_error("unbalanced circle crossings in area clipping");
  std::sort(entries.begin(), entries.end(),
            [](const Event& a, const Event& b) { return a.angle < b.angle; });
  for (const auto& ex : exits) {
    // Walk counterclockwise along the circle to the next entry.
    const Event* next = nullptr;
    for (const auto& en : entries) {
      if (en.angle >= ex.angle - 1e-13) {
        next = &en;
        break;
      }
    }
    if (!next) next = &entries.front();
    double sweep = wrap_angle(next->angle - ex.angle);
    total += 0.5 * R * R * sweep;
  }
  return total;
}

// ---- analytic circle traces -------------------------------------------------

std::vector<std::pair<double, double>> circle_trace(const Disk& d, double rho) {
  double dc = norm(d.center);
  if (dc + rho <= d.radius) return {{0.0, 2 * kPi}};  // circle inside disk
  if (dc <= 1e-15) return (rho < d.radius) ? std::vector<std::pair<double, double>>{{0.0, 2 * kPi}}
                                           : std::vector<std::pair<double, double>>{};
  double cosd = (rho * rho + dc * dc - d.radius * d.radius) / (2 * rho * dc);
  if (cosd >= 1.0) return {};
  if (cosd <= -1.0) return {{0.0, 2 * kPi}};
  double half = std::acos(cosd);
  double center_angle = angle_of(d.center);
  return {{wrap_angle(center_angle - half), 2 * half}};
}

std::vector<std::pair<double, double>> circle_trace(const HalfPlane& h, double rho) {
  Vec2 n = normalized(h.normal);
  double offset = dot(h.point, n);  // region: dot(x, n) <= offset
  double c = offset / rho;
  if (c >= 1.0) return {{0.0, 2 * kPi}};
  if (c <= -1.0) return {};
  double half = std::acos(c);  // points with dot(x_hat, n) <= c
  double opposite = angle_of(-n);
  double spread = kPi - half;
  return {{wrap_angle(opposite - spread), 2 * spread}};
}

double interval_symmetric_difference(std::vector<std::pair<double, double>> a,
                                     std::vector<std::pair<double, double>> b) {
  // Measure of A + measure of B - 2 * measure of intersection, computed by
  // splitting the circle at all interval boundaries.
  std::vector<double> cuts = {0.0};
  auto add = [&](const std::vector<std::pair<double, double>>& set) {
    for (auto [s, len] : set) {
      cuts.push_back(wrap_angle(s));
      cuts.push_back(wrap_angle(s + len));
    }
  };
  add(a);
  add(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(2 * kPi);
  auto contains = [](const std::vector<std::pair<double, double>>& set, double angle) {
    for (auto [s, len] : set) {
      if (len >= 2 * kPi - 1e-15) return true;
      double rel = wrap_angle(angle - s);
      if (rel < len) return true;
    }
    return false;
  };
  double total = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    double lo = cuts[i], hi = cuts[i + 1];
    if (hi - lo < 1e-15) continue;
    double mid = 0.5 * (lo + hi);
    if (contains(a, mid) != contains(b, mid)) total += hi - lo;
  }
  return total;
}

}  // namespace isopart
