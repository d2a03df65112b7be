#include "isopart/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace isopart {

namespace {

double dotN(const VecN& a, const VecN& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double normN(const VecN& a) { return std::sqrt(dotN(a, a)); }

VecN scaledN(VecN a, double s) {
  for (double& x : a) x *= s;
  return a;
}

VecN axpy(double alpha, const VecN& x, const VecN& y) {
  VecN out = y;
  for (size_t i = 0; i < x.size(); ++i) out[i] += alpha * x[i];
  return out;
}

// Deterministic uniforms/gaussians independent of libstdc++ internals.
struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform() { return std::ldexp(double(gen()), -64); }
  double gauss() {
    double u1 = 0;
    do { u1 = uniform(); } while (u1 <= 1e-300);
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }
};

}  // namespace

VecN SpherePartition::rotated_site(int k) const {
  const int n = sites.d + 1;
  VecN out(n, 0.0);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out[r] += rotation[r * n + c] * sites.sites[k][c];
  return out;
}

SimplexSites make_equidistant_sites(int N, int d) {
  if (N < 2) throw std::invalid_argument("need at least 2 sites");
  if (N > d + 2) {
    std::ostringstream os;
    os << "equidistant " << N << "-site configurations do not exist on S^" << d
       << " (need N <= d+2)";
    throw std::invalid_argument(os.str());
  }
  SimplexSites out;
  out.d = d;
  out.N = N;
  // Regular simplex vertices: map e_i of R^N into the hyperplane sum(x)=0 by
  // a Helmert orthonormal basis, then normalize. The image spans the first
  // N-1 coordinates of R^(d+1).
  for (int i = 0; i < N; ++i) {
    VecN v(d + 1, 0.0);
    // Coordinates of e_i - (1/N, ..., 1/N) in the Helmert basis
    // h_k = (1,...,1,-k,0,...,0)/sqrt(k(k+1)), k = 1..N-1.
    for (int k = 1; k <= N - 1; ++k) {
      double comp;
      if (i < k)
        comp = 1.0;
      else if (i == k)
        comp = -double(k);
      else
        comp = 0.0;
      v[k - 1] = comp / std::sqrt(double(k) * (k + 1));
    }
    double n = normN(v);
    for (double& x : v) x /= n;
    out.sites.push_back(v);
  }
  return out;
}

SpherePartition make_sphere_partition(int N, int d) {
  SpherePartition p;
  p.sites = make_equidistant_sites(N, d);
  const int n = d + 1;
  p.rotation.assign(n * n, 0.0);
  for (int i = 0; i < n; ++i) p.rotation[i * n + i] = 1.0;
  return p;
}

void nudge_rotation_toward(SpherePartition& p, int j, double angle) {
  const int n = p.dim() + 1;
  VecN pole(n, 0.0);
  pole[n - 1] = 1.0;
  VecN site = p.rotated_site(j);
  // Orthonormal frame (pole, u) of the rotation plane.
  double c = dotN(site, pole);
  VecN u = axpy(-c, pole, site);
  double un = normN(u);
  if (un < 1e-14) return;  // pole already at the site
  u = scaledN(u, 1.0 / un);
  // Rotate the pole toward the site: R = I + terms in the (pole, u) plane.
  // Apply R to the current rotation (R * Q).
  double cs = std::cos(angle), sn = std::sin(angle);
  std::vector<double> R(n * n, 0.0);
  for (int i = 0; i < n; ++i) R[i * n + i] = 1.0;
  for (int r = 0; r < n; ++r)
    for (int col = 0; col < n; ++col) {
      double pp = pole[r] * pole[col], uu = u[r] * u[col];
      double pu = pole[r] * u[col], up = u[r] * pole[col];
      R[r * n + col] += (cs - 1) * (pp + uu) + sn * (up - pu);
    }
  // The pole is rotated toward the site means points move so the region at
  // the site comes to the pole: rotate sites by the inverse. Apply R^T to Q.
  std::vector<double> out(n * n, 0.0);
  for (int r = 0; r < n; ++r)
    for (int col = 0; col < n; ++col) {
      double s = 0;
      for (int k = 0; k < n; ++k) s += R[k * n + r] * p.rotation[k * n + col];
      out[r * n + col] = s;
    }
  p.rotation = out;
  // The frame above rotates pole -> u; applying the transpose to the site
  // configuration moves the site j toward the pole, which is what callers
  // want: the pole ends up strictly inside cell j for small positive angles.
}

VoronoiLabel voronoi_label(const VecN& x, const SpherePartition& p) {
  if (std::abs(normN(x) - 1.0) > 1e-9)
    throw std::invalid_argument("voronoi_label expects a unit vector");
  VoronoiLabel out;
  double best = -2.0, second = -2.0;
  for (int k = 0; k < p.sites.N; ++k) {
    double s = dotN(x, p.rotated_site(k));
    if (s > best) {
      second = best;
      best = s;
      out.index = k;
    } else if (s > second) {
      second = s;
    }
  }
  out.tie = (best - second) < 1e-12;
  return out;
}

VecN project_to_plane(const VecN& x) {
  const int n = int(x.size());
  double denom = 1.0 - x[n - 1];
  if (std::abs(denom) < 1e-15)
    throw std::domain_error("stereographic projection undefined at the pole");
  VecN y(n - 1);
  for (int i = 0; i < n - 1; ++i) y[i] = x[i] / denom;
  return y;
}

VecN lift_to_sphere(const VecN& y) {
  const int d = int(y.size());
  double s = dotN(y, y);
  VecN x(d + 1);
  for (int i = 0; i < d; ++i) x[i] = 2.0 * y[i] / (s + 1.0);
  x[d] = (s - 1.0) / (s + 1.0);
  return x;
}

bool at_pole(const VecN& x, double tol) {
  return std::abs(x.back() - 1.0) < tol;
}

VoronoiLabel planar_label(const VecN& y, const SpherePartition& p) {
  return voronoi_label(lift_to_sphere(y), p);
}

MonteCarloMeasures monte_carlo_measures(const SpherePartition& p, double window_radius,
                                        std::int64_t samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  const int d = p.dim();
  Rng rng(seed);
  std::vector<std::int64_t> hits(p.sites.N, 0);
  if (window_radius <= 0) {
    // Uniform on S^d via normalized Gaussians.
    for (std::int64_t s = 0; s < samples; ++s) {
      VecN x(d + 1);
      double n2 = 0;
      do {
        n2 = 0;
        for (double& c : x) {
          c = rng.gauss();
          n2 += c * c;
        }
      } while (n2 < 1e-12);
      double inv = 1.0 / std::sqrt(n2);
      for (double& c : x) c *= inv;
      hits[voronoi_label(x, p).index]++;
    }
  } else {
    // Uniform in the planar ball of radius window_radius (rejection from the cube).
    for (std::int64_t s = 0; s < samples; ++s) {
      VecN y(d);
      double n2;
      do {
        n2 = 0;
        for (double& c : y) {
          c = window_radius * (2.0 * rng.uniform() - 1.0);
          n2 += c * c;
        }
      } while (n2 > window_radius * window_radius);
      hits[planar_label(y, p).index]++;
    }
  }
  // Total measure: sphere surface area for S^2 is 4*pi; in general
  // 2 pi^{(d+1)/2} / Gamma((d+1)/2). Planar: volume of the d-ball.
  double total;
  if (window_radius <= 0) {
    double g = std::tgamma((d + 1) / 2.0);
    total = 2.0 * std::pow(3.14159265358979323846, (d + 1) / 2.0) / g;
  } else {
    double g = std::tgamma(d / 2.0 + 1.0);
    total = std::pow(3.14159265358979323846, d / 2.0) / g *
            std::pow(window_radius, d);
  }
  MonteCarloMeasures out;
  out.samples = samples;
  for (int k = 0; k < p.sites.N; ++k) {
    double frac = double(hits[k]) / double(samples);
    out.volume.push_back(total * frac);
    out.stderr_.push_back(total * std::sqrt(frac * (1 - frac) / double(samples)));
  }
  return out;
}

double gram_defect(const SimplexSites& sites) {
  double worst = 0;
  double expected = -1.0 / (sites.N - 1);
  for (int i = 0; i < sites.N; ++i) {
    for (int j = i; j < sites.N; ++j) {
      double g = dotN(sites.sites[i], sites.sites[j]);
      double want = (i == j) ? 1.0 : expected;
      worst = std::max(worst, std::abs(g - want));
    }
  }
  return worst;
}

VecN bisect_boundary(const SpherePartition& p, VecN a, VecN b, double tol) {
  int la = voronoi_label(a, p).index;
  int lb = voronoi_label(b, p).index;
  if (la == lb) throw std::invalid_argument("bisect_boundary needs different labels");
  // Bisection along the great circle: slerp between the endpoints.
  double lo = 0.0, hi = 1.0;
  double omega = std::acos(std::clamp(dotN(a, b), -1.0, 1.0));
  if (omega < 1e-12) throw std::invalid_argument("degenerate great-circle arc");
  auto slerp = [&](double t) {
    double s = std::sin(omega);
    VecN out(a.size());
    for (size_t i = 0; i < a.size(); ++i)
      out[i] = (std::sin((1 - t) * omega) * a[i] + std::sin(t * omega) * b[i]) / s;
    return out;
  };
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (voronoi_label(slerp(mid), p).index == la)
      lo = mid;
    else
      hi = mid;
  }
  return slerp(0.5 * (lo + hi));
}

std::vector<Vec2> sample_projected_boundary(const SpherePartition& p, int i, int j,
                                            int count, double window_radius,
                                            std::uint64_t seed) {
  if (p.dim() != 2)
    throw std::invalid_argument("projected boundary sampling is for S^2 only");
  Rng rng(seed);
  std::vector<Vec2> out;
  int guard = 0;
  while (int(out.size()) < count && guard < 100000) {
    ++guard;
    // Random pair of planar points in the window with the two labels.
    VecN ya(2), yb(2);
    for (double& c : ya) c = window_radius * (2 * rng.uniform() - 1);
    for (double& c : yb) c = window_radius * (2 * rng.uniform() - 1);
    if (planar_label(ya, p).index != i || planar_label(yb, p).index != j) continue;
    VecN x = bisect_boundary(p, lift_to_sphere(ya), lift_to_sphere(yb));
    if (at_pole(x, 1e-9)) continue;
    // The great-circle path may first leave cell i through some other cell;
    // keep the sample only if the nearest two sites are exactly {i, j}.
    std::vector<std::pair<double, int>> dots;
    for (int k = 0; k < p.sites.N; ++k) {
      double s = 0;
      VecN site = p.rotated_site(k);
      for (size_t c = 0; c < x.size(); ++c) s += x[c] * site[c];
      dots.push_back({s, k});
    }
    std::sort(dots.rbegin(), dots.rend());
    bool pair_ok = (dots[0].second == i && dots[1].second == j) ||
                   (dots[0].second == j && dots[1].second == i);
    if (!pair_ok || dots[0].first - dots[1].first > 1e-8) continue;
    if (p.sites.N > 2 && dots[1].first - dots[2].first < 1e-6) continue;  // triple point
    VecN y = project_to_plane(x);
    out.push_back({y[0], y[1]});
  }
  if (int(out.size()) < count)
    throw std::runtime_error("could not sample enough boundary points");
  return out;
}

CircleFit fit_circle_three_points(const Vec2& a, const Vec2& b, const Vec2& c) {
  CircleFit fit;
  double det = 2.0 * cross(b - a, c - a);
  double scale = std::max({dist(a, b), dist(b, c), dist(a, c)});
  if (std::abs(det) < 1e-12 * scale * scale) {
    fit.is_line = true;
    fit.line_point = a;
    fit.line_dir = normalized(c - a);
    return fit;
  }
  double a2 = dot(a, a), b2 = dot(b, b), c2 = dot(c, c);
  fit.center = {(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / det,
                (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / det};
  fit.radius = dist(fit.center, a);
  return fit;
}

double circle_fit_distance(const CircleFit& fit, const Vec2& p) {
  if (fit.is_line) return std::abs(cross(fit.line_dir, p - fit.line_point));
  return std::abs(dist(p, fit.center) - fit.radius);
}

}  // namespace isopart
