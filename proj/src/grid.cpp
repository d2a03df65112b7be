#include "isopart/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace isopart {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Pair-counting offsets (half plane) and weights calibrated on straight
// lines at 0, 22.5 and 45 degrees; see the calibration test.
struct Offset {
  int dx, dy;
  double w;
};
constexpr double kAxisW = 0.198912367379658;
constexpr double kDiagW = 0.07759202382001544;
constexpr double kKnightW = 0.10765059749671851;
constexpr Offset kOffsets[] = {
    {1, 0, kAxisW},   {0, 1, kAxisW},   {1, 1, kDiagW},   {1, -1, kDiagW},
    {2, 1, kKnightW}, {1, 2, kKnightW}, {2, -1, kKnightW}, {1, -2, kKnightW},
};

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform() { return std::ldexp(double(gen()), -64); }
  int below(int n) { return int(gen() % std::uint64_t(n)); }
};

}  // namespace

std::int64_t GridPartition::count_label(int k) const {
  return std::count(labels.begin(), labels.end(), std::uint8_t(k));
}

double grid_energy(const GridPartition& g) {
  double total = 0.0;
  for (int iy = 0; iy < g.n; ++iy) {
    for (int ix = 0; ix < g.n; ++ix) {
      std::uint8_t c = g.labels[g.idx(ix, iy)];
      for (const Offset& o : kOffsets) {
        int jx = ix + o.dx, jy = iy + o.dy;
        if (jx < 0 || jx >= g.n || jy < 0 || jy >= g.n) continue;
        if (g.labels[g.idx(jx, jy)] != c) total += o.w;
      }
    }
  }
  return total * g.h;
}

double grid_energy_delta(const GridPartition& g, int ix, int iy, std::uint8_t label) {
  std::uint8_t old = g.labels[g.idx(ix, iy)];
  if (old == label) return 0.0;
  double delta = 0.0;
  for (const Offset& o : kOffsets) {
    for (int sgn : {1, -1}) {
      int jx = ix + sgn * o.dx, jy = iy + sgn * o.dy;
      if (jx < 0 || jx >= g.n || jy < 0 || jy >= g.n) continue;
      std::uint8_t nb = g.labels[g.idx(jx, jy)];
      delta += o.w * ((nb != label ? 1.0 : 0.0) - (nb != old ? 1.0 : 0.0));
    }
  }
  return delta * g.h;
}

GridPartition rasterize(const ArcPartition& p, int n, double half_side, int band) {
  GridPartition g;
  g.n = n;
  g.h = 2.0 * half_side / n;
  g.num_regions = int(p.regions.size());
  g.labels.resize(n * n);
  g.frozen.assign(n * n, 0);
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      g.labels[g.idx(ix, iy)] =
          std::uint8_t(locate_region(p, g.cell_center(ix, iy)));
      bool edge = ix < band || iy < band || ix >= n - band || iy >= n - band;
      g.frozen[g.idx(ix, iy)] = edge ? 1 : 0;
    }
  }
  g.target_cells.assign(p.regions.size(), -1);
  for (size_t k = 0; k < p.regions.size(); ++k)
    if (!p.regions[k].infinite) g.target_cells[k] = g.count_label(int(k));
  return g;
}

double window_energy_square(const ArcPartition& p, double half_side) {
  double total = 0.0;
  auto ray_exit = [&](const Vec2& anchor, const Vec2& dir) {
    double best = std::numeric_limits<double>::infinity();
    if (dir.x > 1e-15) best = std::min(best, (half_side - anchor.x) / dir.x);
    if (dir.x < -1e-15) best = std::min(best, (-half_side - anchor.x) / dir.x);
    if (dir.y > 1e-15) best = std::min(best, (half_side - anchor.y) / dir.y);
    if (dir.y < -1e-15) best = std::min(best, (-half_side - anchor.y) / dir.y);
    return best;
  };
  for (const auto& e : p.edges) {
    EdgeGeometry g = edge_geometry(p, e);
    switch (g.type) {
      case EdgeGeometry::Type::Arc: {
        // Bounded interfaces must lie inside the window for the comparison
        // to be exact.
        for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
          Vec2 q = arc_point(g.arc, t);
          if (std::abs(q.x) > half_side || std::abs(q.y) > half_side)
            throw std::invalid_argument("bounded edge leaves the square window");
        }
        total += arc_length(g.arc);
        break;
      }
      case EdgeGeometry::Type::Ray:
        total += std::max(0.0, ray_exit(g.anchor, g.dir));
        break;
      case EdgeGeometry::Type::Line:
        total += std::max(0.0, ray_exit(g.anchor, g.dir)) +
                 std::max(0.0, ray_exit(g.anchor, -g.dir));
        break;
    }
  }
  return total;
}

AnnealResult anneal(const GridPartition& g, const AnnealSchedule& schedule,
                    std::uint64_t seed) {
  // Feasibility: constrained counts must match the targets.
  for (int k = 0; k < g.num_regions; ++k) {
    if (g.target_cells[k] >= 0 && g.count_label(k) != g.target_cells[k]) {
      std::ostringstream os;
      os << "infeasible targets: region " << k << " has " << g.count_label(k)
         << " cells, target " << g.target_cells[k];
      throw std::invalid_argument(os.str());
    }
  }
  AnnealResult out;
  out.grid = g;
  GridPartition& cur = out.grid;
  out.initial_energy = grid_energy(cur);
  double energy = out.initial_energy;

  GridPartition best = cur;
  double best_energy = energy;

  Rng rng(seed);
  double t = schedule.t0 > 0 ? schedule.t0 : 2.0 * g.h * kAxisW * 6;
  auto constrained = [&](std::uint8_t k) { return cur.target_cells[k] >= 0; };

  const int neighbor8[8][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                               {1, 1},  {1, -1}, {-1, 1}, {-1, -1}};

  auto sweep = [&](double temperature) {
    const std::int64_t proposals = std::int64_t(cur.n) * cur.n;
    for (std::int64_t s = 0; s < proposals; ++s) {
      ++out.proposed;
      int ix = rng.below(cur.n), iy = rng.below(cur.n);
      if (cur.frozen[cur.idx(ix, iy)]) continue;
      const int* d = neighbor8[rng.below(8)];
      int jx = ix + d[0], jy = iy + d[1];
      if (jx < 0 || jx >= cur.n || jy < 0 || jy >= cur.n) continue;
      if (cur.frozen[cur.idx(jx, jy)]) continue;
      std::uint8_t a = cur.labels[cur.idx(ix, iy)];
      std::uint8_t b = cur.labels[cur.idx(jx, jy)];
      if (a == b) continue;
      double delta;
      bool swap = constrained(a) || constrained(b);
      if (swap) {
        // Swap the two labels: evaluate sequentially to count the shared
        // pair correctly.
        delta = grid_energy_delta(cur, ix, iy, b);
        cur.labels[cur.idx(ix, iy)] = b;
        delta += grid_energy_delta(cur, jx, jy, a);
        cur.labels[cur.idx(ix, iy)] = a;
      } else {
        delta = grid_energy_delta(cur, ix, iy, b);
      }
      bool accept = delta <= 0.0 ||
                    (temperature > 0 && rng.uniform() < std::exp(-delta / temperature));
      if (!accept) continue;
      ++out.accepted;
      cur.labels[cur.idx(ix, iy)] = b;
      if (swap) cur.labels[cur.idx(jx, jy)] = a;
      energy += delta;
    }
  };

  for (int block = 0; block < schedule.temperatures; ++block) {
    for (int s = 0; s < schedule.sweeps_per_temperature; ++s) sweep(t);
    energy = grid_energy(cur);  // refresh against drift
    out.energy_trace.push_back(energy);
    if (energy < best_energy) {
      best_energy = energy;
      best = cur;
    }
    t *= schedule.cooling;
  }
  if (best_energy < energy) {
    cur = best;
    energy = best_energy;
  }
  for (int s = 0; s < schedule.quench_sweeps; ++s) sweep(0.0);
  energy = grid_energy(cur);
  out.energy_trace.push_back(energy);
  out.final_energy = energy;
  return out;
}

// ---- volume fixing variation ---------------------------------------------------

VolumeFixingResult volume_fixing_variation(const GridPartition& g,
                                           const std::vector<double>& area_shift,
                                           const std::vector<BallSpec>& balls) {
  if (int(area_shift.size()) != g.num_regions)
    throw std::invalid_argument("area shift size must match the region count");
  const double cell = g.h * g.h;

  // Convert to integer cell counts with the largest-remainder rounding so the
  // shifts sum to exactly zero.
  std::vector<std::int64_t> shift_cells(g.num_regions, 0);
  {
    double sum = std::accumulate(area_shift.begin(), area_shift.end(), 0.0);
    if (std::abs(sum) > 1e-9 * cell * g.n)
      throw std::invalid_argument("area shifts must sum to zero");
    std::vector<std::pair<double, int>> rema;
    std::int64_t total = 0;
    for (int k = 0; k < g.num_regions; ++k) {
      double cells = area_shift[k] / cell;
      shift_cells[k] = std::llround(std::floor(cells));
      rema.push_back({cells - std::floor(cells), k});
      total += shift_cells[k];
    }
    std::sort(rema.rbegin(), rema.rend());
    for (int i = 0; total < 0 && i < g.num_regions; ++i, ++total)
      shift_cells[rema[size_t(i)].second]++;
    if (total != 0) {
      // Rounding left a surplus; trim from the smallest remainders.
      for (int i = g.num_regions - 1; total > 0 && i >= 0; --i, --total)
        shift_cells[rema[size_t(i)].second]--;
    }
  }

  // Identify donor balls, check the preconditions.
  std::vector<const BallSpec*> ball_of(g.num_regions, nullptr);
  for (const auto& b : balls) {
    if (b.region < 0 || b.region >= g.num_regions)
      throw std::invalid_argument("ball references an unknown region");
    ball_of[b.region] = &b;
  }
  for (size_t i = 0; i < balls.size(); ++i)
    for (size_t j = i + 1; j < balls.size(); ++j)
      if (dist(balls[i].center, balls[j].center) <=
          balls[i].rho + balls[j].rho)
        throw std::invalid_argument("donor balls must be pairwise disjoint");
  double half = 0.5 * g.n * g.h;
  for (const auto& b : balls)
    if (std::abs(b.center.x) + b.rho > half || std::abs(b.center.y) + b.rho > half)
      throw std::invalid_argument("ball leaves the window");

  GridPartition out = g;
  std::vector<int> freed;  // freed cell indices

  for (int k = 0; k < g.num_regions; ++k) {
    if (shift_cells[k] >= 0) continue;
    const BallSpec* b = ball_of[k];
    if (!b) throw std::invalid_argument("donor region without a ball");
    // Collect region cells inside the ball ordered by distance.
    std::vector<std::pair<double, int>> candidates;
    for (int iy = 0; iy < g.n; ++iy) {
      for (int ix = 0; ix < g.n; ++ix) {
        int id = g.idx(ix, iy);
        if (g.frozen[id]) continue;
        Vec2 c = g.cell_center(ix, iy);
        double d = dist(c, b->center);
        if (d > b->rho) continue;
        if (g.labels[id] == std::uint8_t(k)) candidates.push_back({d, id});
      }
    }
    std::sort(candidates.begin(), candidates.end());
    // Half-density condition: |F_k ∩ B_r| > (1/2) pi r^2 for r up to rho.
    for (double r = 4 * g.h; r <= b->rho + 1e-12; r += 4 * g.h) {
      std::int64_t inside = 0;
      for (const auto& [d, id] : candidates)
        if (d <= r) ++inside;
      if (double(inside) * cell <= 0.5 * kPi * r * r) {
        std::ostringstream os;
        os << "donor ball for region " << k
           << " violates the half-density condition at r = " << r;
        throw std::invalid_argument(os.str());
      }
    }
    std::int64_t need = -shift_cells[k];
    if (std::int64_t(candidates.size()) < need)
      throw std::invalid_argument("donor ball does not contain enough region cells");
    for (std::int64_t i = 0; i < need; ++i) freed.push_back(candidates[size_t(i)].second);
  }

  // Reassign the freed cells as horizontal slices: sort by row, then column,
  // and hand contiguous chunks to the recipients.
  std::sort(freed.begin(), freed.end(), [&](int a, int b) {
    int ay = a / g.n, by = b / g.n;
    if (ay != by) return ay < by;
    return a % g.n < b % g.n;
  });
  size_t cursor = 0;
  VolumeFixingResult res;
  res.applied_shift.assign(g.num_regions, 0.0);
  for (int k = 0; k < g.num_regions; ++k) {
    if (shift_cells[k] <= 0) {
      res.applied_shift[k] = double(shift_cells[k]) * cell;
      continue;
    }
    for (std::int64_t i = 0; i < shift_cells[k]; ++i) {
      if (cursor >= freed.size())
        throw std::logic_error("freed cells exhausted before recipients were served");
      out.labels[freed[cursor++]] = std::uint8_t(k);
      res.applied_shift[k] += cell;
    }
  }
  if (cursor != freed.size())
    throw std::logic_error("freed cells remain after serving all recipients");

  res.delta_perimeter = grid_energy(out) - grid_energy(g);
  double c1 = 2.0 * (g.num_regions * 2.0 + 2.0 * kPi) / kPi;
  double sum = 0.0;
  for (int k = 0; k < g.num_regions; ++k)
    sum += std::sqrt(std::abs(double(shift_cells[k])) * cell);
  res.bound = c1 * sum;
  res.grid = std::move(out);
  return res;
}

// ---- thin slab shift -----------------------------------------------------------

SlabShiftResult thin_slab_volume_shift(const GridPartition& g, int from_label,
                                       int to_label, double a, double epsilon) {
  if (from_label == to_label) throw std::invalid_argument("labels must differ");
  if (g.target_cells[from_label] >= 0 || g.target_cells[to_label] >= 0)
    throw std::invalid_argument("slab shifts apply to unconstrained (infinite) labels");
  SlabShiftResult res;
  res.grid = g;
  if (a == 0.0) return res;
  if (a < 0) return thin_slab_volume_shift(g, to_label, from_label, -a, epsilon);

  // Locate the interface rows: cells of to_label with a from_label cell above
  // or below. Flat means a single row boundary.
  std::vector<std::pair<int, int>> faces;  // (iy of to_label cell, ix)
  for (int iy = 0; iy + 1 < g.n; ++iy) {
    for (int ix = 0; ix < g.n; ++ix) {
      std::uint8_t lo = g.labels[g.idx(ix, iy)];
      std::uint8_t hi = g.labels[g.idx(ix, iy + 1)];
      bool pair = (lo == to_label && hi == from_label) ||
                  (lo == from_label && hi == to_label);
      if (pair) faces.push_back({iy, ix});
    }
  }
  if (faces.empty())
    throw std::invalid_argument("the two labels share no horizontal interface");
  int row = faces.front().first;
  for (const auto& [iy, ix] : faces)
    if (iy != row)
      throw std::invalid_argument("interface between the labels is not flat");

  // Which side is `from`? The donor loses a slab: relabel rows of from_label
  // adjacent to the interface into to_label, across the free width.
  bool from_above = g.labels[g.idx(faces.front().second, row + 1)] == from_label;

  int band = 0;
  while (band < g.n && g.frozen[g.idx(band, row)]) ++band;
  int free_lo = band, free_hi = g.n - band;  // frozen band is symmetric
  double width = (free_hi - free_lo) * g.h;
  int rows_needed = int(std::ceil(a / (width * g.h)));
  double thickness = rows_needed * g.h;
  // The two jogs at the slab ends cost about twice the thickness.
  if (2.0 * thickness > epsilon) {
    double required_width = 2.0 * a / epsilon;
    std::ostringstream os;
    os << "window too small: transferring area " << a << " within budget " << epsilon
       << " needs free width >= " << required_width << ", have " << width;
    throw std::invalid_argument(os.str());
  }

  for (int r = 0; r < rows_needed; ++r) {
    int iy = from_above ? row + 1 + r : row - r;
    if (iy < 0 || iy >= g.n) throw std::invalid_argument("slab leaves the window");
    for (int ix = free_lo; ix < free_hi; ++ix) {
      int id = g.idx(ix, iy);
      if (res.grid.frozen[id]) continue;
      if (res.grid.labels[id] != std::uint8_t(from_label))
        throw std::invalid_argument("slab hits cells of a third label");
      res.grid.labels[id] = std::uint8_t(to_label);
    }
  }
  res.slab_thickness = thickness;
  res.delta_perimeter = grid_energy(res.grid) - grid_energy(g);
  return res;
}

}  // namespace isopart
