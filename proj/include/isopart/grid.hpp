#pragma once

#include <cstdint>
#include <vector>

#include "isopart/network.hpp"

// Pixel-lattice oracle: a labeled square grid with a frozen boundary band,
// an anisotropy-corrected interface-length estimator, Metropolis annealing
// over area-preserving moves, and the explicit volume-moving constructions.

namespace isopart {

struct GridPartition {
  int n = 0;       // cells per side
  double h = 0.0;  // cell size; the window is the square [-n*h/2, n*h/2]^2
  std::vector<std::uint8_t> labels;        // n*n, row-major, y-major rows
  std::vector<std::uint8_t> frozen;        // 1 = never changes
  std::vector<std::int64_t> target_cells;  // per region; -1 = unconstrained
  int num_regions = 0;

  int idx(int ix, int iy) const { return iy * n + ix; }
  Vec2 cell_center(int ix, int iy) const {
    double half = 0.5 * n * h;
    return {-half + (ix + 0.5) * h, -half + (iy + 0.5) * h};
  }
  std::int64_t count_label(int k) const;
};

// Interface length estimate: unlike-label cell pairs counted over axis,
// diagonal and knight-move offsets with weights calibrated so straight lines
// at 0, 22.5 and 45 degrees measure their true length exactly.
double grid_energy(const GridPartition& g);

// Energy change of setting cell (ix,iy) to `label` (no bounds of frozenness
// checked). Used by the annealer; exposed for tests.
double grid_energy_delta(const GridPartition& g, int ix, int iy, std::uint8_t label);

// Rasterize an arc partition onto an n x n grid covering the square of the
// given half side: labels from point location, a frozen band of `band` cells,
// finite regions constrained to their rasterized cell counts.
GridPartition rasterize(const ArcPartition& p, int n, double half_side, int band = 3);

// Exact interface length of an arc partition inside the square window of the
// given half side (arcs must lie inside; rays and lines are clipped).
double window_energy_square(const ArcPartition& p, double half_side);

struct AnnealSchedule {
  double t0 = 0.0;           // initial temperature (0: pick from h)
  double cooling = 0.85;     // geometric factor per temperature step
  int temperatures = 24;
  int sweeps_per_temperature = 30;  // one sweep = n*n proposals
  int quench_sweeps = 60;           // zero-temperature polish
};

struct AnnealResult {
  GridPartition grid;
  std::vector<double> energy_trace;  // energy after each temperature block
  double initial_energy = 0.0;
  double final_energy = 0.0;
  std::int64_t accepted = 0;
  std::int64_t proposed = 0;
};

// Metropolis over area-preserving moves: swap the labels of two neighboring
// cells when a constrained label is involved, or flip a cell between
// unconstrained labels. Constrained cell counts are conserved exactly at
// every step. Deterministic for fixed seed; the returned grid never has
// higher energy than the input.
AnnealResult anneal(const GridPartition& g, const AnnealSchedule& schedule,
                    std::uint64_t seed);

struct BallSpec {
  Vec2 center;
  double rho = 0.0;
  int region = -1;  // region the ball belongs to (donor candidate)
};

struct VolumeFixingResult {
  GridPartition grid;
  double delta_perimeter = 0.0;
  double bound = 0.0;  // 2 (N w1 + 2 w2) / w2 * sum |a_j|^(1/2), d = 2
  std::vector<double> applied_shift;  // realized area change per region
};

// Move prescribed areas between regions: donors lose |a_k| inside their
// balls (nearest cells first), and the freed cells are reassigned to the
// recipients as horizontal slices. Requires sum(a) = 0, donors to satisfy
// a_k >= -|F_k ∩ B_rho|, the half-density condition inside each donor ball,
// and pairwise disjoint balls inside the free window.
VolumeFixingResult volume_fixing_variation(const GridPartition& g,
                                           const std::vector<double>& area_shift,
                                           const std::vector<BallSpec>& balls);

struct SlabShiftResult {
  GridPartition grid;
  double delta_perimeter = 0.0;
  double slab_thickness = 0.0;
};

// Transfer area `a` across the flat interface between two infinite labels by
// relabeling a long thin slab. The measured perimeter change stays within
// `epsilon`; errors out (reporting the required width) when the window is too
// narrow for the requested budget.
SlabShiftResult thin_slab_volume_shift(const GridPartition& g, int from_label,
                                       int to_label, double a, double epsilon);

}  // namespace isopart
