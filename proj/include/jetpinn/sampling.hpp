#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "jetpinn/geometry.hpp"

namespace jetpinn {

// Count patterns follow the table notation: interior n_x*n_y*n_t per
// subdomain, boundary n_edge per edge * 4 edges * n_t, interface n_theta *
// n_t, initial n_x*n_y. Interior/initial counts are Monte-Carlo budgets by
// default; `grid` mode places clipped tensor grids instead.
struct SamplingPlan {
  int interior_nx = 10, interior_ny = 10, interior_nt = 5;
  int boundary_nedge = 4, boundary_nt = 5;
  int interface_ntheta = 4, interface_nt = 5;
  int initial_nx = 4, initial_ny = 4;
  std::vector<std::pair<double, double>> observation;  // fixed (x, y) in subdomain 2
  bool grid_mode = false;
  std::uint64_t seed = 1;

  int interior_count() const { return interior_nx * interior_ny * interior_nt; }
  int boundary_count() const { return boundary_nedge * 4 * boundary_nt; }
  int interface_count() const { return interface_ntheta * interface_nt; }
  int initial_count() const { return initial_nx * initial_ny; }
};

struct SamplePoint {
  SpaceTimePoint p;
  double nx = 0.0, ny = 0.0;  // interface unit normal n1 (into subdomain 2)
  int edge = -1;              // boundary edge id: 0 bottom, 1 right, 2 top, 3 left
};

struct SampleSet {
  std::vector<SamplePoint> interior[2];
  std::vector<SamplePoint> boundary;  // outer box boundary (subdomain 1 only)
  std::vector<SamplePoint> interface_pts;
  std::vector<SamplePoint> initial[2];
  std::vector<SamplePoint> observation;  // (x, y) replicated over the time grid
};

SampleSet generate_samples(const Geometry& geom, const SamplingPlan& plan);

// Columnar text dump (term label, x, y, t, nx, ny, edge id); import
// reproduces the set exactly.
void export_samples(const SampleSet& s, const std::string& path);
SampleSet import_samples(const std::string& path);

}  // namespace jetpinn
