#include "jetpinn/sampling.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "jetpinn/rng.hpp"

namespace jetpinn {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Equispaced time levels with both endpoints included.
std::vector<double> time_levels(const Geometry& geom, int nt) {
  std::vector<double> t(static_cast<std::size_t>(nt));
  if (nt == 1) {
    t[0] = 0.0;
    return t;
  }
  for (int j = 0; j < nt; ++j) t[static_cast<std::size_t>(j)] = geom.t_end * j / (nt - 1);
  return t;
}

// Rejection-sample `count` interior points of the requested subdomain; points
// within the tolerance band of the circle are ambiguous and redrawn.
std::vector<SamplePoint> sample_in_subdomain(const Geometry& geom, int sub, int count,
                                             bool at_t0, Rng& rng, std::uint64_t base_seed) {
  std::vector<SamplePoint> pts;
  pts.reserve(static_cast<std::size_t>(count));
  long attempts = 0;
  const long max_attempts = 10000L * (count + 16);
  std::uint64_t retry_seed = base_seed;
  Rng* gen = &rng;
  Rng retry_rng(0);
  while (static_cast<int>(pts.size()) < count) {
    if (++attempts > max_attempts) {
      retry_seed += 1;
      std::cerr << "jetpinn: warning: rejection sampling stalled, reseeding with "
                << retry_seed << "\n";
      retry_rng = Rng(retry_seed);
      gen = &retry_rng;
      attempts = 0;
    }
    SamplePoint sp;
    sp.p.x = gen->uniform(geom.box_lo, geom.box_hi);
    sp.p.y = gen->uniform(geom.box_lo, geom.box_hi);
    sp.p.t = at_t0 ? 0.0 : gen->uniform(0.0, geom.t_end);
    if (classify(geom, sp.p) != static_cast<Classify>(sub)) continue;
    pts.push_back(sp);
  }
  return pts;
}

// Clipped tensor grid for the comparison mode: cell-centered n_x*n_y (*n_t)
// lattice, keeping points of the requested subdomain. Counts are then grids,
// not exact budgets.
std::vector<SamplePoint> grid_in_subdomain(const Geometry& geom, int sub, int nx, int ny, int nt,
                                           bool at_t0) {
  std::vector<SamplePoint> pts;
  const double w = geom.box_hi - geom.box_lo;
  const auto ts = at_t0 ? std::vector<double>{0.0} : time_levels(geom, nt);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      SamplePoint sp;
      sp.p.x = geom.box_lo + w * (i + 0.5) / nx;
      sp.p.y = geom.box_lo + w * (j + 0.5) / ny;
      if (classify(geom, sp.p) != static_cast<Classify>(sub)) continue;
      for (double t : ts) {
        sp.p.t = t;
        pts.push_back(sp);
      }
    }
  return pts;
}

}  // namespace

SampleSet generate_samples(const Geometry& geom, const SamplingPlan& plan) {
  SampleSet out;
  Rng rng(plan.seed);

  for (int sub = 1; sub <= 2; ++sub) {
    auto& dst = out.interior[sub - 1];
    if (plan.grid_mode) {
      dst = grid_in_subdomain(geom, sub, plan.interior_nx, plan.interior_ny, plan.interior_nt,
                              false);
    } else {
      dst = sample_in_subdomain(geom, sub, plan.interior_count(), false, rng, plan.seed);
    }
  }

  // Boundary: equispaced per edge, corners excluded; edges 0..3 counter-
  // clockwise from the bottom.
  const double w = geom.box_hi - geom.box_lo;
  const auto bts = time_levels(geom, plan.boundary_nt);
  for (int edge = 0; edge < 4; ++edge) {
    for (int k = 0; k < plan.boundary_nedge; ++k) {
      const double s = geom.box_lo + w * (k + 1) / (plan.boundary_nedge + 1);
      SamplePoint sp;
      sp.edge = edge;
      switch (edge) {
        case 0: sp.p.x = s; sp.p.y = geom.box_lo; break;
        case 1: sp.p.x = geom.box_hi; sp.p.y = s; break;
        case 2: sp.p.x = s; sp.p.y = geom.box_hi; break;
        case 3: sp.p.x = geom.box_lo; sp.p.y = s; break;
      }
      for (double t : bts) {
        sp.p.t = t;
        out.boundary.push_back(sp);
      }
    }
  }

  const auto its = time_levels(geom, plan.interface_nt);
  for (int k = 0; k < plan.interface_ntheta; ++k) {
    const double th = 2.0 * kPi * k / plan.interface_ntheta;
    SamplePoint sp;
    sp.p.x = geom.cx + geom.radius * std::cos(th);
    sp.p.y = geom.cy + geom.radius * std::sin(th);
    interface_normal(geom, sp.p.x, sp.p.y, sp.nx, sp.ny);
    for (double t : its) {
      sp.p.t = t;
      out.interface_pts.push_back(sp);
    }
  }

  for (int sub = 1; sub <= 2; ++sub) {
    auto& dst = out.initial[sub - 1];
    if (plan.grid_mode) {
      dst = grid_in_subdomain(geom, sub, plan.initial_nx, plan.initial_ny, 1, true);
    } else {
      dst = sample_in_subdomain(geom, sub, plan.initial_count(), true, rng, plan.seed + 7);
    }
  }

  // Observation points ride the interior time resolution.
  const auto ots = time_levels(geom, plan.interior_nt);
  for (const auto& [ox, oy] : plan.observation) {
    SamplePoint sp;
    sp.p.x = ox;
    sp.p.y = oy;
    for (double t : ots) {
      sp.p.t = t;
      out.observation.push_back(sp);
    }
  }
  return out;
}

namespace {

void dump(std::ofstream& f, const char* label, const std::vector<SamplePoint>& pts) {
  char buf[160];
  for (const auto& sp : pts) {
    std::snprintf(buf, sizeof(buf), "%s %.17g %.17g %.17g %.17g %.17g %d\n", label, sp.p.x, sp.p.y,
                  sp.p.t, sp.nx, sp.ny, sp.edge);
    f << buf;
  }
}

}  // namespace

void export_samples(const SampleSet& s, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("export_samples: cannot open " + path);
  f << "# term x y t nx ny edge\n";
  dump(f, "interior1", s.interior[0]);
  dump(f, "interior2", s.interior[1]);
  dump(f, "boundary1", s.boundary);
  dump(f, "interface", s.interface_pts);
  dump(f, "initial1", s.initial[0]);
  dump(f, "initial2", s.initial[1]);
  dump(f, "observation", s.observation);
}

SampleSet import_samples(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("import_samples: cannot open " + path);
  SampleSet out;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string label;
    SamplePoint sp;
    ls >> label >> sp.p.x >> sp.p.y >> sp.p.t >> sp.nx >> sp.ny >> sp.edge;
    if (!ls) throw std::runtime_error("import_samples: bad line: " + line);
    if (label == "interior1") out.interior[0].push_back(sp);
    else if (label == "interior2") out.interior[1].push_back(sp);
    else if (label == "boundary1") out.boundary.push_back(sp);
    else if (label == "interface") out.interface_pts.push_back(sp);
    else if (label == "initial1") out.initial[0].push_back(sp);
    else if (label == "initial2") out.initial[1].push_back(sp);
    else if (label == "observation") out.observation.push_back(sp);
    else throw std::runtime_error("import_samples: unknown term label: " + label);
  }
  return out;
}

}  // namespace jetpinn
