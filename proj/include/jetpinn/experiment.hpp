#pragma once
#include <string>
#include <vector>

#include "jetpinn/config.hpp"
#include "jetpinn/evaluate.hpp"
#include "jetpinn/training.hpp"

namespace jetpinn {

// The five pressure observation points in subdomain 2: a ring of four at
// distance 0.5 from the disk center at 45-degree diagonals, plus the center.
std::vector<std::pair<double, double>> observation_points_default();

struct RunArtifacts {
  TrainResult trained;
  ErrorReport report;
};

// One experiment: sample, train, evaluate; optionally writes history CSV,
// checkpoints, and a report into cfg.outdir.
RunArtifacts run_experiment(const ExperimentConfig& cfg, bool write_outputs);

struct SweepRowResult {
  ProblemKind problem;
  double rho2_or_rhos = 0.0;
  double mu2_or_E = 0.0;
  int M_L = 0, M_B = 0, M_Gamma = 0, M_I = 0;
  std::uint64_t seed = 0;
  double approx_error = 0.0;  // NaN when the run failed
  double loss_error = 0.0;
  double wall_seconds = 0.0;
};

// One row per (plan, seed); failed runs are recorded with NaN errors and the
// sweep continues.
std::vector<SweepRowResult> run_sweep(const ExperimentConfig& cfg);

void write_sweep_csv(const std::vector<SweepRowResult>& rows, const std::string& path);
std::vector<SweepRowResult> read_sweep_csv(const std::string& path);

// Columnar grid dump of exact fields, network fields (when nets are given),
// and interior residual components, for external plotting.
void dump_fields_csv(const ProblemSpec& spec, const Geometry& geom, const Network* n1,
                     const Network* n2, const EvalGrid& grid, const std::string& path);

}  // namespace jetpinn
