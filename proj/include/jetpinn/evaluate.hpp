#pragma once
#include <span>
#include <string>
#include <vector>

#include "jetpinn/loss.hpp"
#include "jetpinn/network.hpp"
#include "jetpinn/physics.hpp"

namespace jetpinn {

struct FieldError {
  std::string name;
  double rel_l2 = 0.0;
  double num = 0.0;  // sum of squared errors over the grid
  double den = 0.0;  // sum of squared exact values
};

struct ErrorReport {
  std::vector<FieldError> fields;
  double combined = 0.0;  // sqrt(sum num / sum den) over all fields
  LossBreakdown final_loss;
  double wall_seconds = 0.0;
  std::uint64_t seed = 0;
};

struct EvalGrid {
  int nx = 61, ny = 61, nt = 11;
};

// Relative L2 errors of network fields against the exact solution on a
// uniform space-time grid, points classified per subdomain with the interface
// band excluded. Independent of the training sample sets.
ErrorReport evaluate_error(const ProblemSpec& spec, const Geometry& geom, const Network& n1,
                           const Network& n2, const EvalGrid& grid);

// Same evaluation against an arbitrary per-subdomain value provider.
using ValueProvider = std::function<std::vector<double>(int subdomain, const SpaceTimePoint&)>;
ErrorReport evaluate_error_values(const ProblemSpec& spec, const Geometry& geom,
                                  const ValueProvider& provider, const EvalGrid& grid);

// Names of the reported fields, subdomain-qualified, in report order.
std::vector<std::string> error_field_names(ProblemKind kind);

// Least-squares slope of log(error) against log(M), negated: errors ~ M^-alpha.
double fit_rate(std::span<const double> sizes, std::span<const double> errors);

}  // namespace jetpinn
