#pragma once
#include <optional>
#include <string>
#include <vector>

#include "jetpinn/evaluate.hpp"
#include "jetpinn/loss.hpp"
#include "jetpinn/physics.hpp"
#include "jetpinn/sampling.hpp"
#include "jetpinn/training.hpp"

namespace jetpinn {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  ProblemSpec problem;
  SamplingPlan plan;
  std::vector<int> hidden = {50, 50, 50};
  std::optional<std::uint64_t> net_seed;       // defaults to the run seed
  std::optional<std::uint64_t> sampling_seed;  // defaults to the run seed
  TrainConfig train;
  bool weights_auto = true;
  LossWeights weight_overrides;                 // entries flagged below
  std::array<bool, kTermCount> weight_is_set{};
  EvalGrid eval;
  std::string outdir = "out";
  // sweep section
  std::vector<SamplingPlan> sweep_rows;
  std::vector<std::uint64_t> sweep_seeds = {1};

  LossWeights resolve_weights() const;
  // Applies the run seed to unset sampling/network seeds.
  void apply_run_seed(std::uint64_t seed);
};

// Flat sectioned key-value file; unknown keys or malformed values fail with a
// line-numbered ConfigError.
ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);

}  // namespace jetpinn
