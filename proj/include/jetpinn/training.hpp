#pragma once
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "jetpinn/loss.hpp"
#include "jetpinn/network.hpp"
#include "jetpinn/sampling.hpp"

namespace jetpinn {

struct TrainConfig {
  double lr = 1e-3;
  long epochs = 50000;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  std::uint64_t seed = 1;
  long log_interval = 100;
  int threads = 0;  // 0 = hardware concurrency
  bool deterministic = true;
  double abort_loss = 1e12;
};

struct AdamState {
  std::vector<double> m, v;
  long step = 0;
  double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;

  explicit AdamState(std::size_t n = 0, double b1 = 0.9, double b2 = 0.999, double e = 1e-8)
      : m(n, 0.0), v(n, 0.0), beta1(b1), beta2(b2), eps(e) {}
};

// Standard bias-corrected Adam update, in place.
void adam_step(AdamState& state, std::span<const double> grad, std::span<double> params,
               double lr);

struct HistoryRow {
  long epoch;
  LossBreakdown loss;
};

struct TrainResult {
  Network net1, net2;
  std::vector<HistoryRow> history;
  bool aborted = false;
  std::string abort_reason;
};

// Full-batch loss/gradient engine over prepared sample data. Gradients are
// accumulated per fixed shard and reduced in shard order, so results are
// byte-identical for a given seed regardless of thread count.
class LossGradEngine {
public:
  LossGradEngine(const ProblemSpec& spec, PreparedData data, const LossWeights& weights,
                 const LayerSpec& spec1, const LayerSpec& spec2, int threads,
                 bool deterministic);

  // Evaluates the breakdown at theta; when grad is nonempty (size n_params),
  // also accumulates dF/dtheta into it (caller zeroes).
  LossBreakdown evaluate(std::span<const double> theta, std::span<double> grad);

  std::size_t n_params() const { return n_params_; }
  std::int64_t offset2() const { return offset2_; }
  const LayerSpec& layer_spec(int sub) const { return sub == 1 ? spec1_ : spec2_; }
  const LossWeights& weights() const { return weights_; }
  const PreparedData& data() const { return data_; }

private:
  ProblemSpec spec_;
  PreparedData data_;
  LossWeights weights_;
  LayerSpec spec1_, spec2_;
  std::size_t n_params_;
  std::int64_t offset2_;
  int threads_;
  bool deterministic_;
  int n_shards_;
  std::vector<std::size_t> shard_begin_;  // n_shards + 1 offsets into points
  std::vector<std::vector<double>> shard_grad_;
  std::vector<std::array<double, kTermCount>> shard_sums_;
  std::vector<Tape> worker_tapes_;
};

TrainResult train(const ProblemSpec& spec, const Geometry& geom, const SamplingPlan& plan,
                  const std::vector<int>& hidden, const LossWeights& weights,
                  const TrainConfig& config);

// History CSV: epoch, each term, weighted total; deterministic formatting.
void write_history_csv(const std::vector<HistoryRow>& history, const std::string& path);

}  // namespace jetpinn
