#include "jetpinn/training.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <stdexcept>

#include "jetpinn/parallel.hpp"

namespace jetpinn {

void adam_step(AdamState& state, std::span<const double> grad, std::span<double> params,
               double lr) {
  if (grad.size() != params.size() || state.m.size() != params.size())
    throw std::invalid_argument("adam_step: length mismatch");
  state.step += 1;
  const double b1 = state.beta1, b2 = state.beta2;
  const double bc1 = 1.0 - std::pow(b1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(b2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grad[i];
    if (!std::isfinite(g)) throw std::runtime_error("adam_step: non-finite gradient");
    state.m[i] = b1 * state.m[i] + (1.0 - b1) * g;
    state.v[i] = b2 * state.v[i] + (1.0 - b2) * g * g;
    const double mhat = state.m[i] / bc1;
    const double vhat = state.v[i] / bc2;
    params[i] -= lr * mhat / (std::sqrt(vhat) + state.eps);
  }
}

namespace {

constexpr int kShardTarget = 32;

}  // namespace

LossGradEngine::LossGradEngine(const ProblemSpec& spec, PreparedData data,
                               const LossWeights& weights, const LayerSpec& spec1,
                               const LayerSpec& spec2, int threads, bool deterministic)
    : spec_(spec),
      data_(std::move(data)),
      weights_(weights),
      spec1_(spec1),
      spec2_(spec2),
      threads_(threads),
      deterministic_(deterministic) {
  spec1_.validate();
  spec2_.validate();
  offset2_ = spec1_.param_count();
  n_params_ = static_cast<std::size_t>(offset2_ + spec2_.param_count());

  const std::size_t n_pts = data_.points.size();
  n_shards_ = static_cast<int>(std::min<std::size_t>(kShardTarget, std::max<std::size_t>(n_pts, 1)));
  shard_begin_.resize(static_cast<std::size_t>(n_shards_) + 1);
  for (int s = 0; s <= n_shards_; ++s)
    shard_begin_[static_cast<std::size_t>(s)] = n_pts * static_cast<std::size_t>(s) /
                                                static_cast<std::size_t>(n_shards_);
  shard_grad_.resize(static_cast<std::size_t>(n_shards_));
  shard_sums_.resize(static_cast<std::size_t>(n_shards_));
  int workers = threads_ > 0 ? threads_ : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  worker_tapes_.resize(static_cast<std::size_t>(std::min(workers, n_shards_)));
}

LossBreakdown LossGradEngine::evaluate(std::span<const double> theta, std::span<double> grad) {
  const bool need_grad = !grad.empty();
  if (need_grad && grad.size() != n_params_)
    throw std::invalid_argument("LossGradEngine::evaluate: gradient length mismatch");

  // Free-order reduction path for the non-deterministic mode.
  std::mutex merge_mu;

  auto run_shard = [&](int shard, int worker) {
    Tape& tape = worker_tapes_[static_cast<std::size_t>(worker)];
    tape.bind(theta);
    auto& sums = shard_sums_[static_cast<std::size_t>(shard)];
    sums.fill(0.0);
    std::vector<double>* gbuf = nullptr;
    if (need_grad) {
      auto& sg = shard_grad_[static_cast<std::size_t>(shard)];
      sg.assign(n_params_, 0.0);
      gbuf = &sg;
    }
    std::vector<Ex<TapeAlg>> res;
    for (std::size_t k = shard_begin_[static_cast<std::size_t>(shard)];
         k < shard_begin_[static_cast<std::size_t>(shard) + 1]; ++k) {
      const TrainPoint& tp = data_.points[k];
      tape.clear();
      TapeAlg alg{&tape};
      auto fields = [&](int sub) {
        const LayerSpec& ls = (sub == 1) ? spec1_ : spec2_;
        const std::int32_t base = (sub == 1) ? 0 : static_cast<std::int32_t>(offset2_);
        std::vector<NodeId> ids = forward_tape(ls, base, tape, tp.sp.p);
        std::vector<Ex<TapeAlg>> f;
        f.reserve(ids.size());
        for (NodeId id : ids) f.push_back({&alg, id});
        return make_fields(spec_.kind, tp.subdomain == 0 ? sub : tp.subdomain, std::move(f));
      };
      point_residuals(alg, spec_, tp, fields, res);
      const double w_eff =
          weights_[tp.term] / static_cast<double>(data_.count_of(tp.term));
      double ssq = 0.0;
      if (need_grad) tape.begin_adjoint();
      for (const auto& r : res) {
        const double v = tape.value(r.s);
        ssq += v * v;
        if (need_grad) tape.seed_value(r.s, 2.0 * w_eff * v);
      }
      sums[static_cast<std::size_t>(tp.term)] += ssq;
      if (need_grad) tape.backward_into(*gbuf);
    }
    if (need_grad && !deterministic_) {
      std::lock_guard<std::mutex> lk(merge_mu);
      for (std::size_t i = 0; i < n_params_; ++i) grad[i] += (*gbuf)[i];
      gbuf->clear();
    }
  };

  parallel_shards(n_shards_, static_cast<int>(worker_tapes_.size()), run_shard);

  LossBreakdown bd;
  for (int s = 0; s < n_shards_; ++s) {
    const auto& sums = shard_sums_[static_cast<std::size_t>(s)];
    for (int t = 0; t < kTermCount; ++t) bd.term[static_cast<std::size_t>(t)] += sums[static_cast<std::size_t>(t)];
    if (need_grad && deterministic_) {
      const auto& sg = shard_grad_[static_cast<std::size_t>(s)];
      for (std::size_t i = 0; i < n_params_; ++i) grad[i] += sg[i];
    }
  }
  for (int t = 0; t < kTermCount; ++t) {
    const int m = data_.count[static_cast<std::size_t>(t)];
    if (m > 0) bd.term[static_cast<std::size_t>(t)] /= m;
    bd.total += weights_.w[static_cast<std::size_t>(t)] * bd.term[static_cast<std::size_t>(t)];
  }
  return bd;
}

TrainResult train(const ProblemSpec& spec, const Geometry& geom, const SamplingPlan& plan,
                  const std::vector<int>& hidden, const LossWeights& weights,
                  const TrainConfig& config) {
  spec.validate();
  if (hidden.empty()) throw std::invalid_argument("train: need at least one hidden layer");
  const auto [w1, w2] = output_layout(spec.kind);
  LayerSpec ls1, ls2;
  ls1.widths.push_back(3);
  for (int h : hidden) ls1.widths.push_back(h);
  ls2.widths = ls1.widths;
  ls1.widths.push_back(w1);
  ls2.widths.push_back(w2);

  TrainResult result;
  result.net1 = init_network(ls1, config.seed);
  result.net2 = init_network(ls2, config.seed + 1);

  SampleSet samples = generate_samples(geom, plan);
  PreparedData data = prepare_data(spec, samples);
  LossGradEngine engine(spec, std::move(data), weights, ls1, ls2, config.threads,
                        config.deterministic);

  std::vector<double> theta(engine.n_params());
  std::copy(result.net1.params.begin(), result.net1.params.end(), theta.begin());
  std::copy(result.net2.params.begin(), result.net2.params.end(),
            theta.begin() + engine.offset2());

  AdamState adam(theta.size(), config.beta1, config.beta2, config.eps);
  std::vector<double> grad(theta.size());

  for (long epoch = 0; epoch < config.epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    LossBreakdown bd = engine.evaluate(theta, grad);
    if (epoch % config.log_interval == 0) result.history.push_back({epoch, bd});
    if (!std::isfinite(bd.total) || bd.total > config.abort_loss) {
      result.aborted = true;
      result.abort_reason = "loss divergence at epoch " + std::to_string(epoch);
      break;
    }
    try {
      adam_step(adam, grad, theta, config.lr);
    } catch (const std::runtime_error& e) {
      result.aborted = true;
      result.abort_reason = std::string(e.what()) + " at epoch " + std::to_string(epoch);
      break;
    }
  }
  if (!result.aborted) {
    LossBreakdown bd = engine.evaluate(theta, {});
    result.history.push_back({config.epochs, bd});
  }

  std::copy(theta.begin(), theta.begin() + engine.offset2(), result.net1.params.begin());
  std::copy(theta.begin() + engine.offset2(), theta.end(), result.net2.params.begin());
  return result;
}

void write_history_csv(const std::vector<HistoryRow>& history, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_history_csv: cannot open " + path);
  f << "epoch";
  for (int t = 0; t < kTermCount; ++t) f << ',' << term_name(static_cast<Term>(t));
  f << ",total\n";
  char buf[64];
  for (const auto& row : history) {
    f << row.epoch;
    for (int t = 0; t < kTermCount; ++t) {
      std::snprintf(buf, sizeof(buf), ",%.17g", row.loss.term[static_cast<std::size_t>(t)]);
      f << buf;
    }
    std::snprintf(buf, sizeof(buf), ",%.17g\n", row.loss.total);
    f << buf;
  }
}

}  // namespace jetpinn
