#include "jetpinn/network.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "jetpinn/rng.hpp"

namespace jetpinn {

void LayerSpec::validate() const {
  if (widths.size() < 2) throw std::invalid_argument("LayerSpec: need at least one layer");
  if (widths.front() != 3) throw std::invalid_argument("LayerSpec: input width must be 3");
  for (int w : widths)
    if (w <= 0) throw std::invalid_argument("LayerSpec: zero-width layer");
}

std::int64_t LayerSpec::param_count() const {
  std::int64_t n = 0;
  for (std::size_t l = 0; l + 1 < widths.size(); ++l)
    n += static_cast<std::int64_t>(widths[l + 1]) * (widths[l] + 1);
  return n;
}

std::int64_t LayerSpec::layer_offset(int layer) const {
  std::int64_t off = 0;
  for (int l = 0; l < layer; ++l)
    off += static_cast<std::int64_t>(widths[l + 1]) * (widths[l] + 1);
  return off;
}

Network init_network(const LayerSpec& spec, std::uint64_t seed) {
  spec.validate();
  Network net;
  net.spec = spec;
  net.seed = seed;
  net.params.assign(static_cast<std::size_t>(spec.param_count()), 0.0);
  Rng rng(seed);
  std::size_t k = 0;
  for (int l = 0; l + 1 < static_cast<int>(spec.widths.size()); ++l) {
    const int n_in = spec.widths[l], n_out = spec.widths[l + 1];
    const double bound = std::sqrt(6.0 / (n_in + n_out));
    for (int j = 0; j < n_out; ++j) {
      for (int i = 0; i < n_in; ++i) net.params[k++] = rng.uniform(-bound, bound);
      net.params[k++] = 0.0;  // bias
    }
  }
  return net;
}

namespace {

void check_layer_finite(double v, int layer) {
  if (!std::isfinite(v)) {
    throw std::overflow_error("forward: non-finite activation in layer " + std::to_string(layer));
  }
}

}  // namespace

std::vector<Jet2> forward_jet(const LayerSpec& spec, std::span<const double> params,
                              const SpaceTimePoint& p) {
  std::vector<Jet2> cur = {jd::var(p.x, 0), jd::var(p.y, 1), jd::var(p.t, 2)};
  std::vector<Jet2> next;
  std::size_t k = 0;
  const int L = spec.layer_count();
  for (int l = 0; l < L; ++l) {
    const int n_in = spec.widths[l], n_out = spec.widths[l + 1];
    next.assign(static_cast<std::size_t>(n_out), Jet2{});
    for (int j = 0; j < n_out; ++j) {
      Jet2 acc;
      for (int i = 0; i < n_in; ++i) {
        const double w = params[k++];
        const Jet2& x = cur[static_cast<std::size_t>(i)];
        acc.v += w * x.v;
        for (int d = 0; d < 3; ++d) acc.g[d] += w * x.g[d];
        for (int s = 0; s < 6; ++s) acc.h[s] += w * x.h[s];
      }
      acc.v += params[k++];  // bias
      if (l + 1 < L) acc = jd::unary(UnaryOp::Tanh, acc);
      check_layer_finite(acc.v, l + 1);
      next[static_cast<std::size_t>(j)] = acc;
    }
    cur.swap(next);
  }
  return cur;
}

std::vector<double> forward_values(const LayerSpec& spec, std::span<const double> params,
                                   const SpaceTimePoint& p) {
  std::vector<double> cur = {p.x, p.y, p.t};
  std::vector<double> next;
  std::size_t k = 0;
  const int L = spec.layer_count();
  for (int l = 0; l < L; ++l) {
    const int n_in = spec.widths[l], n_out = spec.widths[l + 1];
    next.assign(static_cast<std::size_t>(n_out), 0.0);
    for (int j = 0; j < n_out; ++j) {
      double acc = 0.0;
      for (int i = 0; i < n_in; ++i) acc += params[k++] * cur[static_cast<std::size_t>(i)];
      acc += params[k++];
      if (l + 1 < L) acc = std::tanh(acc);
      check_layer_finite(acc, l + 1);
      next[static_cast<std::size_t>(j)] = acc;
    }
    cur.swap(next);
  }
  return cur;
}

std::vector<NodeId> forward_tape(const LayerSpec& spec, std::int32_t slot_base, Tape& tape,
                                 const SpaceTimePoint& p) {
  NodeId first = tape.input_var(p.x, 0);
  tape.input_var(p.y, 1);
  tape.input_var(p.t, 2);
  std::int32_t count = 3;
  std::int64_t slot = slot_base;
  const int L = spec.layer_count();
  for (int l = 0; l < L; ++l) {
    const int n_in = spec.widths[l], n_out = spec.widths[l + 1];
    NodeId rows_first = -1;
    for (int j = 0; j < n_out; ++j) {
      NodeId id = tape.affine_row(first, count, static_cast<std::int32_t>(slot));
      if (j == 0) rows_first = id;
      slot += n_in + 1;
    }
    if (l + 1 < L) {
      NodeId act_first = -1;
      for (int j = 0; j < n_out; ++j) {
        NodeId id = tape.tanh_(rows_first + j);
        if (j == 0) act_first = id;
      }
      first = act_first;
    } else {
      first = rows_first;
    }
    count = n_out;
    check_layer_finite(tape.value(first), l + 1);
  }
  std::vector<NodeId> out(static_cast<std::size_t>(spec.output_width()));
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = first + static_cast<NodeId>(j);
  return out;
}

void save_checkpoint(const Network& net, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("save_checkpoint: cannot open " + path);
  f << "jetpinn-checkpoint v1\n";
  f << "widths";
  for (int w : net.spec.widths) f << ' ' << w;
  f << "\nseed " << net.seed << "\nparams " << net.params.size() << "\n";
  char buf[40];
  for (double v : net.params) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", v);
    f << buf;
  }
  if (!f) throw std::runtime_error("save_checkpoint: write failed for " + path);
}

Network load_checkpoint(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("load_checkpoint: cannot open " + path);
  std::string line;
  std::getline(f, line);
  if (line != "jetpinn-checkpoint v1")
    throw std::runtime_error("load_checkpoint: bad header in " + path);
  Network net;
  std::string word;
  f >> word;
  if (word != "widths") throw std::runtime_error("load_checkpoint: expected widths");
  std::getline(f, line);
  std::istringstream ws(line);
  int w;
  while (ws >> w) net.spec.widths.push_back(w);
  f >> word >> net.seed;
  if (word != "seed") throw std::runtime_error("load_checkpoint: expected seed");
  std::size_t n;
  f >> word >> n;
  if (word != "params") throw std::runtime_error("load_checkpoint: expected params");
  net.params.resize(n);
  for (std::size_t i = 0; i < n; ++i) f >> net.params[i];
  if (!f) throw std::runtime_error("load_checkpoint: truncated file " + path);
  net.spec.validate();
  if (static_cast<std::int64_t>(n) != net.spec.param_count())
    throw std::runtime_error("load_checkpoint: parameter count mismatch");
  return net;
}

}  // namespace jetpinn
