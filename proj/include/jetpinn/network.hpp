#pragma once
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "jetpinn/geometry.hpp"
#include "jetpinn/jet.hpp"
#include "jetpinn/tape.hpp"

namespace jetpinn {

// Fully connected layer stack: tanh on every layer except the final affine
// map. Input width is always 3 (x, y, t).
struct LayerSpec {
  std::vector<int> widths;  // n_1 .. n_{L+1}

  int input_width() const { return widths.front(); }
  int output_width() const { return widths.back(); }
  int layer_count() const { return static_cast<int>(widths.size()) - 1; }

  // Parameters are laid out per neuron: n_in weights then the bias, neurons
  // in order within each layer, layers in order.
  std::int64_t param_count() const;
  std::int64_t layer_offset(int layer) const;

  void validate() const;
};

struct Network {
  LayerSpec spec;
  std::vector<double> params;
  std::uint64_t seed = 0;
};

// Glorot-uniform weights in +-sqrt(6/(n_in + n_out)), zero biases, drawn from
// a seeded stream in parameter order. Identical (spec, seed) gives
// bit-identical parameters.
Network init_network(const LayerSpec& spec, std::uint64_t seed);

// Full second-order jet evaluation: one jet per output, derivatives taken
// with respect to (x, y, t).
std::vector<Jet2> forward_jet(const LayerSpec& spec, std::span<const double> params,
                              const SpaceTimePoint& p);

// Value-only evaluation for error grids and field dumps.
std::vector<double> forward_values(const LayerSpec& spec, std::span<const double> params,
                                   const SpaceTimePoint& p);

// Tape-recorded evaluation for training; params live in the tape's bound
// theta vector starting at slot_base. Returns one node id per output.
std::vector<NodeId> forward_tape(const LayerSpec& spec, std::int32_t slot_base, Tape& tape,
                                 const SpaceTimePoint& p);

// Checkpoint: plain text (widths, seed, parameter count, one %.17g value per
// line); round-trips bit-exactly.
void save_checkpoint(const Network& net, const std::string& path);
Network load_checkpoint(const std::string& path);

}  // namespace jetpinn
