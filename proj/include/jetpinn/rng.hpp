#pragma once
#include <cstdint>
#include <random>

namespace jetpinn {

// Seeded uniform generator with a fixed bit-to-double mapping, so streams are
// reproducible across compilers and standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t next_u64() { return gen_(); }

private:
  std::mt19937_64 gen_;
};

}  // namespace jetpinn
