#pragma once
#include <array>
#include <functional>
#include <vector>

#include "jetpinn/network.hpp"
#include "jetpinn/physics.hpp"
#include "jetpinn/sampling.hpp"

namespace jetpinn {

// Loss terms of the discrete functional. The second subdomain has no outer
// boundary in the immersed geometry, so there is no B2 slot; its weight is
// identically zero.
enum class Term : int { L1 = 0, L2, Gamma, B1, I1, I2, Obs, Count };
inline constexpr int kTermCount = static_cast<int>(Term::Count);
const char* term_name(Term t);

struct LossWeights {
  std::array<double, kTermCount> w{1, 1, 1, 1, 1, 1, 1};
  double& operator[](Term t) { return w[static_cast<std::size_t>(t)]; }
  double operator[](Term t) const { return w[static_cast<std::size_t>(t)]; }
};

// Normalization rule: each weight is the reciprocal of the largest physical
// coefficient appearing in that term's residual, floored at 1.
LossWeights default_weights(const ProblemSpec& spec);

struct LossBreakdown {
  std::array<double, kTermCount> term{};
  double total = 0.0;
  double operator[](Term t) const { return term[static_cast<std::size_t>(t)]; }
};

// One sample point of one loss term, with its synthesized right-hand side.
struct TrainPoint {
  Term term;
  int subdomain;  // 0 for interface
  SamplePoint sp;
  std::vector<double> data;
};

struct PreparedData {
  std::vector<TrainPoint> points;
  std::array<int, kTermCount> count{};  // M per term
  int count_of(Term t) const { return count[static_cast<std::size_t>(t)]; }
};

// Synthesizes all per-point data for the sample set.
PreparedData prepare_data(const ProblemSpec& spec, const SampleSet& samples);

// Residual components at one prepared point under the given algebra, fields
// supplied per subdomain by `fields`.
template <class A, class FieldsFn>
void point_residuals(const A& alg, const ProblemSpec& spec, const TrainPoint& tp,
                     FieldsFn&& fields, std::vector<Ex<A>>& out) {
  (void)alg;
  std::vector<Ex<A>> comps;
  switch (tp.term) {
    case Term::L1:
    case Term::L2:
      pde_comps(spec, tp.subdomain, fields(tp.subdomain), comps);
      break;
    case Term::Gamma:
      interface_comps(spec, fields(1), fields(2), tp.sp.nx, tp.sp.ny, comps);
      break;
    case Term::B1:
      boundary_comps(spec, 1, fields(1), comps);
      break;
    case Term::I1:
    case Term::I2:
      initial_comps(spec, tp.subdomain, fields(tp.subdomain), comps);
      break;
    case Term::Obs:
      comps.push_back(fields(2).p());
      break;
    case Term::Count:
      break;
  }
  out.clear();
  out.reserve(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i)
    out.push_back({comps[i].alg, comps[i].alg->sub(comps[i].s, comps[i].alg->c(tp.data[i]))});
}

// Loss evaluation against an arbitrary field provider (exact solution, a
// trained network, or any stand-in).
using FieldProvider = std::function<FieldJets(int subdomain, const SpaceTimePoint&)>;

FieldProvider exact_provider(const ProblemSpec& spec);
FieldProvider network_provider(const ProblemSpec& spec, const Network& n1, const Network& n2);

LossBreakdown assemble_loss(const ProblemSpec& spec, const PreparedData& data,
                            const LossWeights& weights, const FieldProvider& provider);

}  // namespace jetpinn
