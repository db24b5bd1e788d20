#include "jetpinn/loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jetpinn {

const char* term_name(Term t) {
  switch (t) {
    case Term::L1: return "F_L1";
    case Term::L2: return "F_L2";
    case Term::Gamma: return "F_Gamma";
    case Term::B1: return "F_B1";
    case Term::I1: return "F_I1";
    case Term::I2: return "F_I2";
    case Term::Obs: return "F_obs";
    case Term::Count: break;
  }
  return "?";
}

LossWeights default_weights(const ProblemSpec& spec) {
  LossWeights w;
  auto recip = [](double coeff) { return 1.0 / std::max(1.0, coeff); };
  if (spec.kind == ProblemKind::TwoPhaseFlow) {
    w[Term::L1] = recip(std::max(spec.fluid1.rho, spec.fluid1.mu));
    w[Term::L2] = recip(std::max(spec.fluid2.rho, spec.fluid2.mu));
    w[Term::Gamma] = recip(std::max(spec.fluid1.mu, spec.fluid2.mu));
    w[Term::B1] = 1.0;
    w[Term::I1] = recip(spec.fluid1.rho);
    w[Term::I2] = recip(spec.fluid2.rho);
    w[Term::Obs] = 1.0;
  } else {
    const double mu_s = spec.solid.mu_s(), lambda_s = spec.solid.lambda_s();
    const double solid_coeff = std::max({spec.solid.rho_s, mu_s, lambda_s});
    w[Term::L1] = recip(std::max(spec.fluid1.rho, spec.fluid1.mu));
    w[Term::L2] = recip(solid_coeff);
    w[Term::Gamma] = recip(std::max({spec.fluid1.mu, mu_s, lambda_s}));
    w[Term::B1] = 1.0;
    w[Term::I1] = recip(spec.fluid1.rho);
    w[Term::I2] = recip(solid_coeff);
    w[Term::Obs] = 1.0;
  }
  return w;
}

PreparedData prepare_data(const ProblemSpec& spec, const SampleSet& samples) {
  spec.validate();
  PreparedData out;
  auto add = [&](Term term, int sub, const std::vector<SamplePoint>& pts) {
    for (const auto& sp : pts) {
      TrainPoint tp;
      tp.term = term;
      tp.subdomain = sub;
      tp.sp = sp;
      switch (term) {
        case Term::L1:
        case Term::L2:
          tp.data = synthesize_pde_data(spec, sub, sp.p);
          break;
        case Term::Gamma:
          tp.data = synthesize_interface_data(spec, sp.p, sp.nx, sp.ny);
          break;
        case Term::B1:
          tp.data = synthesize_boundary_data(spec, sub, sp.p);
          break;
        case Term::I1:
        case Term::I2:
          tp.data = synthesize_initial_data(spec, sub, sp.p);
          break;
        case Term::Obs:
          tp.data = {exact_pressure2(spec, sp.p)};
          break;
        case Term::Count:
          break;
      }
      out.points.push_back(std::move(tp));
      out.count[static_cast<std::size_t>(term)] += 1;
    }
  };
  add(Term::L1, 1, samples.interior[0]);
  add(Term::L2, 2, samples.interior[1]);
  add(Term::Gamma, 0, samples.interface_pts);
  add(Term::B1, 1, samples.boundary);
  add(Term::I1, 1, samples.initial[0]);
  add(Term::I2, 2, samples.initial[1]);
  if (!samples.observation.empty()) {
    if (spec.kind != ProblemKind::TwoPhaseFlow)
      throw std::invalid_argument("prepare_data: observation points apply to the two-phase problem only");
    add(Term::Obs, 2, samples.observation);
  }
  for (Term t : {Term::L1, Term::L2, Term::Gamma, Term::B1, Term::I1, Term::I2}) {
    if (out.count_of(t) == 0)
      throw std::invalid_argument(std::string("prepare_data: empty sample list for ") + term_name(t));
  }
  return out;
}

FieldProvider exact_provider(const ProblemSpec& spec) {
  return [spec](int sub, const SpaceTimePoint& p) { return exact_solution(spec, sub, p); };
}

FieldProvider network_provider(const ProblemSpec& spec, const Network& n1, const Network& n2) {
  return [&spec, &n1, &n2](int sub, const SpaceTimePoint& p) {
    const Network& net = (sub == 1) ? n1 : n2;
    std::vector<Jet2> jets = forward_jet(net.spec, net.params, p);
    std::vector<Ex<JetAlg>> f;
    f.reserve(jets.size());
    for (const Jet2& j : jets) f.push_back({&kJetAlg, j});
    return make_fields(spec.kind, sub, std::move(f));
  };
}

LossBreakdown assemble_loss(const ProblemSpec& spec, const PreparedData& data,
                            const LossWeights& weights, const FieldProvider& provider) {
  LossBreakdown bd;
  std::vector<Ex<JetAlg>> res;
  for (const TrainPoint& tp : data.points) {
    auto fields = [&](int sub) { return provider(sub, tp.sp.p); };
    point_residuals(kJetAlg, spec, tp, fields, res);
    double ssq = 0.0;
    for (const auto& r : res) ssq += r.s.v * r.s.v;
    bd.term[static_cast<std::size_t>(tp.term)] += ssq;
  }
  bd.total = 0.0;
  for (int t = 0; t < kTermCount; ++t) {
    const int m = data.count[static_cast<std::size_t>(t)];
    if (m > 0) bd.term[static_cast<std::size_t>(t)] /= m;
    bd.total += weights.w[static_cast<std::size_t>(t)] * bd.term[static_cast<std::size_t>(t)];
  }
  return bd;
}

}  // namespace jetpinn
