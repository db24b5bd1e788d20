#include "jetpinn/physics.hpp"

#include <cmath>

namespace jetpinn {

void ProblemSpec::validate() const {
  if (fluid1.rho <= 0 || fluid1.mu <= 0)
    throw std::invalid_argument("ProblemSpec: fluid 1 parameters must be positive");
  if (kind == ProblemKind::TwoPhaseFlow) {
    if (fluid2.rho <= 0 || fluid2.mu <= 0)
      throw std::invalid_argument("ProblemSpec: fluid 2 parameters must be positive");
  } else {
    if (solid.rho_s <= 0 || solid.E <= 0)
      throw std::invalid_argument("ProblemSpec: solid density and Young's modulus must be positive");
    if (solid.nu <= 0 || solid.nu >= 0.5)
      throw std::invalid_argument("ProblemSpec: Poisson ratio must lie in (0, 0.5)");
    if (literal_solution)
      throw std::invalid_argument("ProblemSpec: literal_solution applies to the two-phase problem only");
  }
}

std::pair<int, int> output_layout(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::TwoPhaseFlow: return {3, 3};
    case ProblemKind::FsiWave: return {3, 2};
    case ProblemKind::FsiParabolic: return {3, 4};
  }
  return {0, 0};
}

namespace {

using E = Ex<JetAlg>;

struct Seeds {
  E X, Y, T;
};

Seeds seeds(const SpaceTimePoint& p) {
  const JetAlg* a = &kJetAlg;
  return {{a, jd::var(p.x, 0)}, {a, jd::var(p.y, 1)}, {a, jd::var(p.t, 2)}};
}

}  // namespace

FieldJets exact_solution(const ProblemSpec& spec, int sub, const SpaceTimePoint& p) {
  auto [X, Y, T] = seeds(p);
  std::vector<E> f;
  if (spec.kind == ProblemKind::TwoPhaseFlow && sub == 2) {
    auto ct = cos(T);
    f = {ct * cos(X) * cos(Y), ct * sin(X) * sin(Y), ct * cos(X + Y)};
  } else if (sub == 1) {
    auto et = exp(T);
    auto vy = et * cos(X) * sin(Y);
    if (!(spec.kind == ProblemKind::TwoPhaseFlow && spec.literal_solution)) vy = -vy;
    f = {et * sin(X) * cos(Y), vy, et * sin(X) * sin(Y)};
  } else {
    auto ux = cos(T) * cos(X) * cos(Y);
    auto uy = sin(T) * sin(X) * sin(Y);
    if (spec.kind == ProblemKind::FsiWave) {
      f = {ux, uy};
    } else {
      f = {ux, uy, -(sin(T) * cos(X) * cos(Y)), cos(T) * sin(X) * sin(Y)};
    }
  }
  return make_fields(spec.kind, sub, std::move(f));
}

std::vector<double> exact_values(const ProblemSpec& spec, int sub, const SpaceTimePoint& p) {
  FieldJets fl = exact_solution(spec, sub, p);
  std::vector<double> v;
  v.reserve(fl.f.size());
  for (const auto& e : fl.f) v.push_back(e.s.v);
  return v;
}

double exact_pressure2(const ProblemSpec& spec, const SpaceTimePoint& p) {
  if (spec.kind != ProblemKind::TwoPhaseFlow)
    throw std::invalid_argument("exact_pressure2: observation data exists for the two-phase problem only");
  return exact_solution(spec, 2, p).p().s.v;
}

std::vector<int> pde_zero_rhs_rows(const ProblemSpec& spec, int sub) {
  if (sub == 1 || spec.kind == ProblemKind::TwoPhaseFlow) return {2};  // divergence
  if (spec.kind == ProblemKind::FsiParabolic) return {2, 3, 4, 5, 6, 7};
  return {};
}

namespace {

std::vector<double> values_of(std::vector<Ex<JetAlg>>& comps) {
  std::vector<double> v;
  v.reserve(comps.size());
  for (const auto& c : comps) v.push_back(c.s.v);
  return v;
}

}  // namespace

std::vector<double> synthesize_pde_data(const ProblemSpec& spec, int sub,
                                        const SpaceTimePoint& p) {
  FieldJets ex = exact_solution(spec, sub, p);
  std::vector<Ex<JetAlg>> comps;
  pde_comps(spec, sub, ex, comps);
  std::vector<double> data = values_of(comps);
  for (int i : pde_zero_rhs_rows(spec, sub)) data[static_cast<std::size_t>(i)] = 0.0;
  return data;
}

std::vector<double> synthesize_interface_data(const ProblemSpec& spec, const SpaceTimePoint& p,
                                              double nx, double ny) {
  FieldJets e1 = exact_solution(spec, 1, p);
  FieldJets e2 = exact_solution(spec, 2, p);
  std::vector<Ex<JetAlg>> comps;
  interface_comps(spec, e1, e2, nx, ny, comps);
  return values_of(comps);
}

std::vector<double> synthesize_boundary_data(const ProblemSpec& spec, int sub,
                                             const SpaceTimePoint& p) {
  FieldJets ex = exact_solution(spec, sub, p);
  std::vector<Ex<JetAlg>> comps;
  boundary_comps(spec, sub, ex, comps);
  return values_of(comps);
}

std::vector<double> synthesize_initial_data(const ProblemSpec& spec, int sub,
                                            const SpaceTimePoint& p) {
  FieldJets ex = exact_solution(spec, sub, p);
  std::vector<Ex<JetAlg>> comps;
  initial_comps(spec, sub, ex, comps);
  return values_of(comps);
}

std::vector<std::string> pde_labels(const ProblemSpec& spec, int sub) {
  if (sub == 1 || spec.kind == ProblemKind::TwoPhaseFlow)
    return {"momentum-x", "momentum-y", "divergence"};
  if (spec.kind == ProblemKind::FsiWave) return {"solid-x", "solid-y"};
  return {"solid-x", "solid-y", "compat-strain-xx", "compat-strain-yy", "compat-strain-xy",
          "compat-strain-div", "compatibility-x", "compatibility-y"};
}

std::vector<std::string> interface_labels(const ProblemSpec&) {
  return {"kinematic-x", "kinematic-y", "dynamic-x", "dynamic-y"};
}

std::vector<std::string> boundary_labels(const ProblemSpec&, int) {
  return {"boundary-x", "boundary-y"};
}

std::vector<std::string> initial_labels(const ProblemSpec& spec, int sub) {
  if (sub == 1 || spec.kind == ProblemKind::TwoPhaseFlow) return {"initial-vx", "initial-vy"};
  std::vector<std::string> l = {"initial-vx", "initial-vy"};
  if (spec.extra_terms) {
    l.insert(l.end(), {"initial-strain-xx", "initial-strain-yy", "initial-strain-xy",
                       "initial-strain-div", "initial-ux", "initial-uy"});
  }
  return l;
}

double ResidualVector::max_abs() const {
  double m = 0.0;
  for (const auto& [name, v] : comps) m = std::max(m, std::abs(v));
  return m;
}

namespace {

ResidualVector finish(std::vector<Ex<JetAlg>>& comps, const std::vector<std::string>& labels,
                      std::span<const double> data) {
  if (data.size() != comps.size())
    throw std::invalid_argument("residual: data length does not match component count");
  ResidualVector rv;
  rv.comps.reserve(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const double r = comps[i].s.v - data[i];
    if (std::isnan(r))
      throw std::runtime_error("residual: NaN in component " + labels[i]);
    rv.comps.emplace_back(labels[i], r);
  }
  return rv;
}

}  // namespace

ResidualVector pde_residual(const ProblemSpec& spec, int sub, const FieldJets& fl,
                            std::span<const double> data) {
  std::vector<Ex<JetAlg>> comps;
  pde_comps(spec, sub, fl, comps);
  return finish(comps, pde_labels(spec, sub), data);
}

ResidualVector interface_residual(const ProblemSpec& spec, const FieldJets& f1,
                                  const FieldJets& f2, double nx, double ny,
                                  std::span<const double> data) {
  if (std::abs(nx * nx + ny * ny - 1.0) > 1e-12)
    throw std::invalid_argument("interface_residual: normal is not unit length");
  std::vector<Ex<JetAlg>> comps;
  interface_comps(spec, f1, f2, nx, ny, comps);
  return finish(comps, interface_labels(spec), data);
}

ResidualVector boundary_initial_residual(const ProblemSpec& spec, char term, int sub,
                                         const FieldJets& fl, std::span<const double> data) {
  std::vector<Ex<JetAlg>> comps;
  if (term == 'B') {
    if (sub == 2)
      throw std::invalid_argument(
          "boundary_initial_residual: the immersed geometry has no subdomain-2 boundary term");
    boundary_comps(spec, sub, fl, comps);
    return finish(comps, boundary_labels(spec, sub), data);
  }
  if (term != 'I') throw std::invalid_argument("boundary_initial_residual: term must be 'B' or 'I'");
  initial_comps(spec, sub, fl, comps);
  return finish(comps, initial_labels(spec, sub), data);
}

}  // namespace jetpinn
