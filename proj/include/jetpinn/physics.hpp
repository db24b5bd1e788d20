#pragma once
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "jetpinn/expr.hpp"
#include "jetpinn/geometry.hpp"

namespace jetpinn {

struct FluidParams {
  double rho = 1.0;
  double mu = 1.0;
};

struct StructParams {
  double rho_s = 1.0;
  double E = 1.0;
  double nu = 0.3;
  // Lame constants, always derived
  double mu_s() const { return E / (2.0 * (1.0 + nu)); }
  double lambda_s() const { return E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu)); }
};

enum class ProblemKind { TwoPhaseFlow, FsiWave, FsiParabolic };

struct ProblemSpec {
  ProblemKind kind = ProblemKind::TwoPhaseFlow;
  FluidParams fluid1;       // subdomain 1 (box minus disk); the fluid in FSI
  FluidParams fluid2;       // subdomain 2 (two-phase only)
  StructParams solid;       // FSI only
  bool literal_solution = false;  // keep the printed subdomain-1 velocity (nonzero divergence)
  bool extra_terms = true;        // initial strain-energy/displacement pieces in FSI losses

  void validate() const;
};

// Per-subdomain network output widths.
std::pair<int, int> output_layout(ProblemKind kind);

inline const JetAlg kJetAlg{};

// One subdomain's unknown fields at one point, in layout order:
//   fluid (and both two-phase subdomains): vx, vy, p
//   FSI wave solid:                        ux, uy
//   FSI parabolic solid:                   ux, uy, vsx, vsy
template <class A>
struct Fields {
  ProblemKind kind = ProblemKind::TwoPhaseFlow;
  int subdomain = 1;
  std::vector<Ex<A>> f;

  bool fluid_like() const { return subdomain == 1 || kind == ProblemKind::TwoPhaseFlow; }

  Ex<A> vx() const { return get(fluid_like(), 0, "vx"); }
  Ex<A> vy() const { return get(fluid_like(), 1, "vy"); }
  Ex<A> p() const { return get(fluid_like(), 2, "p"); }
  Ex<A> ux() const { return get(!fluid_like(), 0, "ux"); }
  Ex<A> uy() const { return get(!fluid_like(), 1, "uy"); }
  Ex<A> vsx() const { return get(kind == ProblemKind::FsiParabolic && subdomain == 2, 2, "vsx"); }
  Ex<A> vsy() const { return get(kind == ProblemKind::FsiParabolic && subdomain == 2, 3, "vsy"); }

private:
  Ex<A> get(bool ok, std::size_t i, const char* name) const {
    if (!ok || i >= f.size())
      throw std::invalid_argument(std::string("Fields: missing field ") + name);
    return f[i];
  }
};

using FieldJets = Fields<JetAlg>;

template <class A>
Fields<A> make_fields(ProblemKind kind, int sub, std::vector<Ex<A>> outs) {
  const int want = sub == 1 ? output_layout(kind).first : output_layout(kind).second;
  if (static_cast<int>(outs.size()) != want)
    throw std::invalid_argument("make_fields: wrong output count for layout");
  Fields<A> fl;
  fl.kind = kind;
  fl.subdomain = sub;
  fl.f = std::move(outs);
  return fl;
}

// Symmetric 2x2 stress; entries keep their jet derivatives so the divergence
// of the tensor can be read off downstream.
template <class A>
struct StressTensor {
  Ex<A> xx, xy, yy;
};

// sigma = -p I + 2 mu D(v),  D(v) = (grad v + grad v^T)/2
template <class A>
StressTensor<A> fluid_stress(const Fields<A>& fl, double mu) {
  auto vx = fl.vx(), vy = fl.vy(), p = fl.p();
  return {2.0 * mu * dx(vx) - p, mu * (dy(vx) + dx(vy)), 2.0 * mu * dy(vy) - p};
}

// sigma_s = 2 mu_s eps(u) + lambda_s tr(eps(u)) I
template <class A>
StressTensor<A> solid_stress(const Fields<A>& fl, double mu_s, double lambda_s) {
  auto ux = fl.ux(), uy = fl.uy();
  auto exx = dx(ux);
  auto eyy = dy(uy);
  auto tr = exx + eyy;
  return {2.0 * mu_s * exx + lambda_s * tr, mu_s * (dy(ux) + dx(uy)),
          2.0 * mu_s * eyy + lambda_s * tr};
}

template <class A>
StressTensor<A> stress_of(const ProblemSpec& spec, int sub, const Fields<A>& fl) {
  if (fl.fluid_like()) {
    const double mu = (sub == 1) ? spec.fluid1.mu : spec.fluid2.mu;
    return fluid_stress(fl, mu);
  }
  return solid_stress(fl, spec.solid.mu_s(), spec.solid.lambda_s());
}

// ---- residual component builders ----------------------------------------
// Each family produces the component list of the corresponding operator
// applied to the given fields; the right-hand-side data (forcing, jumps,
// traces) is synthesized separately by applying the same builder to the exact
// solution, with homogeneous rows forced to zero.

template <class A>
void pde_comps(const ProblemSpec& spec, int sub, const Fields<A>& fl,
               std::vector<Ex<A>>& out) {
  out.clear();
  if (fl.fluid_like()) {
    const FluidParams& fp = (sub == 1) ? spec.fluid1 : spec.fluid2;
    auto st = fluid_stress(fl, fp.mu);
    auto vx = fl.vx(), vy = fl.vy();
    out.push_back(fp.rho * (dt(vx) + vx * dx(vx) + vy * dy(vx)) - (dx(st.xx) + dy(st.xy)));
    out.push_back(fp.rho * (dt(vy) + vx * dx(vy) + vy * dy(vy)) - (dx(st.xy) + dy(st.yy)));
    out.push_back(dx(vx) + dy(vy));
    return;
  }
  const double mu_s = spec.solid.mu_s(), lambda_s = spec.solid.lambda_s();
  auto st = solid_stress(fl, mu_s, lambda_s);
  auto ux = fl.ux(), uy = fl.uy();
  if (spec.kind == ProblemKind::FsiWave) {
    out.push_back(spec.solid.rho_s * dtt(ux) - (dx(st.xx) + dy(st.xy)));
    out.push_back(spec.solid.rho_s * dtt(uy) - (dx(st.xy) + dy(st.yy)));
    return;
  }
  // parabolic-like form: momentum in v_s plus the u_t - v_s compatibility
  // rows (strain-energy scaled and plain)
  auto vsx = fl.vsx(), vsy = fl.vsy();
  out.push_back(spec.solid.rho_s * dt(vsx) - (dx(st.xx) + dy(st.xy)));
  out.push_back(spec.solid.rho_s * dt(vsy) - (dx(st.xy) + dy(st.yy)));
  auto d1 = dt(ux) - vsx;
  auto d2 = dt(uy) - vsy;
  const double s2mu = std::sqrt(2.0 * mu_s), smu = std::sqrt(mu_s),
               slam = std::sqrt(lambda_s);
  out.push_back(s2mu * dx(d1));
  out.push_back(s2mu * dy(d2));
  out.push_back(smu * (dy(d1) + dx(d2)));
  out.push_back(slam * (dx(d1) + dy(d2)));
  out.push_back(d1);
  out.push_back(d2);
}

template <class A>
void interface_comps(const ProblemSpec& spec, const Fields<A>& f1, const Fields<A>& f2,
                     double nx, double ny, std::vector<Ex<A>>& out) {
  out.clear();
  switch (spec.kind) {
    case ProblemKind::TwoPhaseFlow:
      out.push_back(f1.vx() - f2.vx());
      out.push_back(f1.vy() - f2.vy());
      break;
    case ProblemKind::FsiWave:
      out.push_back(f1.vx() - dt(f2.ux()));
      out.push_back(f1.vy() - dt(f2.uy()));
      break;
    case ProblemKind::FsiParabolic:
      out.push_back(f1.vx() - f2.vsx());
      out.push_back(f1.vy() - f2.vsy());
      break;
  }
  auto s1 = stress_of(spec, 1, f1);
  auto s2 = stress_of(spec, 2, f2);
  // sigma_1 n_1 + sigma_2 n_2 with n_2 = -n_1
  out.push_back(nx * (s1.xx - s2.xx) + ny * (s1.xy - s2.xy));
  out.push_back(nx * (s1.xy - s2.xy) + ny * (s1.yy - s2.yy));
}

template <class A>
void boundary_comps(const ProblemSpec& spec, int sub, const Fields<A>& fl,
                    std::vector<Ex<A>>& out) {
  out.clear();
  if (sub != 1)
    throw std::invalid_argument("boundary_comps: subdomain 2 has no outer boundary");
  (void)spec;
  out.push_back(fl.vx());
  out.push_back(fl.vy());
}

template <class A>
void initial_comps(const ProblemSpec& spec, int sub, const Fields<A>& fl,
                   std::vector<Ex<A>>& out) {
  out.clear();
  if (fl.fluid_like()) {
    const double sr = std::sqrt((sub == 1) ? spec.fluid1.rho : spec.fluid2.rho);
    out.push_back(sr * fl.vx());
    out.push_back(sr * fl.vy());
    return;
  }
  const double srs = std::sqrt(spec.solid.rho_s);
  auto ux = fl.ux(), uy = fl.uy();
  if (spec.kind == ProblemKind::FsiWave) {
    out.push_back(srs * dt(ux));
    out.push_back(srs * dt(uy));
  } else {
    out.push_back(srs * fl.vsx());
    out.push_back(srs * fl.vsy());
  }
  if (!spec.extra_terms) return;
  const double mu_s = spec.solid.mu_s(), lambda_s = spec.solid.lambda_s();
  const double s2mu = std::sqrt(2.0 * mu_s), smu = std::sqrt(mu_s), slam = std::sqrt(lambda_s);
  out.push_back(s2mu * dx(ux));
  out.push_back(s2mu * dy(uy));
  out.push_back(smu * (dy(ux) + dx(uy)));
  out.push_back(slam * (dx(ux) + dy(uy)));
  out.push_back(ux);
  out.push_back(uy);
}

// Component labels matching the builders above.
std::vector<std::string> pde_labels(const ProblemSpec& spec, int sub);
std::vector<std::string> interface_labels(const ProblemSpec& spec);
std::vector<std::string> boundary_labels(const ProblemSpec& spec, int sub);
std::vector<std::string> initial_labels(const ProblemSpec& spec, int sub);

// Indices of components whose right-hand side is identically zero (the
// divergence row; the compatibility rows). Synthesized data is zeroed there,
// so a divergence misfit of the literal printed solution stays visible.
std::vector<int> pde_zero_rhs_rows(const ProblemSpec& spec, int sub);

// ---- exact manufactured solutions and data synthesis ---------------------

FieldJets exact_solution(const ProblemSpec& spec, int sub, const SpaceTimePoint& p);
std::vector<double> exact_values(const ProblemSpec& spec, int sub, const SpaceTimePoint& p);
double exact_pressure2(const ProblemSpec& spec, const SpaceTimePoint& p);

std::vector<double> synthesize_pde_data(const ProblemSpec& spec, int sub, const SpaceTimePoint& p);
std::vector<double> synthesize_interface_data(const ProblemSpec& spec, const SpaceTimePoint& p,
                                              double nx, double ny);
std::vector<double> synthesize_boundary_data(const ProblemSpec& spec, int sub,
                                             const SpaceTimePoint& p);
std::vector<double> synthesize_initial_data(const ProblemSpec& spec, int sub,
                                            const SpaceTimePoint& p);

// ---- labeled residual evaluation (value view, jet algebra) ---------------

struct ResidualVector {
  std::vector<std::pair<std::string, double>> comps;
  double max_abs() const;
};

ResidualVector pde_residual(const ProblemSpec& spec, int sub, const FieldJets& fl,
                            std::span<const double> data);
ResidualVector interface_residual(const ProblemSpec& spec, const FieldJets& f1,
                                  const FieldJets& f2, double nx, double ny,
                                  std::span<const double> data);
ResidualVector boundary_initial_residual(const ProblemSpec& spec, char term, int sub,
                                         const FieldJets& fl, std::span<const double> data);

}  // namespace jetpinn
