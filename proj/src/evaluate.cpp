#include "jetpinn/evaluate.hpp"

#include <cmath>
#include <stdexcept>

namespace jetpinn {

std::vector<std::string> error_field_names(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::TwoPhaseFlow:
      return {"v1x", "v1y", "p1", "v2x", "v2y", "p2"};
    case ProblemKind::FsiWave:
      return {"vfx", "vfy", "pf", "usx", "usy"};
    case ProblemKind::FsiParabolic:
      return {"vfx", "vfy", "pf", "usx", "usy", "vsx", "vsy"};
  }
  return {};
}

ErrorReport evaluate_error_values(const ProblemSpec& spec, const Geometry& geom,
                                  const ValueProvider& provider, const EvalGrid& grid) {
  spec.validate();
  ErrorReport rep;
  const auto names = error_field_names(spec.kind);
  rep.fields.resize(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) rep.fields[i].name = names[i];
  const int w1 = output_layout(spec.kind).first;

  for (int it = 0; it < grid.nt; ++it) {
    SpaceTimePoint p;
    p.t = grid.nt == 1 ? 0.0 : geom.t_end * it / (grid.nt - 1);
    for (int ix = 0; ix < grid.nx; ++ix) {
      p.x = geom.box_lo + (geom.box_hi - geom.box_lo) * ix / (grid.nx - 1);
      for (int iy = 0; iy < grid.ny; ++iy) {
        p.y = geom.box_lo + (geom.box_hi - geom.box_lo) * iy / (grid.ny - 1);
        const Classify cls = classify(geom, p);
        if (cls == Classify::OnInterface) continue;
        const int sub = static_cast<int>(cls);
        const std::vector<double> got = provider(sub, p);
        const std::vector<double> want = exact_values(spec, sub, p);
        const std::size_t base = (sub == 1) ? 0 : static_cast<std::size_t>(w1);
        for (std::size_t k = 0; k < want.size(); ++k) {
          const double e = got[k] - want[k];
          rep.fields[base + k].num += e * e;
          rep.fields[base + k].den += want[k] * want[k];
        }
      }
    }
  }

  double num = 0.0, den = 0.0;
  for (auto& fe : rep.fields) {
    fe.rel_l2 = fe.den > 0.0 ? std::sqrt(fe.num / fe.den) : std::sqrt(fe.num);
    num += fe.num;
    den += fe.den;
  }
  rep.combined = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
  return rep;
}

ErrorReport evaluate_error(const ProblemSpec& spec, const Geometry& geom, const Network& n1,
                           const Network& n2, const EvalGrid& grid) {
  return evaluate_error_values(
      spec, geom,
      [&](int sub, const SpaceTimePoint& p) {
        const Network& net = (sub == 1) ? n1 : n2;
        return forward_values(net.spec, net.params, p);
      },
      grid);
}

double fit_rate(std::span<const double> sizes, std::span<const double> errors) {
  if (sizes.size() != errors.size() || sizes.size() < 3)
    throw std::invalid_argument("fit_rate: need at least 3 matching points");
  const std::size_t n = sizes.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (sizes[i] <= 0.0 || errors[i] <= 0.0)
      throw std::invalid_argument("fit_rate: sizes and errors must be positive");
    const double x = std::log(sizes[i]);
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double dn = static_cast<double>(n);
  const double slope = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
  return -slope;
}

}  // namespace jetpinn
