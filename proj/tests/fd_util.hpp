#pragma once
#include <array>
#include <cmath>
#include <functional>

#include "jetpinn/jet.hpp"

// Central finite-difference oracles, independent of the jet/tape path they
// check.
namespace fd {

using ScalarFn = std::function<double(double, double, double)>;

struct Derivs {
  double value;
  std::array<double, 3> grad;
  std::array<std::array<double, 3>, 3> hess;
};

inline Derivs central(const ScalarFn& f, double x, double y, double t, double h) {
  auto at = [&](double dx, double dy, double dt) { return f(x + dx, y + dy, t + dt); };
  Derivs d{};
  d.value = at(0, 0, 0);
  const double axes[3][3] = {{h, 0, 0}, {0, h, 0}, {0, 0, h}};
  for (int i = 0; i < 3; ++i) {
    d.grad[i] = (at(axes[i][0], axes[i][1], axes[i][2]) -
                 at(-axes[i][0], -axes[i][1], -axes[i][2])) /
                (2 * h);
    d.hess[i][i] = (at(axes[i][0], axes[i][1], axes[i][2]) - 2 * d.value +
                    at(-axes[i][0], -axes[i][1], -axes[i][2])) /
                   (h * h);
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const double pp = at(axes[i][0] + axes[j][0], axes[i][1] + axes[j][1], axes[i][2] + axes[j][2]);
      const double pm = at(axes[i][0] - axes[j][0], axes[i][1] - axes[j][1], axes[i][2] - axes[j][2]);
      const double mp = at(-axes[i][0] + axes[j][0], -axes[i][1] + axes[j][1], -axes[i][2] + axes[j][2]);
      const double mm = at(-axes[i][0] - axes[j][0], -axes[i][1] - axes[j][1], -axes[i][2] - axes[j][2]);
      d.hess[i][j] = d.hess[j][i] = (pp - pm - mp + mm) / (4 * h * h);
    }
  return d;
}

inline double rel_err(double got, double want, double scale) {
  return std::abs(got - want) / std::max(std::abs(want), scale);
}

// Worst relative mismatch between a jet and the FD derivatives of f at the
// same point.
inline double jet_vs_fd(const jetpinn::Jet2& jet, const ScalarFn& f, double x, double y, double t,
                        double h, double scale) {
  const Derivs d = central(f, x, y, t, h);
  double worst = rel_err(jet.v, d.value, scale);
  for (int i = 0; i < 3; ++i) worst = std::max(worst, rel_err(jet.g[i], d.grad[i], scale));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      worst = std::max(worst, rel_err(jet.hess(i, j), d.hess[i][j], scale));
  return worst;
}

}  // namespace fd
