#include <doctest.h>

#include "fd_util.hpp"
#include "jetpinn/jet.hpp"
#include "jetpinn/rng.hpp"

using namespace jetpinn;

TEST_CASE("jet_var seeds value, unit gradient, zero hessian") {
  Jet2 a = jet_var(3.0, 0);
  CHECK(a.v == 3.0);
  CHECK(a.g[0] == 1.0);
  CHECK(a.g[1] == 0.0);
  CHECK(a.g[2] == 0.0);
  for (double h : a.h) CHECK(h == 0.0);

  Jet2 b = jet_var(0.0, 2);
  CHECK(b.v == 0.0);
  CHECK(b.g[2] == 1.0);

  Jet2 c = jet_var(1.5, 1);
  CHECK(c.v == 1.5);
  CHECK(c.g[1] == 1.0);

  CHECK_THROWS_AS(jet_var(1.0, 3), std::invalid_argument);
}

TEST_CASE("x*x has value 9, gradient 6, hessian 2 at x=3") {
  Jet2 x = jet_var(3.0, 0);
  Jet2 r = jet_mul(x, x);
  CHECK(r.v == 9.0);
  CHECK(r.g[0] == 6.0);
  CHECK(r.g[1] == 0.0);
  CHECK(r.hess(0, 0) == 2.0);
  CHECK(r.hess(1, 1) == 0.0);
}

TEST_CASE("tanh at 0 is the identity to second order") {
  Jet2 r = jet_tanh(jet_var(0.0, 0));
  CHECK(r.v == 0.0);
  CHECK(r.g[0] == 1.0);
  for (double h : r.h) CHECK(h == 0.0);
}

TEST_CASE("tanh jet at 0.5 matches central finite differences") {
  Jet2 r = jet_tanh(jet_var(0.5, 0));
  const double worst =
      fd::jet_vs_fd(r, [](double x, double, double) { return std::tanh(x); }, 0.5, 0, 0, 1e-4, 1e-8);
  CHECK(worst < 1e-6);
}

TEST_CASE("division by zero and overflow are reported") {
  Jet2 a = jet_var(1.0, 0);
  Jet2 z = jet_const(0.0);
  CHECK_THROWS_AS(jet_div(a, z), std::domain_error);
  CHECK_THROWS_AS(jet_exp(jet_const(1e4)), std::overflow_error);
}

namespace {

// A composition exercising every primitive.
Jet2 composite_jet(double x, double y, double t) {
  Jet2 X = jet_var(x, 0), Y = jet_var(y, 1), T = jet_var(t, 2);
  Jet2 a = jet_mul(jet_sin(X), jet_cos(Y));
  Jet2 b = jet_exp(jet_mul(jet_const(0.3), T));
  Jet2 c = jet_tanh(jet_add(a, jet_mul(X, Y)));
  Jet2 d = jet_div(jet_square(jet_add(X, T)), jet_add(jet_const(2.0), jet_square(Y)));
  Jet2 e = jet_sub(jet_mul(b, c), jet_neg(d));
  return jet_add(e, jet_mul(jet_cos(T), jet_sin(Y)));
}

double composite_val(double x, double y, double t) {
  const double a = std::sin(x) * std::cos(y);
  const double b = std::exp(0.3 * t);
  const double c = std::tanh(a + x * y);
  const double d = (x + t) * (x + t) / (2.0 + y * y);
  return (b * c + d) + std::cos(t) * std::sin(y);
}

}  // namespace

TEST_CASE("composed primitives match finite differences at 100 random points") {
  Rng rng(42);
  for (int k = 0; k < 100; ++k) {
    const double x = rng.uniform(-1.0, 1.0);
    const double y = rng.uniform(-1.0, 1.0);
    const double t = rng.uniform(0.0, 1.0);
    const Jet2 jet = composite_jet(x, y, t);
    const double worst = fd::jet_vs_fd(jet, composite_val, x, y, t, 1e-4, 1e-5);
    CHECK(worst < 1e-5);
  }
}

TEST_CASE("hessian storage is symmetric bit-exactly") {
  Rng rng(7);
  for (int k = 0; k < 20; ++k) {
    const Jet2 jet = composite_jet(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(0, 1));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(jet.hess(i, j) == jet.hess(j, i));
  }
}

TEST_CASE("derivative shift reads gradient and hessian rows") {
  Jet2 X = jet_var(0.7, 0), Y = jet_var(0.2, 1);
  Jet2 f = jet_mul(jet_sin(X), jet_cos(Y));
  Jet2 fx = jd::pick_grad(f, 0);
  CHECK(fx.v == doctest::Approx(std::cos(0.7) * std::cos(0.2)).epsilon(1e-14));
  CHECK(fx.g[0] == doctest::Approx(-std::sin(0.7) * std::cos(0.2)).epsilon(1e-14));
  CHECK(fx.g[1] == doctest::Approx(-std::cos(0.7) * std::sin(0.2)).epsilon(1e-14));
  Jet2 fxx = jd::pick_hess(f, 0, 0);
  CHECK(fxx.v == doctest::Approx(-std::sin(0.7) * std::cos(0.2)).epsilon(1e-14));
}
