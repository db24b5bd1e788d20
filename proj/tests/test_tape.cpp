#include <doctest.h>

#include <vector>

#include "jetpinn/rng.hpp"
#include "jetpinn/tape.hpp"

using namespace jetpinn;

TEST_CASE("hand chain rule: F = (theta*x - 1)^2") {
  std::vector<double> theta = {1.0};
  Tape tape;
  tape.bind(theta);
  NodeId th = tape.param(0);
  NodeId x = tape.constant(2.0);
  NodeId r = tape.sub(tape.mul(th, x), tape.constant(1.0));
  NodeId loss = tape.square(r);
  CHECK(tape.value(loss) == 1.0);
  auto grad = tape_backward(tape, loss);
  CHECK(grad.size() == 1);
  CHECK(grad[0] == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("adjoints flow through gradient components: F = (d/dx theta*tanh(x))^2") {
  std::vector<double> theta = {3.0};
  Tape tape;
  tape.bind(theta);
  NodeId th = tape.param(0);
  NodeId x = tape.input_var(0.0, 0);
  NodeId h = tape.mul(th, tape.tanh_(x));
  NodeId d = tape.pick_grad(h, 0);
  CHECK(tape.value(d) == 3.0);  // theta * sech^2(0)
  NodeId loss = tape.square(d);
  auto grad = tape_backward(tape, loss);
  CHECK(grad[0] == doctest::Approx(6.0).epsilon(1e-14));
}

TEST_CASE("loss node must be on the tape") {
  Tape tape;
  std::vector<double> theta = {0.5};
  tape.bind(theta);
  tape.param(0);
  CHECK_THROWS_AS(tape_backward(tape, 57), std::invalid_argument);
}

namespace {

// Small random expression over two parameters and one seeded input.
NodeId build_expr(Tape& t, std::uint64_t salt) {
  NodeId p0 = t.param(0);
  NodeId p1 = t.param(1);
  NodeId x = t.input_var(0.3 + 1e-3 * static_cast<double>(salt % 7), 0);
  NodeId y = t.input_var(-0.4, 1);
  NodeId a = t.mul(p0, t.unary(UnaryOp::Sin, t.mul(x, y)));
  NodeId b = t.mul(p1, t.unary(UnaryOp::Exp, t.mul(t.constant(0.2), x)));
  NodeId c = t.pick_grad(t.mul(a, b), 0);
  NodeId d = t.pick_hess(t.unary(UnaryOp::Tanh, t.add(a, b)), 0, 1);
  return t.add(t.square(c), t.square(t.add(d, t.div(a, t.add(b, t.constant(2.0))))));
}

}  // namespace

TEST_CASE("backward pass is linear in the seed") {
  std::vector<double> theta = {0.8, -1.1};
  Tape tape;
  tape.bind(theta);
  NodeId f1 = build_expr(tape, 1);
  NodeId f2 = build_expr(tape, 2);

  const double a = 2.25, b = -0.5;
  std::vector<double> g1(2, 0.0), g2(2, 0.0), gc(2, 0.0);
  tape.begin_adjoint();
  tape.seed_value(f1, 1.0);
  tape.backward_into(g1);
  tape.begin_adjoint();
  tape.seed_value(f2, 1.0);
  tape.backward_into(g2);
  tape.begin_adjoint();
  tape.seed_value(f1, a);
  tape.seed_value(f2, b);
  tape.backward_into(gc);

  for (int i = 0; i < 2; ++i) {
    const double want = a * g1[i] + b * g2[i];
    CHECK(gc[i] == doctest::Approx(want).epsilon(1e-13));
  }
}

TEST_CASE("tape gradient matches finite differences of the recorded function") {
  std::vector<double> theta = {0.8, -1.1};
  auto eval = [&](const std::vector<double>& th) {
    Tape t;
    t.bind(th);
    return t.value(build_expr(t, 3));
  };
  Tape tape;
  tape.bind(theta);
  NodeId f = build_expr(tape, 3);
  auto grad = tape_backward(tape, f);

  const double h = 1e-6;
  for (int i = 0; i < 2; ++i) {
    auto tp = theta, tm = theta;
    tp[static_cast<std::size_t>(i)] += h;
    tm[static_cast<std::size_t>(i)] -= h;
    const double fdg = (eval(tp) - eval(tm)) / (2 * h);
    CHECK(grad[static_cast<std::size_t>(i)] == doctest::Approx(fdg).epsilon(1e-6));
  }
}

TEST_CASE("affine row matches explicit scale-and-add chains") {
  // 4 inputs, weights + bias from theta
  std::vector<double> theta = {0.5, -1.25, 2.0, 0.75, 0.3};
  Rng rng(11);
  Tape tape;
  tape.bind(theta);
  NodeId first = -1;
  for (int i = 0; i < 4; ++i) {
    NodeId id = tape.input(jd::unary(UnaryOp::Tanh, jd::var(rng.uniform(-1, 1), i % 3)));
    if (i == 0) first = id;
  }
  NodeId row = tape.affine_row(first, 4, 0);

  NodeId acc = tape.constant(theta[4]);
  for (int i = 0; i < 4; ++i) acc = tape.add(acc, tape.mul(tape.param(i), first + i));

  const Jet2& a = tape.jet(row);
  const Jet2& b = tape.jet(acc);
  CHECK(a.v == doctest::Approx(b.v).epsilon(1e-15));
  for (int i = 0; i < 3; ++i) CHECK(a.g[i] == doctest::Approx(b.g[i]).epsilon(1e-15));
  for (int s = 0; s < 6; ++s) CHECK(a.h[s] == doctest::Approx(b.h[s]).epsilon(1e-15));

  // gradients agree too (square both, compare dF/dtheta)
  NodeId sq_row = tape.square(row);
  NodeId sq_acc = tape.square(acc);
  std::vector<double> gr(5, 0.0), gc(5, 0.0);
  tape.begin_adjoint();
  tape.seed_value(sq_row, 1.0);
  tape.backward_into(gr);
  tape.begin_adjoint();
  tape.seed_value(sq_acc, 1.0);
  tape.backward_into(gc);
  for (int i = 0; i < 5; ++i) CHECK(gr[static_cast<std::size_t>(i)] ==
                                    doctest::Approx(gc[static_cast<std::size_t>(i)]).epsilon(1e-13));
}
