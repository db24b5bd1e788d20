#pragma once
#include "jetpinn/jet.hpp"
#include "jetpinn/tape.hpp"

namespace jetpinn {

// Two interchangeable scalar algebras: JetAlg evaluates immediately on Jet2
// (exact solutions, oracles, error grids); TapeAlg records the same ops on a
// Tape (training). Residual formulas are written once against either.

struct JetAlg {
  using S = Jet2;
  S c(double v) const { return jd::constant(v); }
  S add(const S& a, const S& b) const { return jd::add(a, b); }
  S sub(const S& a, const S& b) const { return jd::sub(a, b); }
  S mul(const S& a, const S& b) const { return jd::mul(a, b); }
  S div(const S& a, const S& b) const { return jd::div(a, b); }
  S neg(const S& a) const { return jd::neg(a); }
  S scale(const S& a, double k) const { return jd::scale(a, k); }
  S unary(UnaryOp op, const S& a) const { return jd::unary(op, a); }
  S pick_grad(const S& a, int axis) const { return jd::pick_grad(a, axis); }
  S pick_hess(const S& a, int i, int j) const { return jd::pick_hess(a, i, j); }
  double value(const S& a) const { return a.v; }
};

struct TapeAlg {
  Tape* tape;
  using S = NodeId;
  S c(double v) const { return tape->constant(v); }
  S add(S a, S b) const { return tape->add(a, b); }
  S sub(S a, S b) const { return tape->sub(a, b); }
  S mul(S a, S b) const { return tape->mul(a, b); }
  S div(S a, S b) const { return tape->div(a, b); }
  S neg(S a) const { return tape->neg(a); }
  S scale(S a, double k) const { return tape->mul(tape->constant(k), a); }
  S unary(UnaryOp op, S a) const { return tape->unary(op, a); }
  S pick_grad(S a, int axis) const { return tape->pick_grad(a, axis); }
  S pick_hess(S a, int i, int j) const { return tape->pick_hess(a, i, j); }
  double value(S a) const { return tape->value(a); }
};

// Thin expression wrapper so residual formulas read like the math.
template <class A>
struct Ex {
  const A* alg;
  typename A::S s;
};

template <class A>
Ex<A> operator+(const Ex<A>& x, const Ex<A>& y) { return {x.alg, x.alg->add(x.s, y.s)}; }
template <class A>
Ex<A> operator-(const Ex<A>& x, const Ex<A>& y) { return {x.alg, x.alg->sub(x.s, y.s)}; }
template <class A>
Ex<A> operator*(const Ex<A>& x, const Ex<A>& y) { return {x.alg, x.alg->mul(x.s, y.s)}; }
template <class A>
Ex<A> operator/(const Ex<A>& x, const Ex<A>& y) { return {x.alg, x.alg->div(x.s, y.s)}; }
template <class A>
Ex<A> operator-(const Ex<A>& x) { return {x.alg, x.alg->neg(x.s)}; }
template <class A>
Ex<A> operator*(double k, const Ex<A>& x) { return {x.alg, x.alg->scale(x.s, k)}; }
template <class A>
Ex<A> operator-(const Ex<A>& x, double k) { return {x.alg, x.alg->sub(x.s, x.alg->c(k))}; }

template <class A>
Ex<A> exp(const Ex<A>& x) { return {x.alg, x.alg->unary(UnaryOp::Exp, x.s)}; }
template <class A>
Ex<A> sin(const Ex<A>& x) { return {x.alg, x.alg->unary(UnaryOp::Sin, x.s)}; }
template <class A>
Ex<A> cos(const Ex<A>& x) { return {x.alg, x.alg->unary(UnaryOp::Cos, x.s)}; }
template <class A>
Ex<A> tanh(const Ex<A>& x) { return {x.alg, x.alg->unary(UnaryOp::Tanh, x.s)}; }
template <class A>
Ex<A> square(const Ex<A>& x) { return {x.alg, x.alg->unary(UnaryOp::Square, x.s)}; }

template <class A>
Ex<A> dx(const Ex<A>& x) { return {x.alg, x.alg->pick_grad(x.s, 0)}; }
template <class A>
Ex<A> dy(const Ex<A>& x) { return {x.alg, x.alg->pick_grad(x.s, 1)}; }
template <class A>
Ex<A> dt(const Ex<A>& x) { return {x.alg, x.alg->pick_grad(x.s, 2)}; }
template <class A>
Ex<A> dtt(const Ex<A>& x) { return {x.alg, x.alg->pick_hess(x.s, 2, 2)}; }

}  // namespace jetpinn
