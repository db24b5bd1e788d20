#pragma once
#include <array>
#include <cmath>
#include <stdexcept>

namespace jetpinn {

// Second-order jet of a scalar with respect to the space-time input (x, y, t):
// the value, the 3-gradient, and the symmetric 3x3 Hessian stored as its 6
// unique entries. All residual evaluation runs on these.
struct Jet2 {
  double v = 0.0;
  std::array<double, 3> g{0.0, 0.0, 0.0};
  std::array<double, 6> h{0.0, 0.0, 0.0, 0.0, 0.0, 0.0};  // xx,xy,xt,yy,yt,tt

  static constexpr int hslot(int i, int j) {
    constexpr int tab[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
    return tab[i][j];
  }
  double hess(int i, int j) const { return h[hslot(i, j)]; }
  void add_hess(int i, int j, double val) { h[hslot(i, j)] += val; }
};

// Row/col of each Hessian slot.
inline constexpr std::array<int, 6> kHessRow = {0, 0, 0, 1, 1, 2};
inline constexpr std::array<int, 6> kHessCol = {0, 1, 2, 1, 2, 2};

enum class UnaryOp { Neg, Square, Tanh, Exp, Sin, Cos };
enum class BinaryOp { Add, Sub, Mul, Div };

namespace jd {  // unchecked jet math

inline Jet2 constant(double c) {
  Jet2 r;
  r.v = c;
  return r;
}

inline Jet2 var(double value, int axis) {
  Jet2 r;
  r.v = value;
  r.g[axis] = 1.0;
  return r;
}

inline Jet2 add(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.v = a.v + b.v;
  for (int i = 0; i < 3; ++i) r.g[i] = a.g[i] + b.g[i];
  for (int s = 0; s < 6; ++s) r.h[s] = a.h[s] + b.h[s];
  return r;
}

inline Jet2 sub(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.v = a.v - b.v;
  for (int i = 0; i < 3; ++i) r.g[i] = a.g[i] - b.g[i];
  for (int s = 0; s < 6; ++s) r.h[s] = a.h[s] - b.h[s];
  return r;
}

inline Jet2 neg(const Jet2& a) {
  Jet2 r;
  r.v = -a.v;
  for (int i = 0; i < 3; ++i) r.g[i] = -a.g[i];
  for (int s = 0; s < 6; ++s) r.h[s] = -a.h[s];
  return r;
}

inline Jet2 scale(const Jet2& a, double c) {
  Jet2 r;
  r.v = c * a.v;
  for (int i = 0; i < 3; ++i) r.g[i] = c * a.g[i];
  for (int s = 0; s < 6; ++s) r.h[s] = c * a.h[s];
  return r;
}

inline Jet2 mul(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.v = a.v * b.v;
  for (int i = 0; i < 3; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
  for (int s = 0; s < 6; ++s) {
    const int i = kHessRow[s], j = kHessCol[s];
    r.h[s] = a.h[s] * b.v + a.g[i] * b.g[j] + a.g[j] * b.g[i] + a.v * b.h[s];
  }
  return r;
}

// c = a / b, obtained by inverting a = c * b order by order.
inline Jet2 div(const Jet2& a, const Jet2& b) {
  Jet2 r;
  const double inv = 1.0 / b.v;
  r.v = a.v * inv;
  for (int i = 0; i < 3; ++i) r.g[i] = (a.g[i] - r.v * b.g[i]) * inv;
  for (int s = 0; s < 6; ++s) {
    const int i = kHessRow[s], j = kHessCol[s];
    r.h[s] = (a.h[s] - r.g[i] * b.g[j] - r.g[j] * b.g[i] - r.v * b.h[s]) * inv;
  }
  return r;
}

// Derivatives f', f'', f''' of the unary primitives; f''' feeds the reverse
// pass, where Hessian adjoints reach one order deeper.
struct UnaryDerivs {
  double f0, f1, f2, f3;
};

inline UnaryDerivs unary_derivs(UnaryOp op, double x) {
  switch (op) {
    case UnaryOp::Neg:
      return {-x, -1.0, 0.0, 0.0};
    case UnaryOp::Square:
      return {x * x, 2.0 * x, 2.0, 0.0};
    case UnaryOp::Tanh: {
      const double t = std::tanh(x);
      const double s = 1.0 - t * t;  // sech^2
      return {t, s, -2.0 * t * s, -2.0 * s * (1.0 - 3.0 * t * t)};
    }
    case UnaryOp::Exp: {
      const double e = std::exp(x);
      return {e, e, e, e};
    }
    case UnaryOp::Sin:
      return {std::sin(x), std::cos(x), -std::sin(x), -std::cos(x)};
    case UnaryOp::Cos:
      return {std::cos(x), -std::sin(x), -std::cos(x), std::sin(x)};
  }
  return {0, 0, 0, 0};
}

inline Jet2 unary(UnaryOp op, const Jet2& a) {
  const UnaryDerivs d = unary_derivs(op, a.v);
  Jet2 r;
  r.v = d.f0;
  for (int i = 0; i < 3; ++i) r.g[i] = d.f1 * a.g[i];
  for (int s = 0; s < 6; ++s)
    r.h[s] = d.f2 * a.g[kHessRow[s]] * a.g[kHessCol[s]] + d.f1 * a.h[s];
  return r;
}

// Derivative shift: the scalar field (d/d axis) of a, with its own gradient
// taken from a's Hessian row. The result's Hessian is not recoverable from a
// second-order jet and is set to zero; nothing downstream may read it.
inline Jet2 pick_grad(const Jet2& a, int axis) {
  Jet2 r;
  r.v = a.g[axis];
  for (int k = 0; k < 3; ++k) r.g[k] = a.h[Jet2::hslot(axis, k)];
  return r;
}

inline Jet2 pick_hess(const Jet2& a, int i, int j) {
  Jet2 r;
  r.v = a.h[Jet2::hslot(i, j)];
  return r;
}

}  // namespace jd

// Checked entry points matching the enumerated primitive set.

inline Jet2 jet_var(double value, int axis) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("jet_var: axis must be 0, 1, or 2");
  return jd::var(value, axis);
}

inline Jet2 jet_const(double c) { return jd::constant(c); }

inline Jet2 jet_binary(BinaryOp op, const Jet2& a, const Jet2& b) {
  Jet2 r;
  switch (op) {
    case BinaryOp::Add: r = jd::add(a, b); break;
    case BinaryOp::Sub: r = jd::sub(a, b); break;
    case BinaryOp::Mul: r = jd::mul(a, b); break;
    case BinaryOp::Div:
      if (b.v == 0.0) throw std::domain_error("jet_binary: division by zero value");
      r = jd::div(a, b);
      break;
  }
  if (!std::isfinite(r.v)) throw std::overflow_error("jet_binary: non-finite result");
  return r;
}

inline Jet2 jet_unary(UnaryOp op, const Jet2& a) {
  Jet2 r = jd::unary(op, a);
  if (!std::isfinite(r.v)) throw std::overflow_error("jet_unary: non-finite result");
  return r;
}

inline Jet2 jet_add(const Jet2& a, const Jet2& b) { return jet_binary(BinaryOp::Add, a, b); }
inline Jet2 jet_sub(const Jet2& a, const Jet2& b) { return jet_binary(BinaryOp::Sub, a, b); }
inline Jet2 jet_mul(const Jet2& a, const Jet2& b) { return jet_binary(BinaryOp::Mul, a, b); }
inline Jet2 jet_div(const Jet2& a, const Jet2& b) { return jet_binary(BinaryOp::Div, a, b); }
inline Jet2 jet_tanh(const Jet2& a) { return jet_unary(UnaryOp::Tanh, a); }
inline Jet2 jet_exp(const Jet2& a) { return jet_unary(UnaryOp::Exp, a); }
inline Jet2 jet_sin(const Jet2& a) { return jet_unary(UnaryOp::Sin, a); }
inline Jet2 jet_cos(const Jet2& a) { return jet_unary(UnaryOp::Cos, a); }
inline Jet2 jet_neg(const Jet2& a) { return jet_unary(UnaryOp::Neg, a); }
inline Jet2 jet_square(const Jet2& a) { return jet_unary(UnaryOp::Square, a); }

}  // namespace jetpinn
