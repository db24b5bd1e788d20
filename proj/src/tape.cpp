#include "jetpinn/tape.hpp"

namespace jetpinn {

namespace {

inline bool adj_zero(const Jet2& w) {
  double s = std::abs(w.v);
  for (int i = 0; i < 3; ++i) s += std::abs(w.g[i]);
  for (int i = 0; i < 6; ++i) s += std::abs(w.h[i]);
  return s == 0.0;
}

inline void axpy10(Jet2& dst, double c, const Jet2& w) {
  dst.v += c * w.v;
  for (int i = 0; i < 3; ++i) dst.g[i] += c * w.g[i];
  for (int s = 0; s < 6; ++s) dst.h[s] += c * w.h[s];
}

inline double dot10(const Jet2& a, const Jet2& b) {
  double s = a.v * b.v;
  for (int i = 0; i < 3; ++i) s += a.g[i] * b.g[i];
  for (int k = 0; k < 6; ++k) s += a.h[k] * b.h[k];
  return s;
}

// c = a * b:
//   c.v   = a.v b.v
//   c.g_i = a.g_i b.v + a.v b.g_i
//   c.h_s = a.h_s b.v + a.g_i b.g_j + a.g_j b.g_i + a.v b.h_s   (s = (i,j))
inline void backward_mul(const Jet2& a, const Jet2& b, const Jet2& w, Jet2& wa, Jet2& wb) {
  wa.v += w.v * b.v;
  wb.v += w.v * a.v;
  for (int i = 0; i < 3; ++i) {
    wa.v += w.g[i] * b.g[i];
    wb.v += w.g[i] * a.g[i];
    wa.g[i] += w.g[i] * b.v;
    wb.g[i] += w.g[i] * a.v;
  }
  for (int s = 0; s < 6; ++s) {
    const int i = kHessRow[s], j = kHessCol[s];
    const double ws = w.h[s];
    wa.h[s] += ws * b.v;
    wb.h[s] += ws * a.v;
    wa.v += ws * b.h[s];
    wb.v += ws * a.h[s];
    wa.g[i] += ws * b.g[j];
    wa.g[j] += ws * b.g[i];
    wb.g[i] += ws * a.g[j];
    wb.g[j] += ws * a.g[i];
  }
}

// Reverse of the recurrences in jd::div, using the stored output jet c:
//   c.v   = a.v / b.v
//   c.g_i = (a.g_i - c.v b.g_i) / b.v
//   c.h_s = (a.h_s - c.g_i b.g_j - c.g_j b.g_i - c.v b.h_s) / b.v
inline void backward_div(const Jet2& a, const Jet2& b, const Jet2& c, const Jet2& w,
                         Jet2& wa, Jet2& wb) {
  (void)a;
  const double inv = 1.0 / b.v;
  double wv = w.v;                               // adjoint of c.v
  std::array<double, 3> wg = w.g;                // adjoint of c.g
  for (int s = 0; s < 6; ++s) {
    const int i = kHessRow[s], j = kHessCol[s];
    const double ws = w.h[s] * inv;
    wa.h[s] += ws;
    wg[i] -= ws * b.g[j];
    wg[j] -= ws * b.g[i];
    wv -= ws * b.h[s];
    wb.h[s] -= ws * c.v;
    wb.g[j] -= ws * c.g[i];
    wb.g[i] -= ws * c.g[j];
    wb.v -= ws * c.h[s];
  }
  for (int i = 0; i < 3; ++i) {
    const double wi = wg[i] * inv;
    wa.g[i] += wi;
    wv -= wi * b.g[i];
    wb.g[i] -= wi * c.v;
    wb.v -= wi * c.g[i];
  }
  wa.v += wv * inv;
  wb.v -= wv * inv * c.v;
}

// c.v = f(a.v); c.g_i = f' a.g_i; c.h_s = f'' a.g_i a.g_j + f' a.h_s
inline void backward_unary(UnaryOp op, const Jet2& a, const Jet2& w, Jet2& wa) {
  const jd::UnaryDerivs d = jd::unary_derivs(op, a.v);
  double wv = w.v * d.f1;
  for (int i = 0; i < 3; ++i) {
    wa.g[i] += d.f1 * w.g[i];
    wv += d.f2 * w.g[i] * a.g[i];
  }
  for (int s = 0; s < 6; ++s) {
    const int i = kHessRow[s], j = kHessCol[s];
    const double ws = w.h[s];
    wa.h[s] += d.f1 * ws;
    wa.g[i] += d.f2 * ws * a.g[j];
    wa.g[j] += d.f2 * ws * a.g[i];
    wv += ws * (d.f3 * a.g[i] * a.g[j] + d.f2 * a.h[s]);
  }
  wa.v += wv;
}

inline UnaryOp to_unary(Tape::Op op) {
  switch (op) {
    case Tape::Op::Neg: return UnaryOp::Neg;
    case Tape::Op::Square: return UnaryOp::Square;
    case Tape::Op::Tanh: return UnaryOp::Tanh;
    case Tape::Op::Exp: return UnaryOp::Exp;
    case Tape::Op::Sin: return UnaryOp::Sin;
    default: return UnaryOp::Cos;
  }
}

}  // namespace

void Tape::backward_into(std::span<double> grad) {
  if (adj_.size() != nodes_.size())
    throw std::invalid_argument("Tape::backward_into: begin_adjoint not called");
  for (std::int32_t idx = static_cast<std::int32_t>(nodes_.size()) - 1; idx >= 0; --idx) {
    const Node& n = nodes_[static_cast<std::size_t>(idx)];
    const Jet2& w = adj_[static_cast<std::size_t>(idx)];
    if (adj_zero(w)) continue;
    switch (n.op) {
      case Op::Input:
      case Op::Const:
        break;
      case Op::Param:
        grad[static_cast<std::size_t>(n.aux)] += w.v;
        break;
      case Op::Add:
        axpy10(adj_[static_cast<std::size_t>(n.a)], 1.0, w);
        axpy10(adj_[static_cast<std::size_t>(n.b)], 1.0, w);
        break;
      case Op::Sub:
        axpy10(adj_[static_cast<std::size_t>(n.a)], 1.0, w);
        axpy10(adj_[static_cast<std::size_t>(n.b)], -1.0, w);
        break;
      case Op::Mul:
        backward_mul(nodes_[static_cast<std::size_t>(n.a)].jet,
                     nodes_[static_cast<std::size_t>(n.b)].jet, w,
                     adj_[static_cast<std::size_t>(n.a)], adj_[static_cast<std::size_t>(n.b)]);
        break;
      case Op::Div:
        backward_div(nodes_[static_cast<std::size_t>(n.a)].jet,
                     nodes_[static_cast<std::size_t>(n.b)].jet, n.jet, w,
                     adj_[static_cast<std::size_t>(n.a)], adj_[static_cast<std::size_t>(n.b)]);
        break;
      case Op::Neg:
      case Op::Square:
      case Op::Tanh:
      case Op::Exp:
      case Op::Sin:
      case Op::Cos:
        backward_unary(to_unary(n.op), nodes_[static_cast<std::size_t>(n.a)].jet, w,
                       adj_[static_cast<std::size_t>(n.a)]);
        break;
      case Op::PickGrad: {
        Jet2& wa = adj_[static_cast<std::size_t>(n.a)];
        const int axis = n.aux0;
        wa.g[axis] += w.v;
        for (int k = 0; k < 3; ++k) wa.h[Jet2::hslot(axis, k)] += w.g[k];
        break;
      }
      case Op::PickHess:
        adj_[static_cast<std::size_t>(n.a)].h[n.aux0] += w.v;
        break;
      case Op::AffineRow: {
        const double* wt = theta_ + n.aux;
        double* gr = grad.data() + n.aux;
        for (std::int32_t i = 0; i < n.b; ++i) {
          const Jet2& x = nodes_[static_cast<std::size_t>(n.a + i)].jet;
          axpy10(adj_[static_cast<std::size_t>(n.a + i)], wt[i], w);
          gr[i] += dot10(w, x);
        }
        gr[n.b] += w.v;
        break;
      }
    }
  }
}

std::vector<double> tape_backward(Tape& tape, NodeId loss_node) {
  std::vector<double> grad(tape.n_params(), 0.0);
  tape.begin_adjoint();
  tape.seed_value(loss_node, 1.0);
  tape.backward_into(grad);
  return grad;
}

}  // namespace jetpinn
