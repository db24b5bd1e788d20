#pragma once
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "jetpinn/jet.hpp"

namespace jetpinn {

using NodeId = std::int32_t;

// Append-only record of jet-valued operations. Forward values are computed at
// record time; one reverse sweep propagates 10-component adjoints (value +
// gradient + Hessian slots) from seeded nodes down to parameter slots.
//
// Contiguity of ids within a layer lets AffineRow fuse a whole dot product
// (weights + bias against a run of input nodes) into a single node, which is
// where nearly all of the training flops live.
class Tape {
public:
  enum class Op : std::uint8_t {
    Input,      // seeded jet leaf
    Const,      // literal scalar
    Param,      // parameter leaf, aux = slot in theta
    Add, Sub, Mul, Div, Neg, Square, Tanh, Exp, Sin, Cos,
    PickGrad,   // aux0 = axis
    PickHess,   // aux0 = Hessian slot
    AffineRow,  // a = first input id, b = input count, aux = theta slot base
  };

  struct Node {
    Op op;
    std::uint8_t aux0 = 0;
    NodeId a = -1;
    NodeId b = -1;
    std::int32_t aux = -1;
    Jet2 jet;
  };

  void bind(std::span<const double> theta) {
    theta_ = theta.data();
    n_theta_ = theta.size();
  }
  std::size_t n_params() const { return n_theta_; }

  void clear() { nodes_.clear(); }
  std::size_t size() const { return nodes_.size(); }
  const Node& node(NodeId id) const { return nodes_[static_cast<std::size_t>(id)]; }
  const Jet2& jet(NodeId id) const { return nodes_[static_cast<std::size_t>(id)].jet; }
  double value(NodeId id) const { return jet(id).v; }

  NodeId input(const Jet2& seeded) { return push(Op::Input, -1, -1, -1, seeded); }
  NodeId input_var(double value, int axis) { return input(jd::var(value, axis)); }
  NodeId constant(double c) { return push(Op::Const, -1, -1, -1, jd::constant(c)); }

  NodeId param(std::int32_t slot) {
    if (slot < 0 || static_cast<std::size_t>(slot) >= n_theta_)
      throw std::invalid_argument("Tape::param: slot out of range");
    return push(Op::Param, -1, -1, slot, jd::constant(theta_[slot]));
  }

  NodeId add(NodeId a, NodeId b) { return push(Op::Add, a, b, -1, jd::add(jet(a), jet(b))); }
  NodeId sub(NodeId a, NodeId b) { return push(Op::Sub, a, b, -1, jd::sub(jet(a), jet(b))); }
  NodeId mul(NodeId a, NodeId b) { return push(Op::Mul, a, b, -1, jd::mul(jet(a), jet(b))); }

  NodeId div(NodeId a, NodeId b) {
    if (jet(b).v == 0.0) throw std::domain_error("Tape::div: division by zero value");
    return push(Op::Div, a, b, -1, jd::div(jet(a), jet(b)));
  }

  NodeId unary(UnaryOp u, NodeId a) {
    return push(unary_op(u), a, -1, -1, jd::unary(u, jet(a)));
  }
  NodeId neg(NodeId a) { return unary(UnaryOp::Neg, a); }
  NodeId square(NodeId a) { return unary(UnaryOp::Square, a); }
  NodeId tanh_(NodeId a) { return unary(UnaryOp::Tanh, a); }

  NodeId pick_grad(NodeId a, int axis) {
    Node n = make(Op::PickGrad, a, -1, -1, jd::pick_grad(jet(a), axis));
    n.aux0 = static_cast<std::uint8_t>(axis);
    nodes_.push_back(n);
    return last_id();
  }

  NodeId pick_hess(NodeId a, int i, int j) {
    Node n = make(Op::PickHess, a, -1, -1, jd::pick_hess(jet(a), i, j));
    n.aux0 = static_cast<std::uint8_t>(Jet2::hslot(i, j));
    nodes_.push_back(n);
    return last_id();
  }

  // out = sum_i theta[slot_base + i] * node(first + i) + theta[slot_base + count]
  NodeId affine_row(NodeId first, std::int32_t count, std::int32_t slot_base) {
    const double* w = theta_ + slot_base;
    Jet2 acc = jd::constant(w[count]);
    for (std::int32_t i = 0; i < count; ++i) {
      const Jet2& x = jet(first + i);
      const double wi = w[i];
      acc.v += wi * x.v;
      for (int k = 0; k < 3; ++k) acc.g[k] += wi * x.g[k];
      for (int s = 0; s < 6; ++s) acc.h[s] += wi * x.h[s];
    }
    return push(Op::AffineRow, first, count, slot_base, acc);
  }

  // Adjoint workflow: begin_adjoint, seed one or more nodes, then
  // backward_into accumulates dF/dtheta into `grad` (+=, caller zeroes).
  void begin_adjoint() { adj_.assign(nodes_.size(), Jet2{}); }

  void seed_value(NodeId id, double w) {
    check_on_tape(id);
    if (static_cast<std::size_t>(id) >= adj_.size())
      throw std::invalid_argument("Tape: node recorded after begin_adjoint");
    adj_[static_cast<std::size_t>(id)].v += w;
  }

  void backward_into(std::span<double> grad);

private:
  static Op unary_op(UnaryOp u) {
    switch (u) {
      case UnaryOp::Neg: return Op::Neg;
      case UnaryOp::Square: return Op::Square;
      case UnaryOp::Tanh: return Op::Tanh;
      case UnaryOp::Exp: return Op::Exp;
      case UnaryOp::Sin: return Op::Sin;
      case UnaryOp::Cos: return Op::Cos;
    }
    return Op::Neg;
  }

  static Node make(Op op, NodeId a, NodeId b, std::int32_t aux, const Jet2& jet) {
    Node n;
    n.op = op;
    n.a = a;
    n.b = b;
    n.aux = aux;
    n.jet = jet;
    return n;
  }

  NodeId push(Op op, NodeId a, NodeId b, std::int32_t aux, const Jet2& jet) {
    nodes_.push_back(make(op, a, b, aux, jet));
    return last_id();
  }

  NodeId last_id() const { return static_cast<NodeId>(nodes_.size() - 1); }

  void check_on_tape(NodeId id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= nodes_.size())
      throw std::invalid_argument("Tape: node id not on tape");
  }

  std::vector<Node> nodes_;
  std::vector<Jet2> adj_;
  const double* theta_ = nullptr;
  std::size_t n_theta_ = 0;
};

// dF/dtheta for a scalar loss node: adjoint seeded with 1 on the value
// component, 0 on gradient/Hessian components.
std::vector<double> tape_backward(Tape& tape, NodeId loss_node);

}  // namespace jetpinn
