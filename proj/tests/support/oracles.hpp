#pragma once

// Test-only oracles. Everything here is deliberately independent of the
// library's derivative machinery: values are computed by a plain recursive
// walk over the public AST, and all derivatives come from central finite
// differences of those values.

#include <cmath>
#include <functional>
#include <stdexcept>

#include "kst/expr.hpp"
#include "kst/geometry.hpp"

namespace oracle {

// Plain recursive evaluation of a ScalarExpr. Mirrors the documented node
// semantics; shares no code with eval_jet3.
inline double value(const kst::ScalarExpr& e, const kst::Point& p) {
  using kst::ExprOp;
  switch (e.op()) {
    case ExprOp::Constant: return e.constant_value();
    case ExprOp::Coord: return p[e.coord_axis()];
    case ExprOp::Neg: return -value(e.child(0), p);
    case ExprOp::Exp: return std::exp(value(e.child(0), p));
    case ExprOp::Ln: return std::log(value(e.child(0), p));
    case ExprOp::Sin: return std::sin(value(e.child(0), p));
    case ExprOp::Cos: return std::cos(value(e.child(0), p));
    case ExprOp::Sinh: return std::sinh(value(e.child(0), p));
    case ExprOp::Cosh: return std::cosh(value(e.child(0), p));
    case ExprOp::Sqrt: return std::sqrt(value(e.child(0), p));
    case ExprOp::Add: return value(e.child(0), p) + value(e.child(1), p);
    case ExprOp::Sub: return value(e.child(0), p) - value(e.child(1), p);
    case ExprOp::Mul: return value(e.child(0), p) * value(e.child(1), p);
    case ExprOp::Div: return value(e.child(0), p) / value(e.child(1), p);
    case ExprOp::PowConst: return std::pow(value(e.child(0), p), e.exponent());
  }
  throw std::logic_error("unreachable");
}

using ScalarFn = std::function<double(const kst::Point&)>;

inline kst::Point shifted(kst::Point p, int axis, double h) {
  p[axis] += h;
  return p;
}

inline double fd_grad(const ScalarFn& f, const kst::Point& p, int i, double h) {
  return (f(shifted(p, i, h)) - f(shifted(p, i, -h))) / (2.0 * h);
}

inline double fd_hess(const ScalarFn& f, const kst::Point& p, int i, int j, double h) {
  if (i == j)
    return (f(shifted(p, i, h)) - 2.0 * f(p) + f(shifted(p, i, -h))) / (h * h);
  auto pp = shifted(shifted(p, i, h), j, h);
  auto pm = shifted(shifted(p, i, h), j, -h);
  auto mp = shifted(shifted(p, i, -h), j, h);
  auto mm = shifted(shifted(p, i, -h), j, -h);
  return (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * h * h);
}

// Third partials as a first difference of fd_hess in the remaining axis.
inline double fd_third(const ScalarFn& f, const kst::Point& p, int i, int j, int k,
                       double h) {
  auto hess = [&](const kst::Point& q) { return fd_hess(f, q, j, k, h); };
  return (hess(shifted(p, i, h)) - hess(shifted(p, i, -h))) / (2.0 * h);
}

}  // namespace oracle
