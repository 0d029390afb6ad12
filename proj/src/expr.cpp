#include "kst/expr.hpp"

#include <charconv>
#include <cmath>

namespace kst {

struct ScalarExpr::Node {
  ExprOp op;
  double number = 0.0;  // Constant value, Coord axis, or PowConst exponent
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
  bool has_coords = false;
};

ScalarExpr ScalarExpr::constant(double v) {
  auto n = std::make_shared<Node>();
  n->op = ExprOp::Constant;
  n->number = v;
  return ScalarExpr(std::move(n));
}

ScalarExpr ScalarExpr::coordinate(int axis) {
  if (axis < 0 || axis > 3) throw IndexError("coordinate axis out of range");
  auto n = std::make_shared<Node>();
  n->op = ExprOp::Coord;
  n->number = axis;
  n->has_coords = true;
  return ScalarExpr(std::move(n));
}

ScalarExpr ScalarExpr::unary(ExprOp op, ScalarExpr operand) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(operand.node_);
  n->has_coords = n->a->has_coords;
  return ScalarExpr(std::move(n));
}

ScalarExpr ScalarExpr::binary(ExprOp op, ScalarExpr lhs, ScalarExpr rhs) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(lhs.node_);
  n->b = std::move(rhs.node_);
  n->has_coords = n->a->has_coords || n->b->has_coords;
  return ScalarExpr(std::move(n));
}

ScalarExpr ScalarExpr::pow(ScalarExpr base, double exponent) {
  auto n = std::make_shared<Node>();
  n->op = ExprOp::PowConst;
  n->number = exponent;
  n->a = std::move(base.node_);
  n->has_coords = n->a->has_coords;
  return ScalarExpr(std::move(n));
}

ExprOp ScalarExpr::op() const { return node_->op; }
double ScalarExpr::constant_value() const { return node_->number; }
int ScalarExpr::coord_axis() const { return static_cast<int>(node_->number); }
double ScalarExpr::exponent() const { return node_->number; }

ScalarExpr ScalarExpr::child(int i) const {
  auto c = (i == 0) ? node_->a : node_->b;
  if (!c) throw IndexError("expression child out of range");
  return ScalarExpr(std::move(c));
}

int ScalarExpr::child_count() const {
  if (node_->b) return 2;
  if (node_->a) return 1;
  return 0;
}

bool ScalarExpr::depends_on_coords() const { return node_->has_coords; }

bool ScalarExpr::is_constant_zero() const {
  return node_->op == ExprOp::Constant && node_->number == 0.0;
}

namespace {

Jet3 eval_node(const ScalarExpr& e, const Point& p) {
  switch (e.op()) {
    case ExprOp::Constant: return Jet3::constant(e.constant_value());
    case ExprOp::Coord: return Jet3::coordinate(e.coord_axis(), p[e.coord_axis()]);
    case ExprOp::Neg: return -eval_node(e.child(0), p);
    case ExprOp::Exp: return jet_exp(eval_node(e.child(0), p));
    case ExprOp::Ln: return jet_ln(eval_node(e.child(0), p));
    case ExprOp::Sin: return jet_sin(eval_node(e.child(0), p));
    case ExprOp::Cos: return jet_cos(eval_node(e.child(0), p));
    case ExprOp::Sinh: return jet_sinh(eval_node(e.child(0), p));
    case ExprOp::Cosh: return jet_cosh(eval_node(e.child(0), p));
    case ExprOp::Sqrt: return jet_sqrt(eval_node(e.child(0), p));
    case ExprOp::Add: return eval_node(e.child(0), p) + eval_node(e.child(1), p);
    case ExprOp::Sub: return eval_node(e.child(0), p) - eval_node(e.child(1), p);
    case ExprOp::Mul: return eval_node(e.child(0), p) * eval_node(e.child(1), p);
    case ExprOp::Div: return eval_node(e.child(0), p) / eval_node(e.child(1), p);
    case ExprOp::PowConst: return jet_pow(eval_node(e.child(0), p), e.exponent());
  }
  throw Error(ErrorKind::Internal, "unreachable expression op");
}

double eval_value_node(const ScalarExpr& e, const Point& p) {
  switch (e.op()) {
    case ExprOp::Constant: return e.constant_value();
    case ExprOp::Coord: return p[e.coord_axis()];
    case ExprOp::Neg: return -eval_value_node(e.child(0), p);
    case ExprOp::Exp: return std::exp(eval_value_node(e.child(0), p));
    case ExprOp::Ln: {
      double v = eval_value_node(e.child(0), p);
      if (!(v > 0.0)) throw DomainError("ln of non-positive argument");
      return std::log(v);
    }
    case ExprOp::Sin: return std::sin(eval_value_node(e.child(0), p));
    case ExprOp::Cos: return std::cos(eval_value_node(e.child(0), p));
    case ExprOp::Sinh: return std::sinh(eval_value_node(e.child(0), p));
    case ExprOp::Cosh: return std::cosh(eval_value_node(e.child(0), p));
    case ExprOp::Sqrt: {
      double v = eval_value_node(e.child(0), p);
      if (!(v > 0.0)) throw DomainError("sqrt of non-positive argument");
      return std::sqrt(v);
    }
    case ExprOp::Add: return eval_value_node(e.child(0), p) + eval_value_node(e.child(1), p);
    case ExprOp::Sub: return eval_value_node(e.child(0), p) - eval_value_node(e.child(1), p);
    case ExprOp::Mul: return eval_value_node(e.child(0), p) * eval_value_node(e.child(1), p);
    case ExprOp::Div: {
      double num = eval_value_node(e.child(0), p);
      double den = eval_value_node(e.child(1), p);
      if (den == 0.0) throw DomainError("division by zero");
      return num / den;
    }
    case ExprOp::PowConst: {
      double v = eval_value_node(e.child(0), p);
      double c = e.exponent();
      bool integral = c == std::floor(c) && std::isfinite(c);
      if (!integral && !(v > 0.0))
        throw DomainError("pow of non-positive base with non-integer exponent");
      if (integral && v == 0.0 && c < 0.0)
        throw DomainError("pow of zero base with negative exponent");
      return std::pow(v, c);
    }
  }
  throw Error(ErrorKind::Internal, "unreachable expression op");
}

std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void print_node(const ScalarExpr& e, std::string& out) {
  switch (e.op()) {
    case ExprOp::Constant: {
      double v = e.constant_value();
      if (v < 0.0 || (v == 0.0 && std::signbit(v))) {
        out += "(-";
        out += format_double(-v);
        out += ')';
      } else {
        out += format_double(v);
      }
      return;
    }
    case ExprOp::Coord:
      out += 'x';
      out += static_cast<char>('0' + e.coord_axis());
      return;
    case ExprOp::Neg:
      out += "(-";
      print_node(e.child(0), out);
      out += ')';
      return;
    case ExprOp::Exp:
    case ExprOp::Ln:
    case ExprOp::Sin:
    case ExprOp::Cos:
    case ExprOp::Sinh:
    case ExprOp::Cosh:
    case ExprOp::Sqrt: {
      switch (e.op()) {
        case ExprOp::Exp: out += "exp"; break;
        case ExprOp::Ln: out += "ln"; break;
        case ExprOp::Sin: out += "sin"; break;
        case ExprOp::Cos: out += "cos"; break;
        case ExprOp::Sinh: out += "sinh"; break;
        case ExprOp::Cosh: out += "cosh"; break;
        default: out += "sqrt"; break;
      }
      out += '(';
      print_node(e.child(0), out);
      out += ')';
      return;
    }
    case ExprOp::Add:
    case ExprOp::Sub:
    case ExprOp::Mul:
    case ExprOp::Div: {
      char sym = e.op() == ExprOp::Add   ? '+'
                 : e.op() == ExprOp::Sub ? '-'
                 : e.op() == ExprOp::Mul ? '*'
                                         : '/';
      out += '(';
      print_node(e.child(0), out);
      out += sym;
      print_node(e.child(1), out);
      out += ')';
      return;
    }
    case ExprOp::PowConst: {
      out += '(';
      print_node(e.child(0), out);
      out += '^';
      double c = e.exponent();
      if (c < 0.0) {
        out += '-';
        out += format_double(-c);
      } else {
        out += format_double(c);
      }
      out += ')';
      return;
    }
  }
}

}  // namespace

std::string ScalarExpr::to_string() const {
  std::string out;
  print_node(*this, out);
  return out;
}

Jet3 eval_jet3(const ScalarExpr& expr, const Point& p) { return eval_node(expr, p); }

double eval_value(const ScalarExpr& expr, const Point& p) {
  return eval_value_node(expr, p);
}

}  // namespace kst
