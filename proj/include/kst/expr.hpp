#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>

#include "kst/errors.hpp"

namespace kst {

/// Chart point: four coordinates x0..x3.
struct Point {
  std::array<double, 4> coords{};

  double operator[](int i) const { return coords[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return coords[static_cast<std::size_t>(i)]; }
};

/// Value plus all partial derivatives through order 3 at a point, in 4
/// variables. Hessian and third-derivative blocks are stored canonically
/// (i<=j resp. i<=j<=k), so the symmetry invariants hold by construction.
struct Jet3 {
  double value = 0.0;
  std::array<double, 4> grad{};
  std::array<double, 10> hess{};    // canonical i<=j
  std::array<double, 20> third{};   // canonical i<=j<=k

  static constexpr int hess_index(int i, int j) {
    if (i > j) std::swap(i, j);
    return i * (7 - i) / 2 + j;
  }
  static int third_index(int i, int j, int k);

  double h(int i, int j) const { return hess[static_cast<std::size_t>(hess_index(i, j))]; }
  double& h(int i, int j) { return hess[static_cast<std::size_t>(hess_index(i, j))]; }
  double t(int i, int j, int k) const { return third[static_cast<std::size_t>(third_index(i, j, k))]; }
  double& t(int i, int j, int k) { return third[static_cast<std::size_t>(third_index(i, j, k))]; }

  static Jet3 constant(double v);
  static Jet3 coordinate(int axis, double v);
};

// Truncated order-3 Taylor arithmetic. All operations are pure.
Jet3 operator+(const Jet3& a, const Jet3& b);
Jet3 operator-(const Jet3& a, const Jet3& b);
Jet3 operator-(const Jet3& a);
Jet3 operator*(const Jet3& a, const Jet3& b);
Jet3 operator/(const Jet3& a, const Jet3& b);
Jet3 jet_exp(const Jet3& a);
Jet3 jet_ln(const Jet3& a);
Jet3 jet_sin(const Jet3& a);
Jet3 jet_cos(const Jet3& a);
Jet3 jet_sinh(const Jet3& a);
Jet3 jet_cosh(const Jet3& a);
Jet3 jet_sqrt(const Jet3& a);
Jet3 jet_pow(const Jet3& a, double exponent);

enum class ExprOp {
  Constant,
  Coord,
  Neg,
  Exp,
  Ln,
  Sin,
  Cos,
  Sinh,
  Cosh,
  Sqrt,
  Add,
  Sub,
  Mul,
  Div,
  PowConst,
};

/// Immutable symbolic expression over the chart coordinates x0..x3.
/// Copies are cheap (shared subtrees). The node set is fixed: constants,
/// coordinates, the unary functions above, +,-,*,/ and pow with a constant
/// exponent.
class ScalarExpr {
 public:
  ScalarExpr() : ScalarExpr(constant(0.0)) {}

  static ScalarExpr constant(double v);
  static ScalarExpr coordinate(int axis);
  static ScalarExpr unary(ExprOp op, ScalarExpr operand);
  static ScalarExpr binary(ExprOp op, ScalarExpr lhs, ScalarExpr rhs);
  static ScalarExpr pow(ScalarExpr base, double exponent);

  ExprOp op() const;
  double constant_value() const;   // op() == Constant
  int coord_axis() const;          // op() == Coord
  double exponent() const;         // op() == PowConst
  ScalarExpr child(int i) const;   // 0 = operand/lhs, 1 = rhs
  int child_count() const;

  bool depends_on_coords() const;
  bool is_constant_zero() const;

  /// Fully parenthesized text that reparses to an expression with identical
  /// evaluation behavior (bit-for-bit).
  std::string to_string() const;

 private:
  struct Node;
  explicit ScalarExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Value and exact partials to order 3 of `expr` at `p` via truncated Taylor
/// arithmetic. Throws DomainError on division by zero or sqrt/ln/pow of an
/// argument outside the function domain at `p`.
Jet3 eval_jet3(const ScalarExpr& expr, const Point& p);

/// Value-only evaluation (same domain checks as eval_jet3).
double eval_value(const ScalarExpr& expr, const Point& p);

/// Parse the metric-file expression grammar: identifiers x0..x3, operators
/// + - * / ^, functions exp ln sin cos sinh cosh sqrt, parentheses, decimal
/// literals. Whitespace-insensitive. `a^b` with a constant-valued exponent
/// becomes pow-with-constant-exponent; otherwise it is lowered to
/// exp(b*ln(a)). Throws ParseError with the byte offset on malformed input.
ScalarExpr parse_expr(std::string_view text);

}  // namespace kst
