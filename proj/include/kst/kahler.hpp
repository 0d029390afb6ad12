#pragma once

#include <array>

#include "kst/geometry.hpp"

namespace kst {

/// Candidate almost-complex structure: expression components F^i_j. No
/// structural property is assumed; the audit measures them.
struct ComplexStructure {
  std::array<ScalarExpr, 16> components{};  // [i][j] row-major, F^i_j

  const ScalarExpr& component(int i, int j) const {
    return components[static_cast<std::size_t>(i * 4 + j)];
  }
  void set_component(int i, int j, ScalarExpr e) {
    components[static_cast<std::size_t>(i * 4 + j)] = std::move(e);
  }

  ExprTensorField as_field() const;
  /// F^i_j values at a point.
  std::array<std::array<double, 4>, 4> values(const Point& p) const;
};

struct KahlerReport {
  double res_almost_complex = 0.0;   // max|F.F + I|
  double res_hermitian = 0.0;        // max|g(F.,F.) - g|
  double res_parallel = 0.0;         // max|nabla F|
  double res_ricci_invariance = 0.0; // max|S(F.,F.) - S|
  double tol = 0.0;
  bool almost_complex_ok = false;
  bool hermitian_ok = false;
  bool parallel_ok = false;
  bool ricci_invariance_ok = false;

  bool all_ok() const {
    return almost_complex_ok && hermitian_ok && parallel_ok && ricci_invariance_ok;
  }
};

/// Measures the four structure conditions of a Kahler space-time at one
/// point: F^2 = -I, g(FX,FY) = g(X,Y), nabla F = 0 and S(FX,FY) = S(X,Y).
KahlerReport kahler_audit(const MetricStructure& m, const ComplexStructure& F,
                          const Point& p, double tol = 1e-8);

/// Same audit reusing an existing curvature bundle at b.point().
KahlerReport kahler_audit(const CurvatureBundle& b, const MetricStructure& m,
                          const ComplexStructure& F, double tol = 1e-8);

}  // namespace kst
