#pragma once

#include <array>

#include "kst/geometry.hpp"

namespace kst {

/// Minimum-norm least-squares recovery of the 1-forms (A, omega) from the
/// weak-symmetry ansatz on the full curvature tensor,
///   (nabla_X R)(Y,Z,U,V) = A(X) R(Y,Z,U,V) + omega(Y) R(X,Z,U,V)
///     + omega(Z) R(Y,X,U,V) + omega(U) R(Y,Z,X,V) + omega(V) R(Y,Z,U,X),
/// assembled over all 4^5 coordinate-basis tuples (rows ordered
/// lexicographically, X slowest; unknowns ordered A_0..A_3, omega_0..3).
struct WeakSymmetrySolution {
  std::array<double, 4> A{};
  std::array<double, 4> omega{};
  double residual = 0.0;  // max-abs of the equation after substitution
  int system_rank = 0;

  /// alpha^i = g^ij A_j, the raised A.
  Vec4 alpha(const MetricAtPoint& m) const;
  /// rho^i = g^ij omega_j, the raised omega.
  Vec4 rho(const MetricAtPoint& m) const;
};

/// Same recovery over the 64-row Ricci system
///   (nabla_X S)(Y,Z) = A(X) S(Y,Z) + omega(Y) S(X,Z) + omega(Z) S(Y,X),
/// plus the smallest singular value of the metric-only constraint system
///   A(X) g(Y,Z) + omega(Y) g(Z,X) + omega(Z) g(X,Y) = 0.
struct WeakRicciSolution {
  std::array<double, 4> A{};
  std::array<double, 4> omega{};
  double residual = 0.0;
  int system_rank = 0;
  double sigma_min = 0.0;
};

WeakSymmetrySolution solve_weak_symmetry(const CurvatureBundle& b);
WeakSymmetrySolution solve_weak_symmetry(const MetricStructure& m, const Point& p);

WeakRicciSolution solve_weak_ricci(const CurvatureBundle& b);
WeakRicciSolution solve_weak_ricci(const MetricStructure& m, const Point& p);

struct RicciEigenResiduals {
  double res_half_r = 0.0;     // max_Y |S(Y,rho) - (r/2) g(Y,rho)|
  double res_quarter_r = 0.0;  // max_Y |S(Y,rho) - (r/4) g(Y,rho)|
};

/// Both eigenvalue residuals for the velocity as a Ricci eigenvector, with
/// Y ranging over the orthonormal frame adapted to rho (so the reported
/// numbers are chart-independent).
RicciEigenResiduals ricci_eigen_residual(const CurvatureBundle& b, const Vec4& rho);

/// |r (g(alpha,rho) - 4)| with alpha and rho raised from the recovered
/// weak-symmetry 1-forms.
double alpha_rho_relation(const CurvatureBundle& b, const WeakSymmetrySolution& sol);

/// Smallest singular value of the 64x8 homogeneous system
///   A(X) g(Y,Z) + omega(Y) g(Z,X) + omega(Z) g(X,Y) = 0.
/// A strictly positive value certifies that only the trivial (A, omega)
/// satisfies it at p.
double wrs_nonexistence_check(const MetricAtPoint& m);
double wrs_nonexistence_check(const MetricStructure& m, const Point& p);

}  // namespace kst
