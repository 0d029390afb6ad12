#pragma once

#include <array>

#include "kst/geometry.hpp"

namespace kst {

/// Weyl conformal curvature (0,4) in dimension 4:
///   C = R - 1/2 [S(Y,Z)g(X,T) - S(X,Z)g(Y,T) + S(X,T)g(Y,Z) - S(Y,T)g(X,Z)]
///         + r/6 [g(Y,Z)g(X,T) - g(X,Z)g(Y,T)]
/// in the slot order (X,Y,Z,T).
Tensor4 weyl_tensor(const CurvatureBundle& b);
Tensor4 weyl_tensor(const MetricStructure& m, const Point& p);

/// max|R - (r/12)[g(Y,Z)g(X,T) - g(X,Z)g(Y,T)]|: distance from the
/// constant-curvature form.
double constant_curvature_residual(const CurvatureBundle& b);
double constant_curvature_residual(const MetricStructure& m, const Point& p);

/// Sectional curvatures of the three spatial frame planes and the three
/// timelike planes through the normalized velocity, against r/12.
struct SectionalCheck {
  std::array<double, 3> k_spatial{};   // (e1,e2), (e1,e3), (e2,e3)
  std::array<double, 3> k_timelike{};  // (e1,e0), (e2,e0), (e3,e0)
  double target = 0.0;                 // r/12
};

SectionalCheck sectional_theorem_check(const CurvatureBundle& b, const Vec4& rho);
SectionalCheck sectional_theorem_check(const MetricStructure& m, const Point& p,
                                       const Vec4& rho);

/// One-parameter least-squares fits of the spatial-isotropy model:
///   R(X,Y,Z,T) = a [g(Y,Z)g(X,T) - g(X,Z)g(Y,T)]  over X,Y,Z,T in {e1,e2,e3}
///   R(X,e0,e0,Y) = b g(X,Y)                        over X,Y in {e1,e2,e3}
/// with e0 the normalized velocity. Residuals are max-abs after
/// substituting the optimal scalar.
struct IsotropyFit {
  double a = 0.0;
  double b = 0.0;
  double res_a = 0.0;
  double res_b = 0.0;
};

IsotropyFit isotropy_fit(const CurvatureBundle& b, const Vec4& rho);
IsotropyFit isotropy_fit(const MetricStructure& m, const Point& p, const Vec4& rho);

}  // namespace kst
