#pragma once

#include <array>

#include "kst/geometry.hpp"

namespace kst {

/// Perfect-fluid data attached to a metric: energy density and pressure
/// fields, cosmological and gravitational constants, and the (upper)
/// velocity components. The velocity must satisfy g(rho,rho) = -1 at the
/// points where fluid checks are evaluated.
struct FluidState {
  ScalarExpr sigma;             // energy density
  ScalarExpr pressure;
  double lambda = 0.0;          // cosmological constant
  double k = 1.0;               // gravitational constant, nonzero
  std::array<ScalarExpr, 4> rho{};  // velocity, upper components

  Vec4 rho_values(const Point& p) const;
  ExprTensorField rho_field() const;
};

struct FluidReport {
  double res_einstein = 0.0;          // max|S - (r/2)g + lambda g - k T|
  double res_inflation = 0.0;         // |sigma + p|
  double res_pressure_relation = 0.0; // |lambda - k p - r/4|
  double res_einstein_manifold = 0.0; // max|S - (r/4)g|
  double res_energy_eq = 0.0;         // |rho(sigma) + (sigma+p) div rho|
  double expansion = 0.0;             // div rho
  double acceleration_norm = 0.0;     // max|nabla_rho rho|
  double res_T = 0.0;                 // max|T|
};

/// T_ij = (sigma+p) w_i w_j + p g_ij with w the lowered velocity. Throws
/// NormalizationError when |g(rho,rho)+1| > 1e-6 at p.
Tensor4 energy_momentum(const MetricStructure& m, const FluidState& fluid, const Point& p);

/// max-abs of the Einstein equation with cosmological constant,
/// S - (r/2)g + lambda g - k[(sigma+p) w w + p g], at p.
double einstein_residual(const MetricStructure& m, const FluidState& fluid, const Point& p);

/// Full per-point fluid report (all FluidReport fields).
FluidReport fluid_audit(const MetricStructure& m, const FluidState& fluid, const Point& p);
FluidReport fluid_audit(const CurvatureBundle& b, const MetricStructure& m,
                        const FluidState& fluid);

}  // namespace kst
