#include "kst/relativity.hpp"

#include <cmath>

namespace kst {

Vec4 FluidState::rho_values(const Point& p) const {
  Vec4 v;
  for (std::size_t i = 0; i < 4; ++i) v[i] = eval_value(rho[i], p);
  return v;
}

ExprTensorField FluidState::rho_field() const {
  ExprTensorField f;
  f.variance = {Variance::Upper};
  f.comps.assign(rho.begin(), rho.end());
  return f;
}

namespace {

Tensor4 energy_momentum_at(const MetricAtPoint& gp, const FluidState& fluid,
                           const Point& p) {
  const Vec4 rho = fluid.rho_values(p);
  const double norm = gp.inner(rho, rho);
  if (std::fabs(norm + 1.0) > 1e-6)
    throw NormalizationError("fluid velocity is not unit timelike (g(rho,rho) != -1)");

  const double sigma = eval_value(fluid.sigma, p);
  const double pres = eval_value(fluid.pressure, p);

  Vec4 w{};  // lowered velocity
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      w[static_cast<std::size_t>(i)] += gp.g(i, j) * rho[static_cast<std::size_t>(j)];

  Tensor4 T({Variance::Lower, Variance::Lower});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      T(i, j) = (sigma + pres) * w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)] +
                pres * gp.g(i, j);
  return T;
}

}  // namespace

Tensor4 energy_momentum(const MetricStructure& m, const FluidState& fluid, const Point& p) {
  MetricJets mj = metric_jets(m, p);
  return energy_momentum_at(MetricAtPoint::from_components(mj.g, m.signature), fluid, p);
}

double einstein_residual(const MetricStructure& m, const FluidState& fluid, const Point& p) {
  return fluid_audit(m, fluid, p).res_einstein;
}

FluidReport fluid_audit(const CurvatureBundle& b, const MetricStructure& m,
                        const FluidState& fluid) {
  (void)m;
  const Point& p = b.point();
  const MetricAtPoint& gp = b.metric();
  const Tensor4& g = gp.g;
  const Tensor4& S = b.ricci();
  const double r = b.scalar_r();

  FluidReport rep;

  const Tensor4 T = energy_momentum_at(gp, fluid, p);
  rep.res_T = max_abs(T);

  const double sigma = eval_value(fluid.sigma, p);
  const double pres = eval_value(fluid.pressure, p);
  rep.res_inflation = std::fabs(sigma + pres);
  rep.res_pressure_relation = std::fabs(fluid.lambda - fluid.k * pres - 0.25 * r);

  Tensor4 einstein = S + (fluid.lambda - 0.5 * r) * g - fluid.k * T;
  rep.res_einstein = max_abs(einstein);
  rep.res_einstein_manifold = max_abs(S - 0.25 * r * g);

  // (nabla rho)(a, ^k); its trace is the expansion scalar
  const Tensor4 nabla_rho = covariant_derivative(b, fluid.rho_field());
  rep.expansion = contract(nabla_rho, 0, 1).data()[0];

  const Vec4 rho = fluid.rho_values(p);
  Vec4 acc{};
  for (int k = 0; k < 4; ++k)
    for (int a = 0; a < 4; ++a)
      acc[static_cast<std::size_t>(k)] += rho[static_cast<std::size_t>(a)] * nabla_rho(a, k);
  rep.acceleration_norm = 0.0;
  for (double c : acc) rep.acceleration_norm = std::max(rep.acceleration_norm, std::fabs(c));

  // energy equation: rho(sigma) = -(sigma+p) div rho
  const Jet3 sigma_jet = eval_jet3(fluid.sigma, p);
  double rho_sigma = 0.0;
  for (int i = 0; i < 4; ++i)
    rho_sigma += rho[static_cast<std::size_t>(i)] * sigma_jet.grad[static_cast<std::size_t>(i)];
  rep.res_energy_eq = std::fabs(rho_sigma + (sigma + pres) * rep.expansion);

  return rep;
}

FluidReport fluid_audit(const MetricStructure& m, const FluidState& fluid, const Point& p) {
  return fluid_audit(CurvatureBundle::at(m, p), m, fluid);
}

}  // namespace kst
