#include "kst/kahler.hpp"

#include <cmath>

namespace kst {

ExprTensorField ComplexStructure::as_field() const {
  ExprTensorField f;
  f.variance = {Variance::Upper, Variance::Lower};
  f.comps.assign(components.begin(), components.end());
  return f;
}

std::array<std::array<double, 4>, 4> ComplexStructure::values(const Point& p) const {
  std::array<std::array<double, 4>, 4> F{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      F[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = eval_value(component(i, j), p);
  return F;
}

KahlerReport kahler_audit(const CurvatureBundle& b, const MetricStructure& m,
                          const ComplexStructure& F, double tol) {
  (void)m;
  const Point& p = b.point();
  const auto Fv = F.values(p);
  const Tensor4& g = b.metric().g;
  const Tensor4& S = b.ricci();
  auto fv = [&](int i, int j) { return Fv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };

  KahlerReport rep;
  rep.tol = tol;

  // F.F + I
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = (i == j) ? 1.0 : 0.0;
      for (int k = 0; k < 4; ++k) s += fv(i, k) * fv(k, j);
      rep.res_almost_complex = std::max(rep.res_almost_complex, std::fabs(s));
    }

  // g(F.,F.) - g and S(F.,F.) - S, componentwise
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double gs = -g(i, j);
      double ss = -S(i, j);
      for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c) {
          const double ff = fv(a, i) * fv(c, j);
          gs += ff * g(a, c);
          ss += ff * S(a, c);
        }
      rep.res_hermitian = std::max(rep.res_hermitian, std::fabs(gs));
      rep.res_ricci_invariance = std::max(rep.res_ricci_invariance, std::fabs(ss));
    }

  rep.res_parallel = max_abs(covariant_derivative(b, F.as_field()));

  rep.almost_complex_ok = rep.res_almost_complex < tol;
  rep.hermitian_ok = rep.res_hermitian < tol;
  rep.parallel_ok = rep.res_parallel < tol;
  rep.ricci_invariance_ok = rep.res_ricci_invariance < tol;
  return rep;
}

KahlerReport kahler_audit(const MetricStructure& m, const ComplexStructure& F,
                          const Point& p, double tol) {
  return kahler_audit(CurvatureBundle::at(m, p), m, F, tol);
}

}  // namespace kst
