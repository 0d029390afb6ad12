#include "kst/conformal.hpp"

#include <cmath>

namespace kst {

Tensor4 weyl_tensor(const CurvatureBundle& b) {
  const Tensor4& R = b.riemann_0_4();
  const Tensor4& g = b.metric().g;
  const Tensor4& S = b.ricci();
  const double r = b.scalar_r();

  Tensor4 C = R;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          const double ricci_part = S(j, k) * g(i, l) - S(i, k) * g(j, l) +
                                    S(i, l) * g(j, k) - S(j, l) * g(i, k);
          const double scalar_part = g(j, k) * g(i, l) - g(i, k) * g(j, l);
          C(i, j, k, l) += -0.5 * ricci_part + (r / 6.0) * scalar_part;
        }
  return C;
}

Tensor4 weyl_tensor(const MetricStructure& m, const Point& p) {
  return weyl_tensor(CurvatureBundle::at(m, p));
}

double constant_curvature_residual(const CurvatureBundle& b) {
  const Tensor4& R = b.riemann_0_4();
  const Tensor4& g = b.metric().g;
  const double c = b.scalar_r() / 12.0;
  double res = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
          res = std::max(res, std::fabs(R(i, j, k, l) -
                                        c * (g(j, k) * g(i, l) - g(i, k) * g(j, l))));
  return res;
}

double constant_curvature_residual(const MetricStructure& m, const Point& p) {
  return constant_curvature_residual(CurvatureBundle::at(m, p));
}

SectionalCheck sectional_theorem_check(const CurvatureBundle& b, const Vec4& rho) {
  const Frame f = orthonormal_frame(b.metric(), rho);
  SectionalCheck out;
  out.target = b.scalar_r() / 12.0;
  const int pairs[3][2] = {{1, 2}, {1, 3}, {2, 3}};
  for (int n = 0; n < 3; ++n)
    out.k_spatial[static_cast<std::size_t>(n)] =
        sectional_curvature(b, f.e[static_cast<std::size_t>(pairs[n][0])],
                            f.e[static_cast<std::size_t>(pairs[n][1])]);
  for (int a = 1; a <= 3; ++a)
    out.k_timelike[static_cast<std::size_t>(a - 1)] =
        sectional_curvature(b, f.e[static_cast<std::size_t>(a)], f.e[0]);
  return out;
}

SectionalCheck sectional_theorem_check(const MetricStructure& m, const Point& p,
                                       const Vec4& rho) {
  return sectional_theorem_check(CurvatureBundle::at(m, p), rho);
}

namespace {

double frame_inner(const MetricAtPoint& m, const Frame& f, int a, int b) {
  return m.inner(f.e[static_cast<std::size_t>(a)], f.e[static_cast<std::size_t>(b)]);
}

double frame_riemann(const CurvatureBundle& bnd, const Frame& f, int a, int b, int c,
                     int d) {
  const Tensor4& R = bnd.riemann_0_4();
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
          s += R(i, j, k, l) * f.e[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] *
               f.e[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)] *
               f.e[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)] *
               f.e[static_cast<std::size_t>(d)][static_cast<std::size_t>(l)];
  return s;
}

}  // namespace

IsotropyFit isotropy_fit(const CurvatureBundle& b, const Vec4& rho) {
  const Frame f = orthonormal_frame(b.metric(), rho);
  const MetricAtPoint& m = b.metric();
  IsotropyFit fit;

  // a: R(X,Y,Z,T) = a [g(Y,Z)g(X,T) - g(X,Z)g(Y,T)] over the spatial frame
  {
    double num = 0.0, den = 0.0;
    double rv[3][3][3][3], mv[3][3][3][3];
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y)
        for (int z = 0; z < 3; ++z)
          for (int t = 0; t < 3; ++t) {
            const double R = frame_riemann(b, f, x + 1, y + 1, z + 1, t + 1);
            const double M = frame_inner(m, f, y + 1, z + 1) * frame_inner(m, f, x + 1, t + 1) -
                             frame_inner(m, f, x + 1, z + 1) * frame_inner(m, f, y + 1, t + 1);
            rv[x][y][z][t] = R;
            mv[x][y][z][t] = M;
            num += R * M;
            den += M * M;
          }
    fit.a = den > 0.0 ? num / den : 0.0;
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y)
        for (int z = 0; z < 3; ++z)
          for (int t = 0; t < 3; ++t)
            fit.res_a = std::max(fit.res_a, std::fabs(rv[x][y][z][t] - fit.a * mv[x][y][z][t]));
  }

  // b: R(X,e0,e0,Y) = b g(X,Y) over the spatial frame
  {
    double num = 0.0, den = 0.0;
    double rv[3][3], mv[3][3];
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) {
        const double R = frame_riemann(b, f, x + 1, 0, 0, y + 1);
        const double M = frame_inner(m, f, x + 1, y + 1);
        rv[x][y] = R;
        mv[x][y] = M;
        num += R * M;
        den += M * M;
      }
    fit.b = den > 0.0 ? num / den : 0.0;
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y)
        fit.res_b = std::max(fit.res_b, std::fabs(rv[x][y] - fit.b * mv[x][y]));
  }

  return fit;
}

IsotropyFit isotropy_fit(const MetricStructure& m, const Point& p, const Vec4& rho) {
  return isotropy_fit(CurvatureBundle::at(m, p), rho);
}

}  // namespace kst
