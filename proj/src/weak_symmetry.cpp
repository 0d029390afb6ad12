#include "kst/weak_symmetry.hpp"

#include <cmath>
#include <vector>

#include "kst/linalg.hpp"

namespace kst {

namespace {

Vec4 raise_covector(const MetricAtPoint& m, const std::array<double, 4>& w) {
  Vec4 v{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      v[static_cast<std::size_t>(i)] += m.g_inv(i, j) * w[static_cast<std::size_t>(j)];
  return v;
}

double max_abs_residual(const std::vector<double>& a, int m, int n,
                        const std::vector<double>& x, const std::vector<double>& b) {
  double res = 0.0;
  for (int i = 0; i < m; ++i) {
    double s = -b[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j)
      s += a[static_cast<std::size_t>(i) * n + j] * x[static_cast<std::size_t>(j)];
    res = std::max(res, std::fabs(s));
  }
  return res;
}

}  // namespace

Vec4 WeakSymmetrySolution::alpha(const MetricAtPoint& m) const { return raise_covector(m, A); }
Vec4 WeakSymmetrySolution::rho(const MetricAtPoint& m) const { return raise_covector(m, omega); }

WeakSymmetrySolution solve_weak_symmetry(const CurvatureBundle& b) {
  const Tensor4& R = b.riemann_0_4();
  const Tensor4& nR = b.nabla_riemann();

  // rows: (x,y,z,u,v) lexicographic; columns: A_0..A_3, omega_0..omega_3
  const int m = 1024, n = 8;
  std::vector<double> mat(static_cast<std::size_t>(m) * n, 0.0);
  std::vector<double> rhs(static_cast<std::size_t>(m), 0.0);
  int row = 0;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      for (int z = 0; z < 4; ++z)
        for (int u = 0; u < 4; ++u)
          for (int v = 0; v < 4; ++v, ++row) {
            double* col = mat.data() + static_cast<std::size_t>(row) * n;
            col[x] += R(y, z, u, v);
            col[4 + y] += R(x, z, u, v);
            col[4 + z] += R(y, x, u, v);
            col[4 + u] += R(y, z, x, v);
            col[4 + v] += R(y, z, u, x);
            rhs[static_cast<std::size_t>(row)] = nR(x, y, z, u, v);
          }

  auto ls = linalg::min_norm_least_squares(mat, m, n, rhs);
  WeakSymmetrySolution sol;
  for (std::size_t i = 0; i < 4; ++i) {
    sol.A[i] = ls.x[i];
    sol.omega[i] = ls.x[i + 4];
  }
  sol.system_rank = ls.rank;
  sol.residual = max_abs_residual(mat, m, n, ls.x, rhs);
  return sol;
}

WeakSymmetrySolution solve_weak_symmetry(const MetricStructure& m, const Point& p) {
  return solve_weak_symmetry(CurvatureBundle::at(m, p));
}

namespace {

// 64x8 matrix of A(X) t(Y,Z) + omega(Y) t(X,Z) + omega(Z) t(Y,X), rows
// (x,y,z) lexicographic. Shared by the weak-Ricci system (t = S) and the
// nonexistence system (t = g, homogeneous).
std::vector<double> symmetric_two_form_system(const Tensor4& t) {
  std::vector<double> mat(64 * 8, 0.0);
  int row = 0;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      for (int z = 0; z < 4; ++z, ++row) {
        double* col = mat.data() + static_cast<std::size_t>(row) * 8;
        col[x] += t(y, z);
        col[4 + y] += t(x, z);
        col[4 + z] += t(y, x);
      }
  return mat;
}

}  // namespace

WeakRicciSolution solve_weak_ricci(const CurvatureBundle& b) {
  const Tensor4 nS = b.nabla_ricci_direct();
  std::vector<double> mat = symmetric_two_form_system(b.ricci());
  std::vector<double> rhs(64, 0.0);
  int row = 0;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      for (int z = 0; z < 4; ++z, ++row) rhs[static_cast<std::size_t>(row)] = nS(x, y, z);

  auto ls = linalg::min_norm_least_squares(mat, 64, 8, rhs);
  WeakRicciSolution sol;
  for (std::size_t i = 0; i < 4; ++i) {
    sol.A[i] = ls.x[i];
    sol.omega[i] = ls.x[i + 4];
  }
  sol.system_rank = ls.rank;
  sol.residual = max_abs_residual(mat, 64, 8, ls.x, rhs);
  sol.sigma_min = wrs_nonexistence_check(b.metric());
  return sol;
}

WeakRicciSolution solve_weak_ricci(const MetricStructure& m, const Point& p) {
  return solve_weak_ricci(CurvatureBundle::at(m, p));
}

RicciEigenResiduals ricci_eigen_residual(const CurvatureBundle& b, const Vec4& rho) {
  const Frame f = orthonormal_frame(b.metric(), rho);
  const Tensor4& S = b.ricci();
  const Tensor4& g = b.metric().g;
  const double r = b.scalar_r();

  RicciEigenResiduals out;
  for (int a = 0; a < 4; ++a) {
    double s_val = 0.0, g_val = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const double yy = f.e[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] *
                          rho[static_cast<std::size_t>(j)];
        s_val += S(i, j) * yy;
        g_val += g(i, j) * yy;
      }
    out.res_half_r = std::max(out.res_half_r, std::fabs(s_val - 0.5 * r * g_val));
    out.res_quarter_r = std::max(out.res_quarter_r, std::fabs(s_val - 0.25 * r * g_val));
  }
  return out;
}

double alpha_rho_relation(const CurvatureBundle& b, const WeakSymmetrySolution& sol) {
  const MetricAtPoint& m = b.metric();
  const Vec4 alpha = sol.alpha(m);
  const Vec4 rho = sol.rho(m);
  return std::fabs(b.scalar_r() * (m.inner(alpha, rho) - 4.0));
}

double wrs_nonexistence_check(const MetricAtPoint& m) {
  std::vector<double> mat = symmetric_two_form_system(m.g);
  return linalg::smallest_singular_value(mat, 64, 8);
}

double wrs_nonexistence_check(const MetricStructure& m, const Point& p) {
  MetricJets mj = metric_jets(m, p);
  return wrs_nonexistence_check(MetricAtPoint::from_components(mj.g, m.signature));
}

}  // namespace kst
