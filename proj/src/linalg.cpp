#include "kst/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace kst::linalg {

double invert4(const double a[4][4], double inv[4][4]) {
  double m[4][8];
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      m[i][j] = a[i][j];
      m[i][j + 4] = (i == j) ? 1.0 : 0.0;
    }
  }
  double det = 1.0;
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) pivot = r;
    if (pivot != col) {
      std::swap_ranges(m[pivot], m[pivot] + 8, m[col]);
      det = -det;
    }
    double p = m[col][col];
    det *= p;
    if (p == 0.0) return 0.0;
    double ip = 1.0 / p;
    for (int j = 0; j < 8; ++j) m[col][j] *= ip;
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      double f = m[r][col];
      if (f == 0.0) continue;
      for (int j = 0; j < 8; ++j) m[r][j] -= f * m[col][j];
    }
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) inv[i][j] = m[i][j + 4];
  return det;
}

void sym_eigenvalues(int n, std::vector<double>& a, std::vector<double>& eigvals) {
  auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    if (off < 1e-30) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = at(p, q);
        if (apq == 0.0) continue;
        double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  eigvals.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) eigvals[static_cast<std::size_t>(i)] = at(i, i);
}

namespace {

// One-sided Jacobi: orthogonalize the n columns of A (m x n, column-major
// work array) accumulating the rotations into V. On exit A = U * diag(s),
// with U's columns orthonormal where s > 0.
void hestenes(std::vector<double>& col, int m, int n, std::vector<double>& v) {
  auto c = [&](int j) { return col.data() + static_cast<std::size_t>(j) * m; };
  auto vc = [&](int j) { return v.data() + static_cast<std::size_t>(j) * n; };
  v.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j) vc(j)[j] = 1.0;

  for (int sweep = 0; sweep < 64; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        const double* cp = c(p);
        const double* cq = c(q);
        for (int i = 0; i < m; ++i) {
          alpha += cp[i] * cp[i];
          beta += cq[i] * cq[i];
          gamma += cp[i] * cq[i];
        }
        if (std::fabs(gamma) <= 1e-28 + 1e-16 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        double zeta = (beta - alpha) / (2.0 * gamma);
        double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                   (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        double cs = 1.0 / std::sqrt(1.0 + t * t);
        double sn = cs * t;
        double* wp = col.data() + static_cast<std::size_t>(p) * m;
        double* wq = col.data() + static_cast<std::size_t>(q) * m;
        for (int i = 0; i < m; ++i) {
          double xp = wp[i], xq = wq[i];
          wp[i] = cs * xp - sn * xq;
          wq[i] = sn * xp + cs * xq;
        }
        double* up = vc(p);
        double* uq = vc(q);
        for (int i = 0; i < n; ++i) {
          double xp = up[i], xq = uq[i];
          up[i] = cs * xp - sn * xq;
          uq[i] = sn * xp + cs * xq;
        }
      }
    }
    if (!rotated) break;
  }
}

}  // namespace

LeastSquaresSolution min_norm_least_squares(const std::vector<double>& a_rowmajor,
                                            int m, int n,
                                            const std::vector<double>& b,
                                            double rel_tol) {
  std::vector<double> col(static_cast<std::size_t>(m) * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      col[static_cast<std::size_t>(j) * m + i] = a_rowmajor[static_cast<std::size_t>(i) * n + j];
  std::vector<double> v;
  hestenes(col, m, n, v);

  std::vector<double> sigma(static_cast<std::size_t>(n));
  double sigma_max = 0.0;
  for (int j = 0; j < n; ++j) {
    double s2 = 0.0;
    const double* cj = col.data() + static_cast<std::size_t>(j) * m;
    for (int i = 0; i < m; ++i) s2 += cj[i] * cj[i];
    sigma[static_cast<std::size_t>(j)] = std::sqrt(s2);
    sigma_max = std::max(sigma_max, sigma[static_cast<std::size_t>(j)]);
  }

  LeastSquaresSolution out;
  out.x.assign(static_cast<std::size_t>(n), 0.0);
  const double cutoff = rel_tol * sigma_max;
  for (int j = 0; j < n; ++j) {
    double s = sigma[static_cast<std::size_t>(j)];
    if (!(s > cutoff) || s == 0.0) continue;
    ++out.rank;
    // coefficient = u_j . b / s with u_j = col_j / s
    const double* cj = col.data() + static_cast<std::size_t>(j) * m;
    double ub = 0.0;
    for (int i = 0; i < m; ++i) ub += cj[i] * b[static_cast<std::size_t>(i)];
    ub /= s * s;
    const double* vj = v.data() + static_cast<std::size_t>(j) * n;
    for (int i = 0; i < n; ++i) out.x[static_cast<std::size_t>(i)] += ub * vj[i];
  }
  std::sort(sigma.begin(), sigma.end(), std::greater<double>());
  out.singular = std::move(sigma);
  return out;
}

double smallest_singular_value(const std::vector<double>& a_rowmajor, int m, int n) {
  std::vector<double> b(static_cast<std::size_t>(m), 0.0);
  auto sol = min_norm_least_squares(a_rowmajor, m, n, b);
  return sol.singular.back();
}

}  // namespace kst::linalg
