#pragma once

#include <vector>

namespace kst::linalg {

/// Invert a 4x4 matrix by Gaussian elimination with partial pivoting.
/// Returns the determinant; `inv` is valid only when the determinant is
/// usable (caller applies its own degeneracy threshold).
double invert4(const double a[4][4], double inv[4][4]);

/// Eigenvalues of a symmetric n x n matrix (n small) by cyclic Jacobi.
/// `a` is destroyed. Eigenvalues are returned unsorted.
void sym_eigenvalues(int n, std::vector<double>& a, std::vector<double>& eigvals);

struct LeastSquaresSolution {
  std::vector<double> x;          // minimum-norm minimizer
  std::vector<double> singular;   // singular values, descending
  int rank = 0;
};

/// Minimum-norm least squares for a dense m x n system (n small), via
/// one-sided Jacobi (Hestenes) SVD on the columns of A. Deterministic:
/// fixed sweep order, no pivot randomness. Rank counts singular values
/// above rel_tol * sigma_max.
LeastSquaresSolution min_norm_least_squares(const std::vector<double>& a_rowmajor,
                                            int m, int n,
                                            const std::vector<double>& b,
                                            double rel_tol = 1e-12);

/// Smallest singular value of a dense m x n matrix (n small).
double smallest_singular_value(const std::vector<double>& a_rowmajor, int m, int n);

}  // namespace kst::linalg
