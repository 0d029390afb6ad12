#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kst/expr.hpp"
#include "kst/tensor.hpp"

namespace kst {

using Vec4 = std::array<double, 4>;
using DomainBox = std::array<std::array<double, 2>, 4>;

/// Symmetric metric field over the chart: expression components g_ij
/// (only i<=j stored), a declared signature, and the coordinate box the
/// field is valid on.
struct MetricStructure {
  std::string name;
  std::array<ScalarExpr, 10> components{};  // canonical i<=j order
  std::array<int, 4> signature{-1, 1, 1, 1};
  DomainBox domain{{{-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}}};

  static constexpr int component_index(int i, int j) {
    if (i > j) std::swap(i, j);
    return i * (7 - i) / 2 + j;
  }
  const ScalarExpr& component(int i, int j) const {
    return components[static_cast<std::size_t>(component_index(i, j))];
  }
  void set_component(int i, int j, ScalarExpr e) {
    components[static_cast<std::size_t>(component_index(i, j))] = std::move(e);
  }
  bool in_domain(const Point& p) const;
  Point domain_center() const;
};

/// Order-3 jet data of the metric at one point: g, its first three
/// coordinate-derivative arrays, and the inverse at the point.
struct MetricJets {
  double g[4][4];
  double dg[4][4][4];          // [a][i][j] = d_a g_ij
  double d2g[4][4][4][4];      // [a][b][i][j]
  double d3g[4][4][4][4][4];   // [a][b][c][i][j]
  double ginv[4][4];
  double det = 0.0;
};

MetricJets metric_jets(const MetricStructure& m, const Point& p);

/// Gamma[k][i][j] = Christoffel symbol of the second kind, symmetric in
/// (i,j). Throws DegenerateMetricError when |det g| <= 1e-12 at p.
using Gamma = std::array<std::array<std::array<double, 4>, 4>, 4>;

Gamma christoffel(const MetricStructure& m, const Point& p);

/// Full curvature data at a point.
///
/// Conventions (pinned by the unit-sphere sectional-curvature test):
///   riemann_1_3 slots (i,j,k,l^) = (R(e_i,e_j)e_k)^l with
///     R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z,
///   riemann_0_4 slots (i,j,k,l)  = g(R(e_i,e_j)e_k, e_l),
///   ricci_jk = g^il riemann_0_4(i,j,k,l),
///   nabla_riemann slots (a,i,j,k,l) with the derivative direction first.
class CurvatureBundle {
 public:
  static CurvatureBundle at(const MetricStructure& m, const Point& p);

  const Point& point() const { return point_; }
  const MetricAtPoint& metric() const { return metric_; }
  const Gamma& gamma() const { return gamma_; }
  const MetricJets& jets() const { return *jets_; }
  const Tensor4& riemann_1_3() const { return riemann_1_3_; }
  const Tensor4& riemann_0_4() const { return riemann_0_4_; }
  const Tensor4& ricci() const { return ricci_; }
  double scalar_r() const { return scalar_r_; }

  /// (0,5) covariant derivative of the (0,4) curvature, computed from the
  /// analytic dR formula (second derivatives of Gamma, hence third
  /// derivatives of g). Cached after the first call.
  const Tensor4& nabla_riemann() const;

  /// (0,3) covariant derivative of the Ricci tensor, direction slot first.
  /// Two independent routes; they agree up to rounding and are
  /// cross-checked in tests.
  Tensor4 nabla_ricci_direct() const;
  Tensor4 nabla_ricci_from_curvature() const;

  /// Coordinate gradient of the scalar curvature.
  Vec4 scalar_r_gradient() const;

 private:
  struct SecondOrder;  // dGamma^2 data shared by the nabla computations
  const SecondOrder& second_order() const;

  Point point_;
  MetricAtPoint metric_;
  Gamma gamma_{};
  std::shared_ptr<const MetricJets> jets_;
  Tensor4 riemann_1_3_;
  Tensor4 riemann_0_4_;
  Tensor4 ricci_;
  double scalar_r_ = 0.0;
  double dgamma_[4][4][4][4] = {};  // [a][k][i][j]
  mutable std::shared_ptr<const SecondOrder> second_;
  mutable std::optional<Tensor4> nabla_riemann_;
};

CurvatureBundle riemann(const MetricStructure& m, const Point& p);

/// Tensor field whose components are expressions of the chart point.
struct ExprTensorField {
  std::vector<ScalarExpr> comps;     // 4^rank, row-major, slot 0 slowest
  std::vector<Variance> variance;

  int rank() const { return static_cast<int>(variance.size()); }
  Tensor4 values(const Point& p) const;
  /// rank+1 tensor of coordinate partials, direction slot first.
  Tensor4 partials(const Point& p) const;
};

/// Covariant derivative with the direction slot first. `partials` must be
/// the coordinate-partial tensor of `values` (rank+1, direction slot 0).
Tensor4 covariant_from_partials(const CurvatureBundle& b, const Tensor4& values,
                                const Tensor4& partials);

Tensor4 covariant_derivative(const CurvatureBundle& b, const ExprTensorField& field);
Tensor4 covariant_derivative(const MetricStructure& m, const Point& p,
                             const ExprTensorField& field);

/// K(X,Y) = R(X,Y,Y,X) / (g(X,X)g(Y,Y) - g(X,Y)^2). Throws
/// DegeneratePlaneError when |denominator| <= 1e-10 (null plane).
double sectional_curvature(const CurvatureBundle& b, const Vec4& x, const Vec4& y);
double sectional_curvature(const MetricStructure& m, const Point& p, const Vec4& x,
                           const Vec4& y);

/// Orthonormal frame adapted to a timelike vector: e0 = rho normalized,
/// remaining vectors by signature-aware Gram-Schmidt over the coordinate
/// basis. sign[a] = g(e_a, e_a).
struct Frame {
  std::array<Vec4, 4> e{};
  std::array<double, 4> sign{};
};

Frame orthonormal_frame(const MetricAtPoint& m, const Vec4& rho);
Frame orthonormal_frame(const MetricStructure& m, const Point& p, const Vec4& rho);

/// Deterministic uniform samples in the box (row-major mt19937_64 stream,
/// fixed mapping), used by audits and regression tests.
std::vector<Point> sample_points(const DomainBox& box, int count, std::uint64_t seed);

}  // namespace kst
