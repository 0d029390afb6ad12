#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "kst/errors.hpp"

namespace kst {

enum class Variance : std::uint8_t { Upper, Lower };

/// Dense tensor of rank 0..5 over a 4-dimensional fiber. Components are
/// stored row-major with slot 0 slowest. Each slot carries a variance
/// marker used by contraction and raising/lowering.
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(std::initializer_list<Variance> variance);
  static Tensor4 scalar(double v);

  int rank() const { return rank_; }
  Variance variance(int slot) const;
  std::size_t size() const { return comps_.size(); }

  double* data() { return comps_.data(); }
  const double* data() const { return comps_.data(); }

  template <typename... Ix>
  double operator()(Ix... ix) const {
    return comps_[flat_index({static_cast<int>(ix)...})];
  }
  template <typename... Ix>
  double& operator()(Ix... ix) {
    return comps_[flat_index({static_cast<int>(ix)...})];
  }

  Tensor4& operator+=(const Tensor4& o);
  Tensor4& operator-=(const Tensor4& o);
  Tensor4& operator*=(double s);

 private:
  std::size_t flat_index(std::initializer_list<int> ix) const;

  int rank_ = 0;
  std::array<Variance, 5> var_{};
  std::vector<double> comps_ = std::vector<double>(1, 0.0);
};

Tensor4 operator+(Tensor4 a, const Tensor4& b);
Tensor4 operator-(Tensor4 a, const Tensor4& b);
Tensor4 operator*(double s, Tensor4 a);

/// Metric and its inverse evaluated at a single point.
struct MetricAtPoint {
  Tensor4 g;        // rank 2, lower lower, symmetric
  Tensor4 g_inv;    // rank 2, upper upper
  std::array<int, 4> signature{};  // declared signs
  double det = 0.0;

  /// Builds from a symmetric value matrix; inverts and checks
  /// nondegeneracy (|det| > 1e-12, else DegenerateMetricError).
  static MetricAtPoint from_components(const double gv[4][4],
                                       const std::array<int, 4>& signature);

  double inner(const std::array<double, 4>& x, const std::array<double, 4>& y) const;
};

/// Natural pairing of one upper and one lower slot, summed over the fiber.
/// Rank drops by two. Throws VarianceError if both slots have the same
/// variance, IndexError if a slot is out of range or slot_a == slot_b.
Tensor4 contract(const Tensor4& t, int slot_a, int slot_b);

/// Flip the variance of one slot by contracting with g (lowering) or
/// g_inv (raising).
Tensor4 raise_lower(const Tensor4& t, int slot, const MetricAtPoint& m);

/// Largest absolute component.
double max_abs(const Tensor4& t);

}  // namespace kst
