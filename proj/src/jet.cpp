#include "kst/expr.hpp"

#include <cmath>

namespace kst {

namespace {

// third_index lookup for i<=j<=k over 4 coordinates, 20 entries.
struct ThirdIndexTable {
  int idx[4][4][4];
  ThirdIndexTable() {
    int n = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j)
        for (int k = j; k < 4; ++k) idx[i][j][k] = n++;
  }
};
const ThirdIndexTable k_third_table;

inline void sort3(int& i, int& j, int& k) {
  if (i > j) std::swap(i, j);
  if (j > k) std::swap(j, k);
  if (i > j) std::swap(i, j);
}

}  // namespace

int Jet3::third_index(int i, int j, int k) {
  sort3(i, j, k);
  return k_third_table.idx[i][j][k];
}

Jet3 Jet3::constant(double v) {
  Jet3 r;
  r.value = v;
  return r;
}

Jet3 Jet3::coordinate(int axis, double v) {
  Jet3 r;
  r.value = v;
  r.grad[static_cast<std::size_t>(axis)] = 1.0;
  return r;
}

Jet3 operator+(const Jet3& a, const Jet3& b) {
  Jet3 r;
  r.value = a.value + b.value;
  for (int i = 0; i < 4; ++i) r.grad[i] = a.grad[i] + b.grad[i];
  for (int i = 0; i < 10; ++i) r.hess[i] = a.hess[i] + b.hess[i];
  for (int i = 0; i < 20; ++i) r.third[i] = a.third[i] + b.third[i];
  return r;
}

Jet3 operator-(const Jet3& a, const Jet3& b) {
  Jet3 r;
  r.value = a.value - b.value;
  for (int i = 0; i < 4; ++i) r.grad[i] = a.grad[i] - b.grad[i];
  for (int i = 0; i < 10; ++i) r.hess[i] = a.hess[i] - b.hess[i];
  for (int i = 0; i < 20; ++i) r.third[i] = a.third[i] - b.third[i];
  return r;
}

Jet3 operator-(const Jet3& a) {
  Jet3 r;
  r.value = -a.value;
  for (int i = 0; i < 4; ++i) r.grad[i] = -a.grad[i];
  for (int i = 0; i < 10; ++i) r.hess[i] = -a.hess[i];
  for (int i = 0; i < 20; ++i) r.third[i] = -a.third[i];
  return r;
}

Jet3 operator*(const Jet3& a, const Jet3& b) {
  Jet3 r;
  r.value = a.value * b.value;
  for (int i = 0; i < 4; ++i) r.grad[i] = a.value * b.grad[i] + a.grad[i] * b.value;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j)
      r.h(i, j) = a.value * b.h(i, j) + a.grad[i] * b.grad[j] +
                  a.grad[j] * b.grad[i] + a.h(i, j) * b.value;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j)
      for (int k = j; k < 4; ++k)
        r.t(i, j, k) = a.value * b.t(i, j, k) + a.grad[i] * b.h(j, k) +
                       a.grad[j] * b.h(i, k) + a.grad[k] * b.h(i, j) +
                       a.h(j, k) * b.grad[i] + a.h(i, k) * b.grad[j] +
                       a.h(i, j) * b.grad[k] + a.t(i, j, k) * b.value;
  return r;
}

namespace {

// Chain rule for y = phi(f) given phi and its first three derivatives at
// f.value.
Jet3 compose(const Jet3& f, double d0, double d1, double d2, double d3) {
  Jet3 r;
  r.value = d0;
  for (int i = 0; i < 4; ++i) r.grad[i] = d1 * f.grad[i];
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j)
      r.h(i, j) = d2 * f.grad[i] * f.grad[j] + d1 * f.h(i, j);
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j)
      for (int k = j; k < 4; ++k)
        r.t(i, j, k) = d3 * f.grad[i] * f.grad[j] * f.grad[k] +
                       d2 * (f.grad[i] * f.h(j, k) + f.grad[j] * f.h(i, k) +
                             f.grad[k] * f.h(i, j)) +
                       d1 * f.t(i, j, k);
  return r;
}

// c*(c-1)*...*(c-k+1) * v^(c-k), with the convention that a zero falling
// factorial kills the whole term before v^(c-k) is evaluated.
double guarded_pow_term(double v, double c, int k) {
  double coef = 1.0;
  for (int j = 0; j < k; ++j) coef *= c - static_cast<double>(j);
  if (coef == 0.0) return 0.0;
  return coef * std::pow(v, c - static_cast<double>(k));
}

}  // namespace

Jet3 operator/(const Jet3& a, const Jet3& b) {
  if (b.value == 0.0) throw DomainError("division by zero");
  const double v = b.value;
  const double iv = 1.0 / v;
  Jet3 inv = compose(b, iv, -iv * iv, 2.0 * iv * iv * iv, -6.0 * iv * iv * iv * iv);
  return a * inv;
}

Jet3 jet_exp(const Jet3& a) {
  const double e = std::exp(a.value);
  return compose(a, e, e, e, e);
}

Jet3 jet_ln(const Jet3& a) {
  if (!(a.value > 0.0)) throw DomainError("ln of non-positive argument");
  const double v = a.value;
  const double iv = 1.0 / v;
  return compose(a, std::log(v), iv, -iv * iv, 2.0 * iv * iv * iv);
}

Jet3 jet_sin(const Jet3& a) {
  const double s = std::sin(a.value), c = std::cos(a.value);
  return compose(a, s, c, -s, -c);
}

Jet3 jet_cos(const Jet3& a) {
  const double s = std::sin(a.value), c = std::cos(a.value);
  return compose(a, c, -s, -c, s);
}

Jet3 jet_sinh(const Jet3& a) {
  const double s = std::sinh(a.value), c = std::cosh(a.value);
  return compose(a, s, c, s, c);
}

Jet3 jet_cosh(const Jet3& a) {
  const double s = std::sinh(a.value), c = std::cosh(a.value);
  return compose(a, c, s, c, s);
}

Jet3 jet_sqrt(const Jet3& a) {
  if (!(a.value > 0.0)) throw DomainError("sqrt of non-positive argument");
  const double s = std::sqrt(a.value);
  const double iv = 1.0 / a.value;
  return compose(a, s, 0.5 * s * iv, -0.25 * s * iv * iv, 0.375 * s * iv * iv * iv);
}

Jet3 jet_pow(const Jet3& a, double exponent) {
  const double v = a.value;
  const bool integral = exponent == std::floor(exponent) && std::isfinite(exponent);
  if (!integral && !(v > 0.0))
    throw DomainError("pow of non-positive base with non-integer exponent");
  if (integral && v == 0.0 && exponent < 0.0)
    throw DomainError("pow of zero base with negative exponent");
  return compose(a, guarded_pow_term(v, exponent, 0), guarded_pow_term(v, exponent, 1),
                 guarded_pow_term(v, exponent, 2), guarded_pow_term(v, exponent, 3));
}

}  // namespace kst
