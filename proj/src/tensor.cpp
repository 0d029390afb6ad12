#include "kst/tensor.hpp"

#include <cmath>

#include "kst/linalg.hpp"

namespace kst {

namespace {

std::size_t pow4(int rank) { return std::size_t{1} << (2 * rank); }

}  // namespace

Tensor4::Tensor4(std::initializer_list<Variance> variance) {
  if (variance.size() > 5) throw IndexError("tensor rank exceeds 5");
  rank_ = static_cast<int>(variance.size());
  int i = 0;
  for (Variance v : variance) var_[static_cast<std::size_t>(i++)] = v;
  comps_.assign(pow4(rank_), 0.0);
}

Tensor4 Tensor4::scalar(double v) {
  Tensor4 t;
  t.comps_[0] = v;
  return t;
}

Variance Tensor4::variance(int slot) const {
  if (slot < 0 || slot >= rank_) throw IndexError("variance slot out of range");
  return var_[static_cast<std::size_t>(slot)];
}

std::size_t Tensor4::flat_index(std::initializer_list<int> ix) const {
  if (static_cast<int>(ix.size()) != rank_) throw IndexError("index count != rank");
  std::size_t flat = 0;
  for (int i : ix) {
    if (i < 0 || i > 3) throw IndexError("component index out of range");
    flat = flat * 4 + static_cast<std::size_t>(i);
  }
  return flat;
}

Tensor4& Tensor4::operator+=(const Tensor4& o) {
  if (o.rank_ != rank_) throw IndexError("rank mismatch in tensor addition");
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
  return *this;
}

Tensor4& Tensor4::operator-=(const Tensor4& o) {
  if (o.rank_ != rank_) throw IndexError("rank mismatch in tensor subtraction");
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
  return *this;
}

Tensor4& Tensor4::operator*=(double s) {
  for (double& c : comps_) c *= s;
  return *this;
}

Tensor4 operator+(Tensor4 a, const Tensor4& b) { return a += b; }
Tensor4 operator-(Tensor4 a, const Tensor4& b) { return a -= b; }
Tensor4 operator*(double s, Tensor4 a) { return a *= s; }

MetricAtPoint MetricAtPoint::from_components(const double gv[4][4],
                                             const std::array<int, 4>& signature) {
  double inv[4][4];
  double det = linalg::invert4(gv, inv);
  if (!(std::fabs(det) > 1e-12))
    throw DegenerateMetricError("metric determinant below nondegeneracy threshold");
  MetricAtPoint m;
  m.signature = signature;
  m.det = det;
  m.g = Tensor4({Variance::Lower, Variance::Lower});
  m.g_inv = Tensor4({Variance::Upper, Variance::Upper});
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      m.g(i, j) = gv[i][j];
      m.g_inv(i, j) = inv[i][j];
    }
  }
  return m;
}

double MetricAtPoint::inner(const std::array<double, 4>& x,
                            const std::array<double, 4>& y) const {
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s += g(i, j) * x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
  return s;
}

Tensor4 contract(const Tensor4& t, int slot_a, int slot_b) {
  const int r = t.rank();
  if (slot_a == slot_b) throw IndexError("contraction slots must differ");
  if (slot_a < 0 || slot_a >= r || slot_b < 0 || slot_b >= r)
    throw IndexError("contraction slot out of range");
  if (t.variance(slot_a) == t.variance(slot_b))
    throw VarianceError("contraction requires one upper and one lower slot");
  if (slot_a > slot_b) std::swap(slot_a, slot_b);

  std::vector<Variance> keep;
  for (int s = 0; s < r; ++s)
    if (s != slot_a && s != slot_b) keep.push_back(t.variance(s));

  Tensor4 out;
  switch (keep.size()) {
    case 0: out = Tensor4({}); break;
    case 1: out = Tensor4({keep[0]}); break;
    case 2: out = Tensor4({keep[0], keep[1]}); break;
    case 3: out = Tensor4({keep[0], keep[1], keep[2]}); break;
    default: throw Error(ErrorKind::Internal, "unexpected contraction rank");
  }

  const int out_rank = r - 2;
  std::array<int, 5> idx{};
  std::array<int, 3> oidx{};
  const std::size_t n_out = std::size_t{1} << (2 * out_rank);
  for (std::size_t flat = 0; flat < n_out; ++flat) {
    std::size_t rem = flat;
    for (int s = out_rank - 1; s >= 0; --s) {
      oidx[static_cast<std::size_t>(s)] = static_cast<int>(rem & 3);
      rem >>= 2;
    }
    int pos = 0;
    for (int s = 0; s < r; ++s) {
      if (s == slot_a || s == slot_b) continue;
      idx[static_cast<std::size_t>(s)] = oidx[static_cast<std::size_t>(pos++)];
    }
    double sum = 0.0;
    for (int d = 0; d < 4; ++d) {
      idx[static_cast<std::size_t>(slot_a)] = d;
      idx[static_cast<std::size_t>(slot_b)] = d;
      std::size_t in_flat = 0;
      for (int s = 0; s < r; ++s) in_flat = in_flat * 4 + static_cast<std::size_t>(idx[static_cast<std::size_t>(s)]);
      sum += t.data()[in_flat];
    }
    out.data()[flat] = sum;
  }
  return out;
}

Tensor4 raise_lower(const Tensor4& t, int slot, const MetricAtPoint& m) {
  const int r = t.rank();
  if (slot < 0 || slot >= r) throw IndexError("raise/lower slot out of range");
  const bool raising = t.variance(slot) == Variance::Lower;
  const Tensor4& g = raising ? m.g_inv : m.g;

  Tensor4 out = t;
  // Rebuild with flipped variance on `slot`.
  {
    std::vector<Variance> vs;
    for (int s = 0; s < r; ++s)
      vs.push_back(s == slot ? (raising ? Variance::Upper : Variance::Lower)
                             : t.variance(s));
    switch (vs.size()) {
      case 0: out = Tensor4({}); break;
      case 1: out = Tensor4({vs[0]}); break;
      case 2: out = Tensor4({vs[0], vs[1]}); break;
      case 3: out = Tensor4({vs[0], vs[1], vs[2]}); break;
      case 4: out = Tensor4({vs[0], vs[1], vs[2], vs[3]}); break;
      case 5: out = Tensor4({vs[0], vs[1], vs[2], vs[3], vs[4]}); break;
    }
  }

  const std::size_t n = out.size();
  std::array<int, 5> idx{};
  for (std::size_t flat = 0; flat < n; ++flat) {
    std::size_t rem = flat;
    for (int s = r - 1; s >= 0; --s) {
      idx[static_cast<std::size_t>(s)] = static_cast<int>(rem & 3);
      rem >>= 2;
    }
    const int target = idx[static_cast<std::size_t>(slot)];
    double sum = 0.0;
    for (int d = 0; d < 4; ++d) {
      idx[static_cast<std::size_t>(slot)] = d;
      std::size_t in_flat = 0;
      for (int s = 0; s < r; ++s) in_flat = in_flat * 4 + static_cast<std::size_t>(idx[static_cast<std::size_t>(s)]);
      sum += g(target, d) * t.data()[in_flat];
    }
    idx[static_cast<std::size_t>(slot)] = target;
    out.data()[flat] = sum;
  }
  return out;
}

double max_abs(const Tensor4& t) {
  double m = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) m = std::max(m, std::fabs(t.data()[i]));
  return m;
}

}  // namespace kst
