#include "kst/geometry.hpp"

#include <cmath>
#include <random>

#include "kst/linalg.hpp"

namespace kst {

bool MetricStructure::in_domain(const Point& p) const {
  for (int i = 0; i < 4; ++i)
    if (p[i] < domain[static_cast<std::size_t>(i)][0] || p[i] > domain[static_cast<std::size_t>(i)][1]) return false;
  return true;
}

Point MetricStructure::domain_center() const {
  Point c;
  for (int i = 0; i < 4; ++i)
    c[i] = 0.5 * (domain[static_cast<std::size_t>(i)][0] + domain[static_cast<std::size_t>(i)][1]);
  return c;
}

MetricJets metric_jets(const MetricStructure& m, const Point& p) {
  MetricJets mj;
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      Jet3 jet = eval_jet3(m.component(i, j), p);
      mj.g[i][j] = mj.g[j][i] = jet.value;
      for (int a = 0; a < 4; ++a) {
        mj.dg[a][i][j] = mj.dg[a][j][i] = jet.grad[static_cast<std::size_t>(a)];
        for (int b = 0; b < 4; ++b) {
          mj.d2g[a][b][i][j] = mj.d2g[a][b][j][i] = jet.h(a, b);
          for (int c = 0; c < 4; ++c)
            mj.d3g[a][b][c][i][j] = mj.d3g[a][b][c][j][i] = jet.t(a, b, c);
        }
      }
    }
  }
  mj.det = linalg::invert4(mj.g, mj.ginv);
  if (!(std::fabs(mj.det) > 1e-12))
    throw DegenerateMetricError("metric degenerate at sample point (|det| <= 1e-12)");
  return mj;
}

namespace {

// H[l][i][j] = d_i g_jl + d_j g_il - d_l g_ij
void christoffel_from_jets(const MetricJets& mj, Gamma& gamma) {
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double s = 0.0;
        for (int l = 0; l < 4; ++l)
          s += mj.ginv[k][l] * (mj.dg[i][j][l] + mj.dg[j][i][l] - mj.dg[l][i][j]);
        gamma[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 0.5 * s;
      }
}

}  // namespace

Gamma christoffel(const MetricStructure& m, const Point& p) {
  MetricJets mj = metric_jets(m, p);
  Gamma gamma;
  christoffel_from_jets(mj, gamma);
  return gamma;
}

struct CurvatureBundle::SecondOrder {
  double dginv[4][4][4];          // [a][k][l]
  double d2ginv[4][4][4][4];      // [a][b][k][l]
  double d2gamma[4][4][4][4][4];  // [a][b][k][i][j]
  double dricci[4][4][4];         // [a][j][k]
  double dr[4];
  Tensor4 d_riemann_0_4;          // (a,i,j,k,l) coordinate partials of R_ijkl
};

CurvatureBundle CurvatureBundle::at(const MetricStructure& m, const Point& p) {
  CurvatureBundle b;
  b.point_ = p;
  auto jets = std::make_shared<MetricJets>(metric_jets(m, p));
  const MetricJets& mj = *jets;
  b.metric_ = MetricAtPoint::from_components(mj.g, m.signature);
  b.jets_ = jets;
  christoffel_from_jets(mj, b.gamma_);

  // dginv[a] = -ginv dg[a] ginv
  double dginv[4][4][4];
  for (int a = 0; a < 4; ++a)
    for (int k = 0; k < 4; ++k)
      for (int l = 0; l < 4; ++l) {
        double s = 0.0;
        for (int mm = 0; mm < 4; ++mm)
          for (int n = 0; n < 4; ++n) s += mj.ginv[k][mm] * mj.dg[a][mm][n] * mj.ginv[n][l];
        dginv[a][k][l] = -s;
      }

  // dGamma[a][k][i][j]
  for (int a = 0; a < 4; ++a)
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          double s = 0.0;
          for (int l = 0; l < 4; ++l) {
            double H = mj.dg[i][j][l] + mj.dg[j][i][l] - mj.dg[l][i][j];
            double dH = mj.d2g[a][i][j][l] + mj.d2g[a][j][i][l] - mj.d2g[a][l][i][j];
            s += dginv[a][k][l] * H + mj.ginv[k][l] * dH;
          }
          b.dgamma_[a][k][i][j] = 0.5 * s;
        }

  const auto& ga = b.gamma_;
  b.riemann_1_3_ = Tensor4({Variance::Lower, Variance::Lower, Variance::Lower, Variance::Upper});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          double s = b.dgamma_[i][l][j][k] - b.dgamma_[j][l][i][k];
          for (int mm = 0; mm < 4; ++mm)
            s += ga[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)][static_cast<std::size_t>(mm)] * ga[static_cast<std::size_t>(mm)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] -
                 ga[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)][static_cast<std::size_t>(mm)] * ga[static_cast<std::size_t>(mm)][static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
          b.riemann_1_3_(i, j, k, l) = s;
        }

  b.riemann_0_4_ = raise_lower(b.riemann_1_3_, 3, b.metric_);

  b.ricci_ = Tensor4({Variance::Lower, Variance::Lower});
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) {
      double s = 0.0;
      for (int i = 0; i < 4; ++i)
        for (int l = 0; l < 4; ++l) s += mj.ginv[i][l] * b.riemann_0_4_(i, j, k, l);
      b.ricci_(j, k) = s;
    }

  b.scalar_r_ = 0.0;
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) b.scalar_r_ += mj.ginv[j][k] * b.ricci_(j, k);

  return b;
}

CurvatureBundle riemann(const MetricStructure& m, const Point& p) {
  return CurvatureBundle::at(m, p);
}

const CurvatureBundle::SecondOrder& CurvatureBundle::second_order() const {
  if (second_) return *second_;
  auto so = std::make_shared<SecondOrder>();
  const MetricJets& mj = *jets_;

  for (int a = 0; a < 4; ++a)
    for (int k = 0; k < 4; ++k)
      for (int l = 0; l < 4; ++l) {
        double s = 0.0;
        for (int mm = 0; mm < 4; ++mm)
          for (int n = 0; n < 4; ++n) s += mj.ginv[k][mm] * mj.dg[a][mm][n] * mj.ginv[n][l];
        so->dginv[a][k][l] = -s;
      }

  for (int a = 0; a < 4; ++a)
    for (int bb = 0; bb < 4; ++bb)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          double s = 0.0;
          for (int mm = 0; mm < 4; ++mm)
            for (int n = 0; n < 4; ++n)
              s += so->dginv[bb][k][mm] * mj.dg[a][mm][n] * mj.ginv[n][l] +
                   mj.ginv[k][mm] * mj.d2g[a][bb][mm][n] * mj.ginv[n][l] +
                   mj.ginv[k][mm] * mj.dg[a][mm][n] * so->dginv[bb][n][l];
          so->d2ginv[a][bb][k][l] = -s;
        }

  for (int a = 0; a < 4; ++a)
    for (int bb = 0; bb < 4; ++bb)
      for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int l = 0; l < 4; ++l) {
              double H = mj.dg[i][j][l] + mj.dg[j][i][l] - mj.dg[l][i][j];
              double dHa = mj.d2g[a][i][j][l] + mj.d2g[a][j][i][l] - mj.d2g[a][l][i][j];
              double dHb = mj.d2g[bb][i][j][l] + mj.d2g[bb][j][i][l] - mj.d2g[bb][l][i][j];
              double d2H = mj.d3g[a][bb][i][j][l] + mj.d3g[a][bb][j][i][l] - mj.d3g[a][bb][l][i][j];
              s += so->d2ginv[a][bb][k][l] * H + so->dginv[a][k][l] * dHb +
                   so->dginv[bb][k][l] * dHa + mj.ginv[k][l] * d2H;
            }
            so->d2gamma[a][bb][k][i][j] = 0.5 * s;
          }

  // dR^l_ijk then dR_ijkl
  const auto& ga = gamma_;
  auto gam = [&](int k, int i, int j) {
    return ga[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  };
  std::vector<double> dR13(4 * 256, 0.0);  // [a][i][j][k][l]
  auto dr13 = [&](int a, int i, int j, int k, int l) -> double& {
    return dR13[static_cast<std::size_t>((((a * 4 + i) * 4 + j) * 4 + k) * 4 + l)];
  };
  for (int a = 0; a < 4; ++a)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            double s = so->d2gamma[a][i][l][j][k] - so->d2gamma[a][j][l][i][k];
            for (int mm = 0; mm < 4; ++mm)
              s += dgamma_[a][l][i][mm] * gam(mm, j, k) + gam(l, i, mm) * dgamma_[a][mm][j][k] -
                   dgamma_[a][l][j][mm] * gam(mm, i, k) - gam(l, j, mm) * dgamma_[a][mm][i][k];
            dr13(a, i, j, k, l) = s;
          }

  so->d_riemann_0_4 = Tensor4({Variance::Lower, Variance::Lower, Variance::Lower,
                               Variance::Lower, Variance::Lower});
  for (int a = 0; a < 4; ++a)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            double s = 0.0;
            for (int mm = 0; mm < 4; ++mm)
              s += mj.dg[a][l][mm] * riemann_1_3_(i, j, k, mm) + mj.g[l][mm] * dr13(a, i, j, k, mm);
            so->d_riemann_0_4(a, i, j, k, l) = s;
          }

  for (int a = 0; a < 4; ++a)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        double s = 0.0;
        for (int i = 0; i < 4; ++i)
          for (int l = 0; l < 4; ++l)
            s += so->dginv[a][i][l] * riemann_0_4_(i, j, k, l) +
                 mj.ginv[i][l] * so->d_riemann_0_4(a, i, j, k, l);
        so->dricci[a][j][k] = s;
      }

  for (int a = 0; a < 4; ++a) {
    double s = 0.0;
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        s += so->dginv[a][j][k] * ricci_(j, k) + mj.ginv[j][k] * so->dricci[a][j][k];
    so->dr[a] = s;
  }

  second_ = std::move(so);
  return *second_;
}

const Tensor4& CurvatureBundle::nabla_riemann() const {
  if (nabla_riemann_) return *nabla_riemann_;
  const SecondOrder& so = second_order();
  const auto& ga = gamma_;
  Tensor4 nr({Variance::Lower, Variance::Lower, Variance::Lower, Variance::Lower,
              Variance::Lower});
  for (int a = 0; a < 4; ++a)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            double s = so.d_riemann_0_4(a, i, j, k, l);
            for (int mm = 0; mm < 4; ++mm) {
              s -= ga[static_cast<std::size_t>(mm)][static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] * riemann_0_4_(mm, j, k, l);
              s -= ga[static_cast<std::size_t>(mm)][static_cast<std::size_t>(a)][static_cast<std::size_t>(j)] * riemann_0_4_(i, mm, k, l);
              s -= ga[static_cast<std::size_t>(mm)][static_cast<std::size_t>(a)][static_cast<std::size_t>(k)] * riemann_0_4_(i, j, mm, l);
              s -= ga[static_cast<std::size_t>(mm)][static_cast<std::size_t>(a)][static_cast<std::size_t>(l)] * riemann_0_4_(i, j, k, mm);
            }
            nr(a, i, j, k, l) = s;
          }
  nabla_riemann_ = std::move(nr);
  return *nabla_riemann_;
}

Tensor4 CurvatureBundle::nabla_ricci_direct() const {
  const SecondOrder& so = second_order();
  const auto& ga = gamma_;
  Tensor4 ns({Variance::Lower, Variance::Lower, Variance::Lower});
  for (int a = 0; a < 4; ++a)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        double s = so.dricci[a][j][k];
        for (int mm = 0; mm < 4; ++mm) {
          s -= ga[static_cast<std::size_t>(mm)][static_cast<std::size_t>(a)][static_cast<std::size_t>(j)] * ricci_(mm, k);
          s -= ga[static_cast<std::size_t>(mm)][static_cast<std::size_t>(a)][static_cast<std::size_t>(k)] * ricci_(j, mm);
        }
        ns(a, j, k) = s;
      }
  return ns;
}

Tensor4 CurvatureBundle::nabla_ricci_from_curvature() const {
  const Tensor4& nr = nabla_riemann();
  const MetricJets& mj = *jets_;
  Tensor4 ns({Variance::Lower, Variance::Lower, Variance::Lower});
  for (int a = 0; a < 4; ++a)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        double s = 0.0;
        for (int i = 0; i < 4; ++i)
          for (int l = 0; l < 4; ++l) s += mj.ginv[i][l] * nr(a, i, j, k, l);
        ns(a, j, k) = s;
      }
  return ns;
}

Vec4 CurvatureBundle::scalar_r_gradient() const {
  const SecondOrder& so = second_order();
  return Vec4{so.dr[0], so.dr[1], so.dr[2], so.dr[3]};
}

Tensor4 ExprTensorField::values(const Point& p) const {
  Tensor4 out;
  switch (rank()) {
    case 0: out = Tensor4({}); break;
    case 1: out = Tensor4({variance[0]}); break;
    case 2: out = Tensor4({variance[0], variance[1]}); break;
    case 3: out = Tensor4({variance[0], variance[1], variance[2]}); break;
    case 4: out = Tensor4({variance[0], variance[1], variance[2], variance[3]}); break;
    default: throw IndexError("expression field rank out of range");
  }
  if (comps.size() != out.size()) throw IndexError("component count != 4^rank");
  for (std::size_t i = 0; i < comps.size(); ++i) out.data()[i] = eval_value(comps[i], p);
  return out;
}

Tensor4 ExprTensorField::partials(const Point& p) const {
  std::vector<Variance> vs;
  vs.push_back(Variance::Lower);
  for (Variance v : variance) vs.push_back(v);
  Tensor4 out;
  switch (vs.size()) {
    case 1: out = Tensor4({vs[0]}); break;
    case 2: out = Tensor4({vs[0], vs[1]}); break;
    case 3: out = Tensor4({vs[0], vs[1], vs[2]}); break;
    case 4: out = Tensor4({vs[0], vs[1], vs[2], vs[3]}); break;
    case 5: out = Tensor4({vs[0], vs[1], vs[2], vs[3], vs[4]}); break;
    default: throw IndexError("expression field rank out of range");
  }
  const std::size_t block = comps.size();
  for (std::size_t i = 0; i < block; ++i) {
    Jet3 j = eval_jet3(comps[i], p);
    for (std::size_t a = 0; a < 4; ++a) out.data()[a * block + i] = j.grad[a];
  }
  return out;
}

Tensor4 covariant_from_partials(const CurvatureBundle& b, const Tensor4& values,
                                const Tensor4& partials) {
  const int r = values.rank();
  if (partials.rank() != r + 1) throw IndexError("partials rank must be values rank + 1");
  Tensor4 out = partials;  // start from the coordinate partials, same layout
  const auto& ga = b.gamma();

  const std::size_t n = out.size();
  std::array<int, 6> idx{};
  for (std::size_t flat = 0; flat < n; ++flat) {
    std::size_t rem = flat;
    for (int s = r; s >= 0; --s) {
      idx[static_cast<std::size_t>(s)] = static_cast<int>(rem & 3);
      rem >>= 2;
    }
    const int a = idx[0];
    double corr = 0.0;
    for (int s = 0; s < r; ++s) {
      const int is = idx[static_cast<std::size_t>(s + 1)];
      for (int mm = 0; mm < 4; ++mm) {
        // substitute index mm into slot s of `values`
        std::size_t vflat = 0;
        for (int q = 0; q < r; ++q) {
          int iq = (q == s) ? mm : idx[static_cast<std::size_t>(q + 1)];
          vflat = vflat * 4 + static_cast<std::size_t>(iq);
        }
        double gterm;
        if (values.variance(s) == Variance::Lower)
          gterm = -ga[static_cast<std::size_t>(mm)][static_cast<std::size_t>(a)][static_cast<std::size_t>(is)];
        else
          gterm = ga[static_cast<std::size_t>(is)][static_cast<std::size_t>(a)][static_cast<std::size_t>(mm)];
        corr += gterm * values.data()[vflat];
      }
    }
    out.data()[flat] += corr;
  }
  return out;
}

Tensor4 covariant_derivative(const CurvatureBundle& b, const ExprTensorField& field) {
  return covariant_from_partials(b, field.values(b.point()), field.partials(b.point()));
}

Tensor4 covariant_derivative(const MetricStructure& m, const Point& p,
                             const ExprTensorField& field) {
  return covariant_derivative(CurvatureBundle::at(m, p), field);
}

double sectional_curvature(const CurvatureBundle& b, const Vec4& x, const Vec4& y) {
  const MetricAtPoint& m = b.metric();
  const double gxx = m.inner(x, x);
  const double gyy = m.inner(y, y);
  const double gxy = m.inner(x, y);
  const double denom = gxx * gyy - gxy * gxy;
  if (std::fabs(denom) <= 1e-10)
    throw DegeneratePlaneError("null or degenerate plane in sectional curvature");
  const Tensor4& R = b.riemann_0_4();
  double num = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
          num += R(i, j, k, l) * x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)] *
                 y[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(l)];
  return num / denom;
}

double sectional_curvature(const MetricStructure& m, const Point& p, const Vec4& x,
                           const Vec4& y) {
  return sectional_curvature(CurvatureBundle::at(m, p), x, y);
}

Frame orthonormal_frame(const MetricAtPoint& m, const Vec4& rho) {
  const double q0 = m.inner(rho, rho);
  if (!(q0 < 0.0)) throw FrameError("frame seed vector must be timelike");
  Frame f;
  const double inv0 = 1.0 / std::sqrt(-q0);
  for (std::size_t i = 0; i < 4; ++i) f.e[0][i] = rho[i] * inv0;
  f.sign[0] = -1.0;

  int built = 1;
  for (int cand = 0; cand < 4 && built < 4; ++cand) {
    Vec4 v{};
    v[static_cast<std::size_t>(cand)] = 1.0;
    for (int a = 0; a < built; ++a) {
      const double c = f.sign[static_cast<std::size_t>(a)] * m.inner(v, f.e[static_cast<std::size_t>(a)]);
      for (std::size_t i = 0; i < 4; ++i) v[i] -= c * f.e[static_cast<std::size_t>(a)][i];
    }
    double euc = 0.0;
    for (double c : v) euc += c * c;
    if (euc < 1e-18) continue;  // candidate lies in the span built so far
    const double rescale = 1.0 / std::sqrt(euc);
    for (double& c : v) c *= rescale;
    const double q = m.inner(v, v);
    if (std::fabs(q) < 1e-10)
      throw FrameError("near-null intermediate vector in Gram-Schmidt");
    f.sign[static_cast<std::size_t>(built)] = q > 0.0 ? 1.0 : -1.0;
    const double ninv = 1.0 / std::sqrt(std::fabs(q));
    for (std::size_t i = 0; i < 4; ++i) f.e[static_cast<std::size_t>(built)][i] = v[i] * ninv;
    ++built;
  }
  if (built < 4) throw FrameError("coordinate seeds did not span a full frame");
  return f;
}

Frame orthonormal_frame(const MetricStructure& m, const Point& p, const Vec4& rho) {
  MetricJets mj = metric_jets(m, p);
  return orthonormal_frame(MetricAtPoint::from_components(mj.g, m.signature), rho);
}

std::vector<Point> sample_points(const DomainBox& box, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n) {
    Point p;
    for (std::size_t i = 0; i < 4; ++i) {
      // fixed 53-bit mapping, reproducible independent of the standard
      // library's distribution implementation
      const double u = std::ldexp(static_cast<double>(rng() >> 11), -53);
      p.coords[i] = box[i][0] + u * (box[i][1] - box[i][0]);
    }
    pts.push_back(p);
  }
  return pts;
}

}  // namespace kst
