#include <chrono>
#include <cmath>
#include <random>

#include <doctest.h>

#include "kst/catalog.hpp"
#include "kst/geometry.hpp"
#include "support/curvature_oracle.hpp"

using kst::CatalogEntry;
using kst::CurvatureBundle;
using kst::Point;
using kst::Tensor4;
using kst::Variance;
using kst::Vec4;

namespace {

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {
      "minkowski", "euclidean",     "neutral_kahler_flat", "sphere4",
      "de_sitter", "flrw",          "schwarzschild",       "fubini_study"};
  return names;
}

kst::ExprTensorField metric_field(const kst::MetricStructure& m) {
  kst::ExprTensorField f;
  f.variance = {Variance::Lower, Variance::Lower};
  f.comps.resize(16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) f.comps[static_cast<std::size_t>(i * 4 + j)] = m.component(i, j);
  return f;
}

double gamma_max_abs(const kst::Gamma& g) {
  double m = 0.0;
  for (const auto& a : g)
    for (const auto& b : a)
      for (double c : b) m = std::max(m, std::fabs(c));
  return m;
}

}  // namespace

TEST_SUITE_BEGIN("geometry");

TEST_CASE("Minkowski is exactly flat") {
  CatalogEntry e = kst::builtin("minkowski");
  for (const auto& p : kst::sample_points(e.metric.domain, 10, 42)) {
    kst::Gamma g = kst::christoffel(e.metric, p);
    CHECK(gamma_max_abs(g) == 0.0);
    CurvatureBundle b = CurvatureBundle::at(e.metric, p);
    CHECK(kst::max_abs(b.riemann_0_4()) == 0.0);
    CHECK(kst::max_abs(b.ricci()) == 0.0);
    CHECK(b.scalar_r() == 0.0);
  }
}

TEST_CASE("FLRW a(t)=t Christoffel closed forms") {
  CatalogEntry e = kst::builtin("flrw(1)");
  Point p{{2.0, 0.3, -0.4, 0.1}};
  kst::Gamma g = kst::christoffel(e.metric, p);
  // Gamma^0_11 = a a' = t, Gamma^1_01 = a'/a = 1/t
  CHECK(g[0][1][1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(g[1][0][1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(g[1][1][0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(g[0][2][2] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(g[2][0][2] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("constant rescaling of the metric leaves Christoffel unchanged") {
  CatalogEntry e = kst::builtin("flrw(1)");
  kst::MetricStructure scaled = e.metric;
  const double c = 2.37;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j)
      scaled.set_component(i, j,
                           kst::ScalarExpr::binary(kst::ExprOp::Mul,
                                                   kst::ScalarExpr::constant(c),
                                                   e.metric.component(i, j)));
  Point p{{1.7, 0.2, 0.5, -0.3}};
  kst::Gamma a = kst::christoffel(e.metric, p);
  kst::Gamma b = kst::christoffel(scaled, p);
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        CHECK(std::fabs(a[k][i][j] - b[k][i][j]) <= 1e-12 * std::max(1.0, std::fabs(a[k][i][j])));
}

TEST_CASE("unit S4 pins the sign convention: K = +1, r = 12") {
  CatalogEntry e = kst::builtin("sphere4");
  auto pts = kst::sample_points(e.metric.domain, 3, 42);
  std::mt19937_64 rng(99);
  auto rnd = [&] { return 2.0 * std::ldexp(static_cast<double>(rng() >> 11), -53) - 1.0; };
  for (const auto& p : pts) {
    CurvatureBundle b = CurvatureBundle::at(e.metric, p);
    CHECK(b.scalar_r() == doctest::Approx(12.0).epsilon(1e-9));
    for (int trial = 0; trial < 7; ++trial) {
      Vec4 x{rnd(), rnd(), rnd(), rnd()};
      Vec4 y{rnd(), rnd(), rnd(), rnd()};
      const auto& m = b.metric();
      double det = m.inner(x, x) * m.inner(y, y) - m.inner(x, y) * m.inner(x, y);
      if (std::fabs(det) < 1e-3) continue;
      CHECK(kst::sectional_curvature(b, x, y) == doctest::Approx(1.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("sphere4 radius parameter scales curvature") {
  CatalogEntry e = kst::builtin("sphere4(2)");
  Point p{{1.2, 1.4, 1.6, 0.5}};
  CurvatureBundle b = CurvatureBundle::at(e.metric, p);
  CHECK(b.scalar_r() == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("de Sitter is an Einstein space: S = 3g, r = 12") {
  CatalogEntry e = kst::builtin("de_sitter");
  for (const auto& p : kst::sample_points(e.metric.domain, 5, 42)) {
    CurvatureBundle b = CurvatureBundle::at(e.metric, p);
    CHECK(b.scalar_r() == doctest::Approx(12.0).epsilon(1e-8));
    const Tensor4 diff = b.ricci() - 3.0 * b.metric().g;
    CHECK(kst::max_abs(diff) < 1e-8 * std::max(1.0, kst::max_abs(b.ricci())));
  }
}

TEST_CASE("curvature matches the finite-difference oracle") {
  for (const char* name : {"flrw(1)", "schwarzschild", "sphere4", "fubini_study"}) {
    CatalogEntry e = kst::builtin(name);
    auto pts = kst::sample_points(e.metric.domain, 2, 7);
    for (const auto& p : pts) {
      CurvatureBundle b = CurvatureBundle::at(e.metric, p);
      oracle::FdCurvature fd = oracle::fd_curvature(e.metric, p);
      const double scale = std::max(1.0, kst::max_abs(b.riemann_0_4()));
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          for (int k = 0; k < 4; ++k)
            for (int l = 0; l < 4; ++l)
              CHECK(std::fabs(b.riemann_0_4()(i, j, k, l) - fd.riemann[i][j][k][l]) <
                    2e-5 * scale);
      CHECK(std::fabs(b.scalar_r() - fd.scalar_r) < 2e-5 * std::max(1.0, std::fabs(b.scalar_r())));
    }
  }
}

TEST_CASE("Riemann symmetries hold on the whole catalog") {
  for (const auto& name : catalog_names()) {
    CatalogEntry e = kst::builtin(name);
    for (const auto& p : kst::sample_points(e.metric.domain, 10, 42)) {
      CurvatureBundle b = CurvatureBundle::at(e.metric, p);
      const Tensor4& R = b.riemann_0_4();
      const double tol = 1e-9 * std::max(1.0, kst::max_abs(R));
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          for (int k = 0; k < 4; ++k)
            for (int l = 0; l < 4; ++l) {
              CHECK(std::fabs(R(i, j, k, l) + R(j, i, k, l)) < tol);
              CHECK(std::fabs(R(i, j, k, l) + R(i, j, l, k)) < tol);
              CHECK(std::fabs(R(i, j, k, l) - R(k, l, i, j)) < tol);
              CHECK(std::fabs(R(i, j, k, l) + R(j, k, i, l) + R(k, i, j, l)) < tol);
            }
      // Ricci symmetry
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          CHECK(std::fabs(b.ricci()(i, j) - b.ricci()(j, i)) < 1e-10 * std::max(1.0, kst::max_abs(b.ricci())));
    }
  }
}

TEST_CASE("metric compatibility: nabla g = 0 on the whole catalog") {
  for (const auto& name : catalog_names()) {
    CatalogEntry e = kst::builtin(name);
    kst::ExprTensorField gf = metric_field(e.metric);
    for (const auto& p : kst::sample_points(e.metric.domain, 10, 42)) {
      CurvatureBundle b = CurvatureBundle::at(e.metric, p);
      CHECK(kst::max_abs(kst::covariant_derivative(b, gf)) < 1e-10);
    }
  }
}

TEST_CASE("locally symmetric spaces have parallel curvature") {
  for (const char* name : {"sphere4", "de_sitter"}) {
    CatalogEntry e = kst::builtin(name);
    for (const auto& p : kst::sample_points(e.metric.domain, 5, 42)) {
      CurvatureBundle b = CurvatureBundle::at(e.metric, p);
      const double scale = std::max(1.0, kst::max_abs(b.riemann_0_4()));
      CHECK(kst::max_abs(b.nabla_riemann()) < 1e-8 * scale);
    }
  }
}

TEST_CASE("FLRW a(t)=t has non-parallel curvature") {
  CatalogEntry e = kst::builtin("flrw(1)");
  Point p{{1.0, 0.2, -0.3, 0.4}};
  CurvatureBundle b = CurvatureBundle::at(e.metric, p);
  CHECK(kst::max_abs(b.nabla_riemann()) > 0.01);
  // coarse agreement with the finite-difference oracle
  CHECK(oracle::fd_nabla_riemann_max_abs(e.metric, p) ==
        doctest::Approx(kst::max_abs(b.nabla_riemann())).epsilon(1e-2));
}

TEST_CASE("contracted second Bianchi identity: div Ric = dr/2") {
  for (const auto& name : catalog_names()) {
    CatalogEntry e = kst::builtin(name);
    for (const auto& p : kst::sample_points(e.metric.domain, 5, 42)) {
      CurvatureBundle b = CurvatureBundle::at(e.metric, p);
      Tensor4 nS = b.nabla_ricci_direct();
      Vec4 dr = b.scalar_r_gradient();
      double scale = std::max(1.0, kst::max_abs(nS));
      for (int c = 0; c < 4; ++c) {
        double div = 0.0;
        for (int a = 0; a < 4; ++a)
          for (int bb = 0; bb < 4; ++bb) div += b.metric().g_inv(a, bb) * nS(a, bb, c);
        CHECK(std::fabs(div - 0.5 * dr[static_cast<std::size_t>(c)]) < 1e-7 * scale);
      }
    }
  }
}

TEST_CASE("sectional curvature of flat space is zero and plane-invariant") {
  CatalogEntry e = kst::builtin("minkowski");
  CurvatureBundle b = CurvatureBundle::at(e.metric, Point{});
  Vec4 x{0.3, 1.0, 0.0, 0.2};
  Vec4 y{0.1, 0.0, 1.0, -0.5};
  CHECK(kst::sectional_curvature(b, x, y) == 0.0);
}

TEST_CASE("sectional curvature is invariant under a change of plane basis") {
  CatalogEntry e = kst::builtin("schwarzschild");
  auto pts = kst::sample_points(e.metric.domain, 3, 13);
  std::mt19937_64 rng(17);
  auto rnd = [&] { return 2.0 * std::ldexp(static_cast<double>(rng() >> 11), -53) - 1.0; };
  for (const auto& p : pts) {
    CurvatureBundle b = CurvatureBundle::at(e.metric, p);
    Vec4 x{1.0, 0.3, rnd(), 0.1};
    Vec4 y{0.0, 1.0, 0.2, rnd()};
    double k0;
    try {
      k0 = kst::sectional_curvature(b, x, y);
    } catch (const kst::DegeneratePlaneError&) {
      continue;
    }
    for (int trial = 0; trial < 5; ++trial) {
      double a = rnd(), bb = rnd(), c = rnd(), d = rnd();
      if (std::fabs(a * d - bb * c) < 0.1) continue;
      Vec4 u, v;
      for (std::size_t i = 0; i < 4; ++i) {
        u[i] = a * x[i] + bb * y[i];
        v[i] = c * x[i] + d * y[i];
      }
      CHECK(kst::sectional_curvature(b, u, v) ==
            doctest::Approx(k0).epsilon(1e-10));
    }
  }
}

TEST_CASE("null planes raise DegeneratePlaneError") {
  CatalogEntry e = kst::builtin("minkowski");
  CurvatureBundle b = CurvatureBundle::at(e.metric, Point{});
  Vec4 null_vec{1.0, 1.0, 0.0, 0.0};
  Vec4 y{0.0, 0.0, 1.0, 0.0};
  CHECK_THROWS_AS(kst::sectional_curvature(b, null_vec, y), kst::DegeneratePlaneError);
}

TEST_CASE("orthonormal frames") {
  CatalogEntry mink = kst::builtin("minkowski");
  CurvatureBundle b = CurvatureBundle::at(mink.metric, Point{});

  SUBCASE("coordinate observer reproduces the standard basis") {
    kst::Frame f = kst::orthonormal_frame(b.metric(), Vec4{1, 0, 0, 0});
    for (int a = 0; a < 4; ++a)
      for (int i = 0; i < 4; ++i)
        CHECK(f.e[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] ==
              doctest::Approx(a == i ? 1.0 : 0.0).epsilon(1e-15));
    CHECK(f.sign[0] == -1.0);
    CHECK(f.sign[1] == 1.0);
  }

  SUBCASE("boosted observer satisfies the orthonormality relations") {
    kst::Frame f = kst::orthonormal_frame(b.metric(), Vec4{std::sqrt(2.0), 1.0, 0.0, 0.0});
    for (int a = 0; a < 4; ++a)
      for (int c = 0; c < 4; ++c) {
        double want = a != c ? 0.0 : (a == 0 ? -1.0 : 1.0);
        CHECK(std::fabs(b.metric().inner(f.e[static_cast<std::size_t>(a)],
                                         f.e[static_cast<std::size_t>(c)]) -
                        want) < 1e-12);
      }
  }

  SUBCASE("spacelike seed vector is rejected") {
    CHECK_THROWS_AS(kst::orthonormal_frame(b.metric(), Vec4{0, 1, 0, 0}), kst::FrameError);
  }

  SUBCASE("FLRW comoving frame normalizes the spatial legs by 1/a") {
    CatalogEntry e = kst::builtin("flrw(1)");
    Point p{{2.0, 0.1, 0.2, 0.3}};
    kst::Frame f = kst::orthonormal_frame(e.metric, p, Vec4{1, 0, 0, 0});
    CHECK(f.e[1][1] == doctest::Approx(0.5).epsilon(1e-12));  // 1/a = 1/t
    CHECK(f.e[1][0] == doctest::Approx(0.0).epsilon(1e-15));
  }
}

TEST_CASE("seeded sampling is deterministic and inside the box") {
  kst::DomainBox box{{{0.0, 1.0}, {-1.0, 1.0}, {2.0, 3.0}, {-5.0, -4.0}}};
  auto a = kst::sample_points(box, 8, 42);
  auto bpts = kst::sample_points(box, 8, 42);
  REQUIRE(a.size() == 8);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (int c = 0; c < 4; ++c) {
      CHECK(a[i][c] == bpts[i][c]);
      CHECK(a[i][c] >= box[static_cast<std::size_t>(c)][0]);
      CHECK(a[i][c] <= box[static_cast<std::size_t>(c)][1]);
    }
  auto other = kst::sample_points(box, 8, 43);
  CHECK(other[0][0] != a[0][0]);
}

TEST_SUITE_END();
