#include <cmath>

#include <doctest.h>

#include "kst/catalog.hpp"
#include "kst/conformal.hpp"

using kst::CatalogEntry;
using kst::CurvatureBundle;
using kst::IsotropyFit;
using kst::Point;
using kst::SectionalCheck;
using kst::Tensor4;
using kst::Vec4;

namespace {

Vec4 fluid_rho(const CatalogEntry& e, const Point& p) { return e.fluid->rho_values(p); }

}  // namespace

TEST_SUITE_BEGIN("conformal");

TEST_CASE("conformally flat catalog members have vanishing Weyl tensor") {
  for (const char* name : {"minkowski", "sphere4", "de_sitter", "flrw"}) {
    CatalogEntry e = kst::builtin(name);
    for (const auto& p : kst::sample_points(e.metric.domain, 5, 42)) {
      CurvatureBundle b = CurvatureBundle::at(e.metric, p);
      const double scale = std::max(1.0, kst::max_abs(b.riemann_0_4()));
      CHECK(kst::max_abs(kst::weyl_tensor(b)) < 1e-9 * scale);
    }
  }
}

TEST_CASE("Schwarzschild: Ricci-flat with substantial Weyl curvature") {
  CatalogEntry e = kst::builtin("schwarzschild");
  Point p{{0.5, 4.0, 1.3, 1.0}};  // r = 4m
  CurvatureBundle b = CurvatureBundle::at(e.metric, p);
  CHECK(kst::max_abs(b.ricci()) < 1e-8);
  CHECK(kst::max_abs(kst::weyl_tensor(b)) > 0.01);
  CHECK(kst::constant_curvature_residual(b) > 0.01);
}

TEST_CASE("Weyl is trace-free") {
  for (const char* name : {"schwarzschild", "fubini_study", "flrw"}) {
    CatalogEntry e = kst::builtin(name);
    for (const auto& p : kst::sample_points(e.metric.domain, 3, 42)) {
      CurvatureBundle b = CurvatureBundle::at(e.metric, p);
      Tensor4 C = kst::weyl_tensor(b);
      const double scale = std::max(1.0, kst::max_abs(b.riemann_0_4()));
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
          double tr = 0.0;
          for (int i = 0; i < 4; ++i)
            for (int l = 0; l < 4; ++l) tr += b.metric().g_inv(i, l) * C(i, j, k, l);
          CHECK(std::fabs(tr) < 1e-9 * scale);
        }
    }
  }
}

TEST_CASE("Weyl decomposition recombines to the curvature tensor") {
  for (const auto& info : kst::builtin_catalog()) {
    CatalogEntry e = kst::builtin(info.name);
    for (const auto& p : kst::sample_points(e.metric.domain, 3, 42)) {
      CurvatureBundle b = CurvatureBundle::at(e.metric, p);
      Tensor4 C = kst::weyl_tensor(b);
      const Tensor4& g = b.metric().g;
      const Tensor4& S = b.ricci();
      const double r = b.scalar_r();
      const double scale = std::max(1.0, kst::max_abs(b.riemann_0_4()));
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          for (int k = 0; k < 4; ++k)
            for (int l = 0; l < 4; ++l) {
              const double ricci_part = S(j, k) * g(i, l) - S(i, k) * g(j, l) +
                                        S(i, l) * g(j, k) - S(j, l) * g(i, k);
              const double scalar_part = g(j, k) * g(i, l) - g(i, k) * g(j, l);
              const double rebuilt =
                  C(i, j, k, l) + 0.5 * ricci_part - (r / 6.0) * scalar_part;
              CHECK(std::fabs(rebuilt - b.riemann_0_4()(i, j, k, l)) <= 1e-10 * scale);
            }
    }
  }
}

TEST_CASE("constant-curvature residual separates the catalog") {
  for (const char* name : {"sphere4", "de_sitter"}) {
    CatalogEntry e = kst::builtin(name);
    for (const auto& p : kst::sample_points(e.metric.domain, 5, 42))
      CHECK(kst::constant_curvature_residual(e.metric, p) < 1e-8);
  }
  CatalogEntry sch = kst::builtin("schwarzschild");
  for (const auto& p : kst::sample_points(sch.metric.domain, 5, 42))
    CHECK(kst::constant_curvature_residual(sch.metric, p) > 0.01);
}

TEST_CASE("de Sitter sectional curvatures all equal r/12") {
  CatalogEntry e = kst::builtin("de_sitter");
  for (const auto& p : kst::sample_points(e.metric.domain, 5, 42)) {
    CurvatureBundle b = CurvatureBundle::at(e.metric, p);
    SectionalCheck sc = kst::sectional_theorem_check(b, fluid_rho(e, p));
    CHECK(sc.target == doctest::Approx(1.0).epsilon(1e-9));
    for (double k : sc.k_spatial) CHECK(k == doctest::Approx(sc.target).epsilon(1e-8));
    for (double k : sc.k_timelike) CHECK(k == doctest::Approx(sc.target).epsilon(1e-8));
  }
}

TEST_CASE("Minkowski sectional check is identically zero") {
  CatalogEntry e = kst::builtin("minkowski");
  SectionalCheck sc = kst::sectional_theorem_check(e.metric, Point{}, Vec4{1, 0, 0, 0});
  CHECK(sc.target == 0.0);
  for (double k : sc.k_spatial) CHECK(k == 0.0);
  for (double k : sc.k_timelike) CHECK(k == 0.0);
}

TEST_CASE("FLRW a(t)=t separates spatial and timelike sectional curvature") {
  CatalogEntry e = kst::builtin("flrw(1)");
  Point p{{1.0, 0.4, -0.1, 0.2}};
  SectionalCheck sc = kst::sectional_theorem_check(e.metric, p, Vec4{1, 0, 0, 0});
  // closed forms at a = t: K(e_a,e_b) = (a'/a)^2 = 1, K(e_a, rho) = a''/a = 0
  for (double k : sc.k_spatial) CHECK(k == doctest::Approx(1.0).epsilon(1e-8));
  for (double k : sc.k_timelike) CHECK(std::fabs(k) < 1e-8);
}

TEST_CASE("isotropy fit on de Sitter: a = r/12, b = -r/12") {
  CatalogEntry e = kst::builtin("de_sitter");
  for (const auto& p : kst::sample_points(e.metric.domain, 5, 42)) {
    IsotropyFit fit = kst::isotropy_fit(e.metric, p, fluid_rho(e, p));
    CHECK(fit.a == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(fit.b == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(fit.res_a < 1e-8);
    CHECK(fit.res_b < 1e-8);
  }
}

TEST_CASE("isotropy fit on Minkowski is zero") {
  CatalogEntry e = kst::builtin("minkowski");
  IsotropyFit fit = kst::isotropy_fit(e.metric, Point{}, Vec4{1, 0, 0, 0});
  CHECK(fit.a == 0.0);
  CHECK(fit.b == 0.0);
  CHECK(fit.res_a == 0.0);
  CHECK(fit.res_b == 0.0);
}

TEST_CASE("Schwarzschild is not spatially isotropic for the static observer") {
  CatalogEntry e = kst::builtin("schwarzschild");
  Point p{{0.5, 4.0, 1.3, 1.0}};
  IsotropyFit fit = kst::isotropy_fit(e.metric, p, fluid_rho(e, p));
  CHECK(fit.res_a > 1e-3);
}

TEST_CASE("theorems 3.1/3.2 as implications over the catalog") {
  const double tol = 1e-8;
  for (const auto& info : kst::builtin_catalog()) {
    CatalogEntry e = kst::builtin(info.name);
    if (!e.fluid) continue;  // needs a timelike observer
    for (const auto& p : kst::sample_points(e.metric.domain, 5, 42)) {
      CurvatureBundle b = CurvatureBundle::at(e.metric, p);
      const double scale = std::max(1.0, kst::max_abs(b.riemann_0_4()));
      const bool conf_flat = kst::max_abs(kst::weyl_tensor(b)) < tol * scale;
      const bool einstein =
          kst::max_abs(b.ricci() - 0.25 * b.scalar_r() * b.metric().g) < tol * scale;
      if (!conf_flat || !einstein) continue;
      const double target = b.scalar_r() / 12.0;
      SectionalCheck sc = kst::sectional_theorem_check(b, fluid_rho(e, p));
      for (double k : sc.k_spatial) CHECK(std::fabs(k - target) < 10.0 * tol);
      for (double k : sc.k_timelike) CHECK(std::fabs(k - target) < 10.0 * tol);
      IsotropyFit fit = kst::isotropy_fit(b, fluid_rho(e, p));
      CHECK(std::fabs(fit.a - target) < 10.0 * tol);
      CHECK(std::fabs(fit.b + target) < 10.0 * tol);
      CHECK(fit.res_a < 10.0 * tol);
      CHECK(fit.res_b < 10.0 * tol);
    }
  }
}

TEST_SUITE_END();
