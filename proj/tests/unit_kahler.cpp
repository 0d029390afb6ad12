#include <cmath>

#include <doctest.h>

#include "kst/catalog.hpp"
#include "kst/kahler.hpp"

using kst::CatalogEntry;
using kst::CurvatureBundle;
using kst::KahlerReport;
using kst::Point;

TEST_SUITE_BEGIN("kahler");

TEST_CASE("constant flat structure on the neutral metric passes everything") {
  CatalogEntry e = kst::builtin("neutral_kahler_flat");
  REQUIRE(e.complex_structure.has_value());
  for (const auto& p : kst::sample_points(e.metric.domain, 5, 42)) {
    KahlerReport rep = kst::kahler_audit(e.metric, *e.complex_structure, p, 1e-8);
    CHECK(rep.res_almost_complex < 1e-13);
    CHECK(rep.res_hermitian < 1e-13);
    CHECK(rep.res_parallel < 1e-13);
    CHECK(rep.res_ricci_invariance < 1e-13);
    CHECK(rep.all_ok());
  }
}

TEST_CASE("Fubini-Study is Kahler-Einstein") {
  CatalogEntry e = kst::builtin("fubini_study");
  REQUIRE(e.complex_structure.has_value());
  for (const auto& p : kst::sample_points(e.metric.domain, 5, 42)) {
    CurvatureBundle b = CurvatureBundle::at(e.metric, p);
    KahlerReport rep = kst::kahler_audit(b, e.metric, *e.complex_structure, 1e-8);
    CHECK(rep.res_almost_complex < 1e-8);
    CHECK(rep.res_hermitian < 1e-8);
    CHECK(rep.res_parallel < 1e-8);
    CHECK(rep.res_ricci_invariance < 1e-8);
    // Einstein relation S = (r/4) g
    const kst::Tensor4 diff = b.ricci() - 0.25 * b.scalar_r() * b.metric().g;
    CHECK(kst::max_abs(diff) < 1e-8);
    CHECK(b.scalar_r() == doctest::Approx(12.0).epsilon(1e-8));
  }
}

TEST_CASE("point-dependent rotation of the pairing is not parallel") {
  CatalogEntry e = kst::load_metric_file(std::string(KST_SOURCE_DIR) + "/metrics/rotating_f.json");
  REQUIRE(e.complex_structure.has_value());
  for (const auto& p : kst::sample_points(e.metric.domain, 5, 42)) {
    KahlerReport rep = kst::kahler_audit(e.metric, *e.complex_structure, p, 1e-8);
    CHECK(rep.res_almost_complex < 1e-13);
    CHECK(rep.res_hermitian < 1e-13);
    CHECK(rep.res_parallel > 0.1);
    CHECK_FALSE(rep.all_ok());
  }
}

TEST_CASE("a passing almost-complex structure is trace-free") {
  const double tol = 1e-8;
  for (const char* name : {"neutral_kahler_flat", "fubini_study"}) {
    CatalogEntry e = kst::builtin(name);
    for (const auto& p : kst::sample_points(e.metric.domain, 5, 42)) {
      KahlerReport rep = kst::kahler_audit(e.metric, *e.complex_structure, p, tol);
      REQUIRE(rep.res_almost_complex < tol);
      auto F = e.complex_structure->values(p);
      double trace = F[0][0] + F[1][1] + F[2][2] + F[3][3];
      CHECK(std::fabs(trace) <= 4.0 * tol);
    }
  }
}

TEST_CASE("parallel + hermitian imply an invariant Ricci tensor") {
  for (const char* name : {"neutral_kahler_flat", "fubini_study"}) {
    CatalogEntry e = kst::builtin(name);
    for (const auto& p : kst::sample_points(e.metric.domain, 5, 42)) {
      KahlerReport rep = kst::kahler_audit(e.metric, *e.complex_structure, p, 1e-8);
      if (rep.res_parallel < 1e-8 && rep.res_hermitian < 1e-8)
        CHECK(rep.res_ricci_invariance < 1e-6);
    }
  }
}

TEST_SUITE_END();
