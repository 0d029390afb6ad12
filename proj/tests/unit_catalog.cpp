#include <cmath>

#include <doctest.h>

#include "kst/catalog.hpp"

using kst::CatalogEntry;

namespace {

const char* k_minimal = R"json({
  "name": "demo",
  "signature": [-1, 1, 1, 1],
  "metric": {"0,0": "-1", "1,1": "1", "2,2": "1", "3,3": "1"},
  "domain": [[-1, 1], [-1, 1], [-1, 1], [-1, 1]]
})json";

std::string with(const std::string& needle, const std::string& replacement) {
  std::string s = k_minimal;
  auto pos = s.find(needle);
  REQUIRE(pos != std::string::npos);
  s.replace(pos, needle.size(), replacement);
  return s;
}

}  // namespace

TEST_SUITE_BEGIN("catalog");

TEST_CASE("minimal document loads") {
  CatalogEntry e = kst::parse_metric_json(k_minimal);
  CHECK(e.metric.name == "demo");
  CHECK(e.metric.signature[0] == -1);
  CHECK(kst::eval_value(e.metric.component(0, 0), kst::Point{}) == -1.0);
  CHECK(kst::eval_value(e.metric.component(0, 1), kst::Point{}) == 0.0);  // omitted -> 0
  CHECK_FALSE(e.fluid.has_value());
  CHECK_FALSE(e.complex_structure.has_value());
}

TEST_CASE("declared signature must match the metric at the domain center") {
  CHECK_THROWS_AS(kst::parse_metric_json(with("\"0,0\": \"-1\"", "\"0,0\": \"+1\"")),
                  kst::SignatureMismatchError);
}

TEST_CASE("schema errors") {
  CHECK_THROWS_AS(kst::parse_metric_json("[1,2,3]"), kst::SchemaError);
  CHECK_THROWS_AS(kst::parse_metric_json(with("\"name\": \"demo\",", "")), kst::SchemaError);
  CHECK_THROWS_AS(kst::parse_metric_json(with("[-1, 1, 1, 1]", "[-1, 1, 1]")), kst::SchemaError);
  CHECK_THROWS_AS(kst::parse_metric_json(with("[-1, 1, 1, 1]", "[-2, 1, 1, 1]")),
                  kst::SchemaError);
  CHECK_THROWS_AS(kst::parse_metric_json(with("\"0,0\"", "\"4,0\"")), kst::SchemaError);
  CHECK_THROWS_AS(kst::parse_metric_json(with("\"1,1\"", "\"1,0\"")), kst::SchemaError);
  CHECK_THROWS_AS(kst::parse_metric_json(with("[[-1, 1], [-1, 1], [-1, 1], [-1, 1]]",
                                              "[[-1, 1], [-1, 1], [-1, 1], [1, -1]]")),
                  kst::SchemaError);
  // degenerate metric at the center
  CHECK_THROWS_AS(kst::parse_metric_json(with("\"1,1\": \"1\"", "\"1,1\": \"x1\"")),
                  kst::DegenerateMetricError);
}

TEST_CASE("JSON and expression syntax errors carry positions") {
  try {
    kst::parse_metric_json("{\"name\": }");
    FAIL("expected ParseError");
  } catch (const kst::ParseError& pe) {
    CHECK(pe.position > 0);
  }
  try {
    kst::parse_metric_json(with("\"2,2\": \"1\"", "\"2,2\": \"1+\""));
    FAIL("expected ParseError");
  } catch (const kst::ParseError& pe) {
    CHECK(pe.position == 2);
    CHECK(std::string(pe.what()).find("2,2") != std::string::npos);
  }
}

TEST_CASE("file loading") {
  CatalogEntry e =
      kst::load_metric_file(std::string(KST_SOURCE_DIR) + "/metrics/flrw_dust.json");
  CHECK(e.metric.name == "flrw_dust");
  REQUIRE(e.fluid.has_value());
  // fluid normalization at the domain center: g(rho,rho) = -1 for g_00 = -1
  kst::Point c = e.metric.domain_center();
  kst::MetricJets mj = kst::metric_jets(e.metric, c);
  auto m = kst::MetricAtPoint::from_components(mj.g, e.metric.signature);
  CHECK(m.inner(e.fluid->rho_values(c), e.fluid->rho_values(c)) ==
        doctest::Approx(-1.0).epsilon(1e-12));

  CHECK_THROWS_AS(kst::load_metric_file("/nonexistent/metric.json"), kst::IoError);
}

TEST_CASE("builtin names and parameters") {
  CHECK(kst::builtin_catalog().size() == 8);
  for (const auto& info : kst::builtin_catalog()) CHECK_NOTHROW(kst::builtin(info.name));
  CHECK_THROWS_AS(kst::builtin("nosuch"), kst::UnknownMetricError);
  CHECK_THROWS_AS(kst::builtin("sphere4(0)"), kst::UnknownMetricError);
  CHECK_THROWS_AS(kst::builtin("sphere4(abc)"), kst::UnknownMetricError);
  CHECK_THROWS_AS(kst::builtin("de_sitter(2)"), kst::UnknownMetricError);
  CHECK_THROWS_AS(kst::builtin("flrw(0)"), kst::UnknownMetricError);
  CHECK(kst::builtin("sphere4(2)").metric.name == "sphere4(2)");
  CHECK(kst::builtin("schwarzschild(2)").expected.einstein.value());
}

TEST_CASE("serialize/reparse is a fixed point with identical evaluation") {
  for (const auto& info : kst::builtin_catalog()) {
    CatalogEntry e = kst::builtin(info.name);
    std::string s1 = kst::serialize(e);
    CatalogEntry e2 = kst::parse_metric_json(s1);
    std::string s2 = kst::serialize(e2);
    CHECK(s1 == s2);

    // identical curvature bits at seeded points
    for (const auto& p : kst::sample_points(e.metric.domain, 3, 42)) {
      auto b1 = kst::CurvatureBundle::at(e.metric, p);
      auto b2 = kst::CurvatureBundle::at(e2.metric, p);
      CHECK(b1.scalar_r() == b2.scalar_r());
      for (std::size_t i = 0; i < b1.riemann_0_4().size(); ++i)
        CHECK(b1.riemann_0_4().data()[i] == b2.riemann_0_4().data()[i]);
    }
  }
}

TEST_SUITE_END();
