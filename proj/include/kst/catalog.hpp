#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kst/geometry.hpp"
#include "kst/kahler.hpp"
#include "kst/relativity.hpp"

namespace kst {

/// Facts the audit pipeline is expected to confirm for a metric. Absent
/// fields are not checked.
struct ExpectedProperties {
  std::optional<bool> flat;
  std::optional<bool> einstein;           // S = (r/4) g
  std::optional<bool> conformally_flat;   // Weyl = 0
  std::optional<bool> kahler;             // all four structure residuals pass
  std::optional<double> r;                // scalar curvature
  std::optional<double> lambda;           // cosmological constant in the fluid block
};

struct CatalogEntry {
  MetricStructure metric;
  std::array<std::string, 4> coordinates{"x0", "x1", "x2", "x3"};
  std::optional<ComplexStructure> complex_structure;
  std::optional<FluidState> fluid;
  ExpectedProperties expected;
};

/// Parse and validate a metric-definition JSON document (see
/// docs/metric_format.md). Throws ParseError (JSON or expression syntax,
/// with offsets), SchemaError (structural problems), or
/// SignatureMismatchError / DegenerateMetricError (metric checked at the
/// domain center).
CatalogEntry parse_metric_json(const std::string& text);

/// parse_metric_json over a file. Throws IoError when unreadable.
CatalogEntry load_metric_file(const std::string& path);

/// Canonical JSON for an entry. serialize(load(f)) reparses to an entry
/// whose audits are bit-identical under the same seed.
std::string serialize(const CatalogEntry& entry);

/// Built-in metrics: minkowski, euclidean, neutral_kahler_flat, sphere4(a),
/// de_sitter, flrw(q), schwarzschild(m), fubini_study. Parameterized
/// entries accept "name(value)"; plain names use the defaults a=1, q=2/3,
/// m=1. Throws UnknownMetricError for anything else.
CatalogEntry builtin(const std::string& name);

struct BuiltinInfo {
  std::string name;
  std::string summary;
};

/// The eight canonical builtin names with one-line descriptions, in a
/// fixed order.
const std::vector<BuiltinInfo>& builtin_catalog();

}  // namespace kst
