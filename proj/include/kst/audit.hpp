#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kst/catalog.hpp"
#include "kst/conformal.hpp"
#include "kst/weak_symmetry.hpp"

namespace kst {

struct AuditOptions {
  int points = 5;
  std::uint64_t seed = 42;
  double tol = 1e-8;
};

/// Everything the pipeline computes at one sample point.
struct PointAudit {
  Point point;
  double scalar_r = 0.0;
  double max_abs_gamma = 0.0;
  double max_abs_riemann = 0.0;
  double max_abs_weyl = 0.0;
  double constant_curvature_res = 0.0;
  double ricci_proportional_res = 0.0;  // max|S - (r/4) g|

  std::optional<KahlerReport> kahler;
  std::optional<FluidReport> fluid;
  WeakSymmetrySolution weak_symmetry;
  WeakRicciSolution weak_ricci;
  double alpha_rho = 0.0;
  double wrs_sigma_min = 0.0;
  std::optional<RicciEigenResiduals> ricci_eigen;
  std::optional<SectionalCheck> sectional;
  std::optional<IsotropyFit> isotropy;
};

struct PropertyVerdict {
  std::string property;
  std::string expected;
  std::string computed;
  bool pass = false;
};

/// Deterministic audit result: fully determined by (entry, points, seed,
/// tol); repeated runs serialize to identical bytes.
struct AuditReport {
  std::string metric_name;
  std::string source;  // "builtin", "inline", or a file path
  AuditOptions options;
  std::vector<std::string> skipped;
  std::vector<PointAudit> points;
  std::vector<PropertyVerdict> verdicts;
  bool overall_pass = true;
};

AuditReport run_audit(const CatalogEntry& entry, const AuditOptions& options,
                      const std::string& source = "builtin");

/// Machine-readable report; byte-identical across reruns with equal inputs.
std::string report_json(const AuditReport& report);

/// Human-readable summary (one block per point, one line per verdict).
std::string report_text(const AuditReport& report);

}  // namespace kst
