#include "kst/audit.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace kst {

namespace {

using ordered_json = nlohmann::ordered_json;

// Classification thresholds for the expected-properties verdicts. Pinned
// here so reports are comparable across runs and machines.
constexpr double k_flat_threshold = 1e-10;
constexpr double k_r_tolerance = 1e-6;

double gamma_max_abs(const Gamma& g) {
  double m = 0.0;
  for (const auto& a : g)
    for (const auto& b : a)
      for (double c : b) m = std::max(m, std::fabs(c));
  return m;
}

std::string fmt_bool(bool b) { return b ? "true" : "false"; }

std::string fmt_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

AuditReport run_audit(const CatalogEntry& entry, const AuditOptions& options,
                      const std::string& source) {
  AuditReport rep;
  rep.metric_name = entry.metric.name;
  rep.source = source;
  rep.options = options;

  if (!entry.complex_structure)
    rep.skipped.push_back("kahler audit (no complex_structure block)");
  if (!entry.fluid) {
    rep.skipped.push_back("fluid audit (no fluid block)");
    rep.skipped.push_back("frame checks: ricci eigenvector, sectional, isotropy (no velocity field)");
  }

  const auto pts = sample_points(entry.metric.domain, options.points, options.seed);
  for (const Point& p : pts) {
    PointAudit pa;
    pa.point = p;

    CurvatureBundle b = CurvatureBundle::at(entry.metric, p);
    pa.scalar_r = b.scalar_r();
    pa.max_abs_gamma = gamma_max_abs(b.gamma());
    pa.max_abs_riemann = max_abs(b.riemann_0_4());
    pa.max_abs_weyl = max_abs(weyl_tensor(b));
    pa.constant_curvature_res = constant_curvature_residual(b);
    pa.ricci_proportional_res = max_abs(b.ricci() - 0.25 * b.scalar_r() * b.metric().g);

    if (entry.complex_structure)
      pa.kahler = kahler_audit(b, entry.metric, *entry.complex_structure, options.tol);
    if (entry.fluid) pa.fluid = fluid_audit(b, entry.metric, *entry.fluid);

    pa.weak_symmetry = solve_weak_symmetry(b);
    pa.weak_ricci = solve_weak_ricci(b);
    pa.alpha_rho = alpha_rho_relation(b, pa.weak_symmetry);
    pa.wrs_sigma_min = wrs_nonexistence_check(b.metric());

    if (entry.fluid) {
      const Vec4 rho = entry.fluid->rho_values(p);
      pa.ricci_eigen = ricci_eigen_residual(b, rho);
      pa.sectional = sectional_theorem_check(b, rho);
      pa.isotropy = isotropy_fit(b, rho);
    }

    rep.points.push_back(std::move(pa));
  }

  // expected-properties verdicts, aggregated over all sampled points
  const auto& ex = entry.expected;
  auto add_verdict = [&](const std::string& prop, const std::string& expected,
                         const std::string& computed, bool pass) {
    rep.verdicts.push_back({prop, expected, computed, pass});
    rep.overall_pass = rep.overall_pass && pass;
  };

  if (ex.flat) {
    bool computed = true;
    for (const auto& pa : rep.points)
      computed = computed && std::max(pa.max_abs_gamma, pa.max_abs_riemann) < k_flat_threshold;
    add_verdict("flat", fmt_bool(*ex.flat), fmt_bool(computed), computed == *ex.flat);
  }
  if (ex.einstein) {
    bool computed = true;
    for (const auto& pa : rep.points) {
      const double scale = std::max(1.0, std::fabs(pa.scalar_r));
      computed = computed && pa.ricci_proportional_res < options.tol * scale;
    }
    add_verdict("einstein", fmt_bool(*ex.einstein), fmt_bool(computed), computed == *ex.einstein);
  }
  if (ex.conformally_flat) {
    bool computed = true;
    for (const auto& pa : rep.points)
      computed = computed && pa.max_abs_weyl < options.tol * std::max(1.0, pa.max_abs_riemann);
    add_verdict("conformally_flat", fmt_bool(*ex.conformally_flat), fmt_bool(computed),
                computed == *ex.conformally_flat);
  }
  if (ex.kahler) {
    if (entry.complex_structure) {
      bool computed = true;
      for (const auto& pa : rep.points) computed = computed && pa.kahler && pa.kahler->all_ok();
      add_verdict("kahler", fmt_bool(*ex.kahler), fmt_bool(computed), computed == *ex.kahler);
    } else {
      add_verdict("kahler", fmt_bool(*ex.kahler), "not applicable", false);
    }
  }
  if (ex.r) {
    bool computed = true;
    double worst = 0.0;
    for (const auto& pa : rep.points) {
      worst = std::max(worst, std::fabs(pa.scalar_r - *ex.r));
      computed = computed && std::fabs(pa.scalar_r - *ex.r) <=
                                 k_r_tolerance * std::max(1.0, std::fabs(*ex.r));
    }
    add_verdict("r", fmt_sci(*ex.r), "max deviation " + fmt_sci(worst), computed);
  }
  if (ex.lambda) {
    if (entry.fluid) {
      const bool match = entry.fluid->lambda == *ex.lambda;
      add_verdict("lambda", fmt_sci(*ex.lambda), fmt_sci(entry.fluid->lambda), match);
    } else {
      add_verdict("lambda", fmt_sci(*ex.lambda), "not applicable", false);
    }
  }

  return rep;
}

namespace {

ordered_json point_json(const PointAudit& pa) {
  ordered_json j;
  j["point"] = pa.point.coords;
  ordered_json curv;
  curv["scalar_r"] = pa.scalar_r;
  curv["max_abs_gamma"] = pa.max_abs_gamma;
  curv["max_abs_riemann"] = pa.max_abs_riemann;
  curv["max_abs_weyl"] = pa.max_abs_weyl;
  curv["constant_curvature_res"] = pa.constant_curvature_res;
  curv["ricci_proportional_res"] = pa.ricci_proportional_res;
  j["curvature"] = std::move(curv);

  if (pa.kahler) {
    ordered_json k;
    k["res_almost_complex"] = pa.kahler->res_almost_complex;
    k["res_hermitian"] = pa.kahler->res_hermitian;
    k["res_parallel"] = pa.kahler->res_parallel;
    k["res_ricci_invariance"] = pa.kahler->res_ricci_invariance;
    k["pass"] = pa.kahler->all_ok();
    j["kahler"] = std::move(k);
  } else {
    j["kahler"] = nullptr;
  }

  if (pa.fluid) {
    ordered_json f;
    f["res_einstein"] = pa.fluid->res_einstein;
    f["res_inflation"] = pa.fluid->res_inflation;
    f["res_pressure_relation"] = pa.fluid->res_pressure_relation;
    f["res_einstein_manifold"] = pa.fluid->res_einstein_manifold;
    f["res_energy_eq"] = pa.fluid->res_energy_eq;
    f["expansion"] = pa.fluid->expansion;
    f["acceleration_norm"] = pa.fluid->acceleration_norm;
    f["res_T"] = pa.fluid->res_T;
    j["fluid"] = std::move(f);
  } else {
    j["fluid"] = nullptr;
  }

  ordered_json ws;
  ws["A"] = pa.weak_symmetry.A;
  ws["omega"] = pa.weak_symmetry.omega;
  ws["residual"] = pa.weak_symmetry.residual;
  ws["system_rank"] = pa.weak_symmetry.system_rank;
  j["weak_symmetry"] = std::move(ws);

  ordered_json wr;
  wr["A"] = pa.weak_ricci.A;
  wr["omega"] = pa.weak_ricci.omega;
  wr["residual"] = pa.weak_ricci.residual;
  wr["system_rank"] = pa.weak_ricci.system_rank;
  wr["sigma_min"] = pa.weak_ricci.sigma_min;
  j["weak_ricci"] = std::move(wr);

  j["alpha_rho"] = pa.alpha_rho;
  j["wrs_sigma_min"] = pa.wrs_sigma_min;

  if (pa.ricci_eigen) {
    ordered_json re;
    re["res_half_r"] = pa.ricci_eigen->res_half_r;
    re["res_quarter_r"] = pa.ricci_eigen->res_quarter_r;
    j["ricci_eigen"] = std::move(re);
  } else {
    j["ricci_eigen"] = nullptr;
  }

  if (pa.sectional) {
    ordered_json sc;
    sc["k_spatial"] = pa.sectional->k_spatial;
    sc["k_timelike"] = pa.sectional->k_timelike;
    sc["target_r_over_12"] = pa.sectional->target;
    j["sectional"] = std::move(sc);
  } else {
    j["sectional"] = nullptr;
  }

  if (pa.isotropy) {
    ordered_json iso;
    iso["a"] = pa.isotropy->a;
    iso["b"] = pa.isotropy->b;
    iso["res_a"] = pa.isotropy->res_a;
    iso["res_b"] = pa.isotropy->res_b;
    j["isotropy"] = std::move(iso);
  } else {
    j["isotropy"] = nullptr;
  }
  return j;
}

}  // namespace

std::string report_json(const AuditReport& report) {
  ordered_json j;
  j["metric"] = report.metric_name;
  j["source"] = report.source;
  j["points"] = report.options.points;
  j["seed"] = report.options.seed;
  j["tolerance"] = report.options.tol;
  j["skipped"] = report.skipped;
  ordered_json pts = ordered_json::array();
  for (const auto& pa : report.points) pts.push_back(point_json(pa));
  j["point_reports"] = std::move(pts);
  ordered_json verdicts = ordered_json::array();
  for (const auto& v : report.verdicts) {
    ordered_json vj;
    vj["property"] = v.property;
    vj["expected"] = v.expected;
    vj["computed"] = v.computed;
    vj["pass"] = v.pass;
    verdicts.push_back(std::move(vj));
  }
  j["verdicts"] = std::move(verdicts);
  j["overall_pass"] = report.overall_pass;
  return j.dump(2) + "\n";
}

std::string report_text(const AuditReport& report) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof(line), "audit: %s (%s)  points=%d seed=%llu tol=%g\n",
                report.metric_name.c_str(), report.source.c_str(), report.options.points,
                static_cast<unsigned long long>(report.options.seed), report.options.tol);
  os << line;
  for (const auto& note : report.skipped) os << "  skipped: " << note << "\n";

  for (std::size_t n = 0; n < report.points.size(); ++n) {
    const PointAudit& pa = report.points[n];
    std::snprintf(line, sizeof(line), "point %zu: (%.6g, %.6g, %.6g, %.6g)\n", n,
                  pa.point[0], pa.point[1], pa.point[2], pa.point[3]);
    os << line;
    std::snprintf(line, sizeof(line),
                  "  r=%.6g  max|R|=%.3e  max|C|=%.3e  const-curv res=%.3e  |S-(r/4)g|=%.3e\n",
                  pa.scalar_r, pa.max_abs_riemann, pa.max_abs_weyl,
                  pa.constant_curvature_res, pa.ricci_proportional_res);
    os << line;
    if (pa.kahler) {
      std::snprintf(line, sizeof(line),
                    "  kahler: F^2+I=%.3e  hermitian=%.3e  parallel=%.3e  ricci-inv=%.3e  %s\n",
                    pa.kahler->res_almost_complex, pa.kahler->res_hermitian,
                    pa.kahler->res_parallel, pa.kahler->res_ricci_invariance,
                    pa.kahler->all_ok() ? "PASS" : "FAIL");
      os << line;
    }
    if (pa.fluid) {
      std::snprintf(line, sizeof(line),
                    "  fluid: einstein=%.3e  inflation=%.3e  pressure-rel=%.3e  "
                    "einstein-manifold=%.3e\n",
                    pa.fluid->res_einstein, pa.fluid->res_inflation,
                    pa.fluid->res_pressure_relation, pa.fluid->res_einstein_manifold);
      os << line;
      std::snprintf(line, sizeof(line),
                    "         energy-eq=%.3e  expansion=%.6g  acceleration=%.6g  |T|=%.3e\n",
                    pa.fluid->res_energy_eq, pa.fluid->expansion,
                    pa.fluid->acceleration_norm, pa.fluid->res_T);
      os << line;
    }
    std::snprintf(line, sizeof(line),
                  "  weak symmetry: |A|=%.3e |omega|=%.3e residual=%.3e rank=%d\n",
                  std::max({std::fabs(pa.weak_symmetry.A[0]), std::fabs(pa.weak_symmetry.A[1]),
                            std::fabs(pa.weak_symmetry.A[2]), std::fabs(pa.weak_symmetry.A[3])}),
                  std::max({std::fabs(pa.weak_symmetry.omega[0]),
                            std::fabs(pa.weak_symmetry.omega[1]),
                            std::fabs(pa.weak_symmetry.omega[2]),
                            std::fabs(pa.weak_symmetry.omega[3])}),
                  pa.weak_symmetry.residual, pa.weak_symmetry.system_rank);
    os << line;
    std::snprintf(line, sizeof(line),
                  "  weak ricci: residual=%.3e rank=%d   alpha-rho=%.6g   sigma_min=%.6g\n",
                  pa.weak_ricci.residual, pa.weak_ricci.system_rank, pa.alpha_rho,
                  pa.wrs_sigma_min);
    os << line;
    if (pa.ricci_eigen) {
      std::snprintf(line, sizeof(line), "  ricci eigen: |S-(r/2)g|rho=%.3e  |S-(r/4)g|rho=%.3e\n",
                    pa.ricci_eigen->res_half_r, pa.ricci_eigen->res_quarter_r);
      os << line;
    }
    if (pa.sectional) {
      std::snprintf(line, sizeof(line),
                    "  sectional: spatial=(%.6g, %.6g, %.6g) timelike=(%.6g, %.6g, %.6g) "
                    "target=%.6g\n",
                    pa.sectional->k_spatial[0], pa.sectional->k_spatial[1],
                    pa.sectional->k_spatial[2], pa.sectional->k_timelike[0],
                    pa.sectional->k_timelike[1], pa.sectional->k_timelike[2],
                    pa.sectional->target);
      os << line;
    }
    if (pa.isotropy) {
      std::snprintf(line, sizeof(line), "  isotropy: a=%.6g (res %.3e)  b=%.6g (res %.3e)\n",
                    pa.isotropy->a, pa.isotropy->res_a, pa.isotropy->b, pa.isotropy->res_b);
      os << line;
    }
  }

  for (const auto& v : report.verdicts) {
    std::snprintf(line, sizeof(line), "verdict %-18s expected %-8s computed %-22s %s\n",
                  v.property.c_str(), v.expected.c_str(), v.computed.c_str(),
                  v.pass ? "PASS" : "FAIL");
    os << line;
  }
  os << "overall: " << (report.overall_pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace kst
