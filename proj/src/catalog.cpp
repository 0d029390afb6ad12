#include "kst/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kst/linalg.hpp"

namespace kst {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

[[noreturn]] void schema_fail(const std::string& msg) { throw SchemaError(msg); }

std::pair<int, int> parse_index_key(const std::string& key) {
  if (key.size() != 3 || key[1] != ',' || key[0] < '0' || key[0] > '3' || key[2] < '0' ||
      key[2] > '3')
    schema_fail("component key '" + key + "' is not of the form \"i,j\" with i,j in 0..3");
  return {key[0] - '0', key[2] - '0'};
}

ScalarExpr parse_component(const std::string& key, const ordered_json& v) {
  if (!v.is_string()) schema_fail("component '" + key + "' must be an expression string");
  try {
    return parse_expr(v.get<std::string>());
  } catch (const ParseError& pe) {
    throw ParseError(pe.position, "in component '" + key + "': " + pe.what());
  }
}

void check_signature_at_center(const MetricStructure& m) {
  const Point c = m.domain_center();
  const MetricJets mj = metric_jets(m, c);  // throws DegenerateMetricError

  std::vector<double> a(16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a[static_cast<std::size_t>(i * 4 + j)] = mj.g[i][j];
  std::vector<double> eig;
  linalg::sym_eigenvalues(4, a, eig);

  int neg_declared = 0, neg_actual = 0;
  for (int s : m.signature) neg_declared += s < 0 ? 1 : 0;
  for (double e : eig) {
    if (std::fabs(e) <= 1e-12)
      throw DegenerateMetricError("metric eigenvalue vanishes at domain center");
    neg_actual += e < 0.0 ? 1 : 0;
  }
  if (neg_declared != neg_actual)
    throw SignatureMismatchError(
        "metric at domain center has " + std::to_string(neg_actual) +
        " negative eigenvalue(s) but the declared signature has " +
        std::to_string(neg_declared));
}

CatalogEntry entry_from_json(const ordered_json& doc) {
  if (!doc.is_object()) schema_fail("top-level JSON value must be an object");

  CatalogEntry e;

  if (!doc.contains("name") || !doc["name"].is_string())
    schema_fail("missing required string field 'name'");
  e.metric.name = doc["name"].get<std::string>();

  if (!doc.contains("signature") || !doc["signature"].is_array() ||
      doc["signature"].size() != 4)
    schema_fail("'signature' must be an array of 4 entries, each +1 or -1");
  for (int i = 0; i < 4; ++i) {
    const auto& s = doc["signature"][static_cast<std::size_t>(i)];
    if (!s.is_number_integer() || (s.get<int>() != 1 && s.get<int>() != -1))
      schema_fail("'signature' entries must be +1 or -1");
    e.metric.signature[static_cast<std::size_t>(i)] = s.get<int>();
  }

  if (doc.contains("coordinates")) {
    const auto& c = doc["coordinates"];
    if (!c.is_array() || c.size() != 4) schema_fail("'coordinates' must be an array of 4 names");
    for (int i = 0; i < 4; ++i) {
      if (!c[static_cast<std::size_t>(i)].is_string()) schema_fail("'coordinates' entries must be strings");
      e.coordinates[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)].get<std::string>();
    }
  }

  if (!doc.contains("metric") || !doc["metric"].is_object() || doc["metric"].empty())
    schema_fail("'metric' must be a non-empty object of \"i,j\" -> expression");
  for (const auto& [key, value] : doc["metric"].items()) {
    auto [i, j] = parse_index_key(key);
    if (i > j) schema_fail("metric key '" + key + "' must have i <= j (symmetric storage)");
    e.metric.set_component(i, j, parse_component(key, value));
  }

  if (!doc.contains("domain") || !doc["domain"].is_array() || doc["domain"].size() != 4)
    schema_fail("'domain' must be an array of 4 [lo,hi] pairs");
  for (int i = 0; i < 4; ++i) {
    const auto& iv = doc["domain"][static_cast<std::size_t>(i)];
    if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number())
      schema_fail("'domain' entries must be [lo,hi] number pairs");
    double lo = iv[0].get<double>(), hi = iv[1].get<double>();
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
      schema_fail("'domain' intervals must be finite with lo < hi");
    e.metric.domain[static_cast<std::size_t>(i)] = {lo, hi};
  }

  if (doc.contains("complex_structure")) {
    const auto& cs = doc["complex_structure"];
    if (!cs.is_object()) schema_fail("'complex_structure' must be an object of \"i,j\" -> expression");
    ComplexStructure F;
    for (const auto& [key, value] : cs.items()) {
      auto [i, j] = parse_index_key(key);
      F.set_component(i, j, parse_component(key, value));
    }
    e.complex_structure = std::move(F);
  }

  if (doc.contains("fluid")) {
    const auto& fl = doc["fluid"];
    if (!fl.is_object()) schema_fail("'fluid' must be an object");
    FluidState f;
    if (!fl.contains("sigma") || !fl["sigma"].is_string()) schema_fail("'fluid.sigma' must be an expression string");
    if (!fl.contains("p") || !fl["p"].is_string()) schema_fail("'fluid.p' must be an expression string");
    f.sigma = parse_component("sigma", fl["sigma"]);
    f.pressure = parse_component("p", fl["p"]);
    if (!fl.contains("rho") || !fl["rho"].is_array() || fl["rho"].size() != 4)
      schema_fail("'fluid.rho' must be an array of 4 expression strings");
    for (int i = 0; i < 4; ++i)
      f.rho[static_cast<std::size_t>(i)] = parse_component("rho", fl["rho"][static_cast<std::size_t>(i)]);
    if (!fl.contains("lambda") || !fl["lambda"].is_number()) schema_fail("'fluid.lambda' must be a number");
    f.lambda = fl["lambda"].get<double>();
    f.k = 1.0;
    if (fl.contains("k")) {
      if (!fl["k"].is_number()) schema_fail("'fluid.k' must be a number");
      f.k = fl["k"].get<double>();
    }
    if (f.k == 0.0) schema_fail("'fluid.k' must be nonzero");
    e.fluid = std::move(f);
  }

  if (doc.contains("expected")) {
    const auto& ex = doc["expected"];
    if (!ex.is_object()) schema_fail("'expected' must be an object");
    auto get_bool = [&](const char* key) -> std::optional<bool> {
      if (!ex.contains(key)) return std::nullopt;
      if (!ex[key].is_boolean()) schema_fail(std::string("'expected.") + key + "' must be a boolean");
      return ex[key].get<bool>();
    };
    auto get_num = [&](const char* key) -> std::optional<double> {
      if (!ex.contains(key)) return std::nullopt;
      if (!ex[key].is_number()) schema_fail(std::string("'expected.") + key + "' must be a number");
      return ex[key].get<double>();
    };
    e.expected.flat = get_bool("flat");
    e.expected.einstein = get_bool("einstein");
    e.expected.conformally_flat = get_bool("conformally_flat");
    e.expected.kahler = get_bool("kahler");
    e.expected.r = get_num("r");
    e.expected.lambda = get_num("lambda");
  }

  check_signature_at_center(e.metric);
  return e;
}

}  // namespace

CatalogEntry parse_metric_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& pe) {
    throw ParseError(pe.byte, std::string("JSON syntax error: ") + pe.what());
  }
  return entry_from_json(doc);
}

CatalogEntry load_metric_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open metric file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading metric file '" + path + "'");
  return parse_metric_json(buf.str());
}

std::string serialize(const CatalogEntry& entry) {
  ordered_json doc;
  doc["name"] = entry.metric.name;
  doc["signature"] = entry.metric.signature;
  doc["coordinates"] = entry.coordinates;

  ordered_json metric = ordered_json::object();
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      const ScalarExpr& c = entry.metric.component(i, j);
      if (c.is_constant_zero()) continue;
      metric[std::to_string(i) + "," + std::to_string(j)] = c.to_string();
    }
  doc["metric"] = std::move(metric);

  if (entry.complex_structure) {
    ordered_json cs = ordered_json::object();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const ScalarExpr& c = entry.complex_structure->component(i, j);
        if (c.is_constant_zero()) continue;
        cs[std::to_string(i) + "," + std::to_string(j)] = c.to_string();
      }
    doc["complex_structure"] = std::move(cs);
  }

  if (entry.fluid) {
    ordered_json fl = ordered_json::object();
    fl["sigma"] = entry.fluid->sigma.to_string();
    fl["p"] = entry.fluid->pressure.to_string();
    ordered_json rho = ordered_json::array();
    for (const auto& c : entry.fluid->rho) rho.push_back(c.to_string());
    fl["rho"] = std::move(rho);
    fl["lambda"] = entry.fluid->lambda;
    fl["k"] = entry.fluid->k;
    doc["fluid"] = std::move(fl);
  }

  doc["domain"] = entry.metric.domain;

  ordered_json ex = ordered_json::object();
  if (entry.expected.flat) ex["flat"] = *entry.expected.flat;
  if (entry.expected.einstein) ex["einstein"] = *entry.expected.einstein;
  if (entry.expected.conformally_flat) ex["conformally_flat"] = *entry.expected.conformally_flat;
  if (entry.expected.kahler) ex["kahler"] = *entry.expected.kahler;
  if (entry.expected.r) ex["r"] = *entry.expected.r;
  if (entry.expected.lambda) ex["lambda"] = *entry.expected.lambda;
  if (!ex.empty()) doc["expected"] = std::move(ex);

  return doc.dump(2) + "\n";
}

namespace {

std::string minkowski_json() {
  return R"json({
    "name": "minkowski",
    "signature": [-1, 1, 1, 1],
    "coordinates": ["t", "x", "y", "z"],
    "metric": {"0,0": "-1", "1,1": "1", "2,2": "1", "3,3": "1"},
    "fluid": {"sigma": "0", "p": "0", "rho": ["1", "0", "0", "0"], "lambda": 0.0, "k": 1.0},
    "domain": [[-2, 2], [-2, 2], [-2, 2], [-2, 2]],
    "expected": {"flat": true, "einstein": true, "conformally_flat": true, "r": 0.0, "lambda": 0.0}
  })json";
}

std::string euclidean_json() {
  return R"json({
    "name": "euclidean",
    "signature": [1, 1, 1, 1],
    "metric": {"0,0": "1", "1,1": "1", "2,2": "1", "3,3": "1"},
    "domain": [[-2, 2], [-2, 2], [-2, 2], [-2, 2]],
    "expected": {"flat": true, "einstein": true, "conformally_flat": true, "r": 0.0}
  })json";
}

std::string neutral_kahler_flat_json() {
  return R"json({
    "name": "neutral_kahler_flat",
    "signature": [-1, -1, 1, 1],
    "metric": {"0,0": "-1", "1,1": "-1", "2,2": "1", "3,3": "1"},
    "complex_structure": {"1,0": "1", "0,1": "-1", "3,2": "1", "2,3": "-1"},
    "fluid": {"sigma": "0", "p": "0", "rho": ["1", "0", "0", "0"], "lambda": 0.0, "k": 1.0},
    "domain": [[-2, 2], [-2, 2], [-2, 2], [-2, 2]],
    "expected": {"flat": true, "einstein": true, "conformally_flat": true, "kahler": true, "r": 0.0, "lambda": 0.0}
  })json";
}

std::string sphere4_json(double a, const std::string& display_name) {
  const std::string a2 = fmt(a * a);
  std::ostringstream os;
  os << "{\n"
     << "  \"name\": \"" << display_name << "\",\n"
     << "  \"signature\": [1, 1, 1, 1],\n"
     << "  \"coordinates\": [\"chi\", \"theta\", \"phi\", \"psi\"],\n"
     << "  \"metric\": {\n"
     << "    \"0,0\": \"" << a2 << "\",\n"
     << "    \"1,1\": \"" << a2 << "*sin(x0)^2\",\n"
     << "    \"2,2\": \"" << a2 << "*sin(x0)^2*sin(x1)^2\",\n"
     << "    \"3,3\": \"" << a2 << "*sin(x0)^2*sin(x1)^2*sin(x2)^2\"\n"
     << "  },\n"
     << "  \"domain\": [[0.9, 2.2], [0.9, 2.2], [0.9, 2.2], [0, 3]],\n"
     << "  \"expected\": {\"flat\": false, \"einstein\": true, \"conformally_flat\": true, \"r\": "
     << fmt(12.0 / (a * a)) << "}\n"
     << "}";
  return os.str();
}

std::string de_sitter_json() {
  return R"json({
    "name": "de_sitter",
    "signature": [-1, 1, 1, 1],
    "coordinates": ["t", "r", "theta", "phi"],
    "metric": {
      "0,0": "-(1-x1^2)",
      "1,1": "1/(1-x1^2)",
      "2,2": "x1^2",
      "3,3": "x1^2*sin(x2)^2"
    },
    "fluid": {"sigma": "0", "p": "0", "rho": ["1/sqrt(1-x1^2)", "0", "0", "0"], "lambda": 3.0, "k": 1.0},
    "domain": [[0, 1], [0.55, 0.8], [1.1, 2.0], [0, 3]],
    "expected": {"flat": false, "einstein": true, "conformally_flat": true, "r": 12.0, "lambda": 3.0}
  })json";
}

std::string flrw_json(double q, const std::string& display_name) {
  const double exp2q = 2.0 * q;
  const double sigma0 = 3.0 * q * q;
  double p0 = 2.0 * q - 3.0 * q * q;
  if (std::fabs(p0) < 1e-15) p0 = 0.0;  // dust case, exactly
  std::ostringstream os;
  os << "{\n"
     << "  \"name\": \"" << display_name << "\",\n"
     << "  \"signature\": [-1, 1, 1, 1],\n"
     << "  \"coordinates\": [\"t\", \"x\", \"y\", \"z\"],\n"
     << "  \"metric\": {\n"
     << "    \"0,0\": \"-1\",\n"
     << "    \"1,1\": \"x0^" << fmt(exp2q) << "\",\n"
     << "    \"2,2\": \"x0^" << fmt(exp2q) << "\",\n"
     << "    \"3,3\": \"x0^" << fmt(exp2q) << "\"\n"
     << "  },\n"
     << "  \"fluid\": {\"sigma\": \"" << fmt(sigma0) << "/(x0*x0)\", \"p\": \""
     << (p0 == 0.0 ? std::string("0") : fmt(p0) + "/(x0*x0)")
     << "\", \"rho\": [\"1\", \"0\", \"0\", \"0\"], \"lambda\": 0.0, \"k\": 1.0},\n"
     << "  \"domain\": [[1, 3], [-1, 1], [-1, 1], [-1, 1]],\n"
     << "  \"expected\": {\"flat\": false, \"einstein\": false, \"conformally_flat\": true}\n"
     << "}";
  return os.str();
}

std::string schwarzschild_json(double m, const std::string& display_name) {
  const std::string f = "1-" + fmt(2.0 * m) + "/x1";
  std::ostringstream os;
  os << "{\n"
     << "  \"name\": \"" << display_name << "\",\n"
     << "  \"signature\": [-1, 1, 1, 1],\n"
     << "  \"coordinates\": [\"t\", \"r\", \"theta\", \"phi\"],\n"
     << "  \"metric\": {\n"
     << "    \"0,0\": \"-(" << f << ")\",\n"
     << "    \"1,1\": \"1/(" << f << ")\",\n"
     << "    \"2,2\": \"x1^2\",\n"
     << "    \"3,3\": \"x1^2*sin(x2)^2\"\n"
     << "  },\n"
     << "  \"fluid\": {\"sigma\": \"0\", \"p\": \"0\", \"rho\": [\"1/sqrt(" << f
     << ")\", \"0\", \"0\", \"0\"], \"lambda\": 0.0, \"k\": 1.0},\n"
     << "  \"domain\": [[0, 1], [" << fmt(3.0 * m) << ", " << fmt(5.0 * m)
     << "], [0.9, 2.2], [0, 3]],\n"
     << "  \"expected\": {\"flat\": false, \"einstein\": true, \"conformally_flat\": false, \"r\": 0.0, \"lambda\": 0.0}\n"
     << "}";
  return os.str();
}

std::string fubini_study_json() {
  // Affine-chart Fubini-Study metric on CP^2 with z1 = x0 + i x1,
  // z2 = x2 + i x3 and Kahler potential log(1 + |z|^2); realified with
  // ds^2 = 2 h_{ij̄} dz^i dz̄^j symmetrized. Einstein with S = 3g, r = 12.
  return R"json({
    "name": "fubini_study",
    "signature": [1, 1, 1, 1],
    "metric": {
      "0,0": "2*(1+x2^2+x3^2)/(1+x0^2+x1^2+x2^2+x3^2)^2",
      "1,1": "2*(1+x2^2+x3^2)/(1+x0^2+x1^2+x2^2+x3^2)^2",
      "2,2": "2*(1+x0^2+x1^2)/(1+x0^2+x1^2+x2^2+x3^2)^2",
      "3,3": "2*(1+x0^2+x1^2)/(1+x0^2+x1^2+x2^2+x3^2)^2",
      "0,2": "-2*(x0*x2+x1*x3)/(1+x0^2+x1^2+x2^2+x3^2)^2",
      "1,3": "-2*(x0*x2+x1*x3)/(1+x0^2+x1^2+x2^2+x3^2)^2",
      "0,3": "-2*(x0*x3-x1*x2)/(1+x0^2+x1^2+x2^2+x3^2)^2",
      "1,2": "2*(x0*x3-x1*x2)/(1+x0^2+x1^2+x2^2+x3^2)^2"
    },
    "complex_structure": {"1,0": "1", "0,1": "-1", "3,2": "1", "2,3": "-1"},
    "domain": [[-0.4, 0.4], [-0.4, 0.4], [-0.4, 0.4], [-0.4, 0.4]],
    "expected": {"flat": false, "einstein": true, "conformally_flat": false, "kahler": true, "r": 12.0}
  })json";
}

struct BuiltinSpec {
  const char* name;
  const char* summary;
  bool parameterized;
};

const BuiltinSpec k_builtins[] = {
    {"minkowski", "flat Lorentz metric diag(-1,1,1,1) with a vacuum fluid", false},
    {"euclidean", "flat Riemannian metric diag(1,1,1,1)", false},
    {"neutral_kahler_flat",
     "flat neutral metric diag(-1,-1,1,1) with a constant compatible complex structure",
     false},
    {"sphere4", "round 4-sphere of radius a in hyperspherical angles (default a=1, r=12/a^2)",
     true},
    {"de_sitter", "de Sitter static patch with unit Hubble scale (lambda=3, r=12)", false},
    {"flrw", "spatially flat FLRW with a(t)=t^q and the matching perfect fluid (default q=2/3, dust)",
     true},
    {"schwarzschild", "Schwarzschild exterior in the r>3m region (default m=1; Ricci-flat, Weyl nonzero)",
     true},
    {"fubini_study", "Fubini-Study metric on an affine chart of CP^2 (Kahler-Einstein, r=12)",
     false},
};

}  // namespace

const std::vector<BuiltinInfo>& builtin_catalog() {
  static const std::vector<BuiltinInfo> infos = [] {
    std::vector<BuiltinInfo> v;
    for (const auto& b : k_builtins) v.push_back({b.name, b.summary});
    return v;
  }();
  return infos;
}

CatalogEntry builtin(const std::string& name) {
  std::string base = name;
  std::optional<double> param;
  const auto open = name.find('(');
  if (open != std::string::npos) {
    if (name.back() != ')')
      throw UnknownMetricError("malformed builtin reference '" + name + "'");
    base = name.substr(0, open);
    const std::string inside = name.substr(open + 1, name.size() - open - 2);
    double v = 0.0;
    auto res = std::from_chars(inside.data(), inside.data() + inside.size(), v);
    if (res.ec != std::errc() || res.ptr != inside.data() + inside.size() || !std::isfinite(v))
      throw UnknownMetricError("builtin parameter '" + inside + "' is not a number");
    param = v;
  }

  auto finish = [&](const std::string& json) { return parse_metric_json(json); };

  if (base == "minkowski" || base == "euclidean" || base == "neutral_kahler_flat" ||
      base == "de_sitter" || base == "fubini_study") {
    if (param) throw UnknownMetricError("builtin '" + base + "' takes no parameter");
    if (base == "minkowski") return finish(minkowski_json());
    if (base == "euclidean") return finish(euclidean_json());
    if (base == "neutral_kahler_flat") return finish(neutral_kahler_flat_json());
    if (base == "de_sitter") return finish(de_sitter_json());
    return finish(fubini_study_json());
  }
  if (base == "sphere4") {
    const double a = param.value_or(1.0);
    if (!(a > 0.0)) throw UnknownMetricError("sphere4 radius must be positive");
    return finish(sphere4_json(a, param ? name : base));
  }
  if (base == "flrw") {
    const double q = param.value_or(2.0 / 3.0);
    if (q == 0.0) throw UnknownMetricError("flrw exponent must be nonzero");
    return finish(flrw_json(q, param ? name : base));
  }
  if (base == "schwarzschild") {
    const double m = param.value_or(1.0);
    if (!(m > 0.0)) throw UnknownMetricError("schwarzschild mass must be positive");
    return finish(schwarzschild_json(m, param ? name : base));
  }
  throw UnknownMetricError("unknown builtin metric '" + base + "'");
}

}  // namespace kst
