#include "qcf/catalog.hpp"

#include "qcf/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace qcf {

using nlohmann::json;

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::RoundSphere: return "round_sphere";
    case ModelKind::SphericalQuotient: return "spherical_quotient";
    case ModelKind::Hyperbolic: return "hyperbolic";
    case ModelKind::ComplexProjective: return "complex_projective";
    case ModelKind::ProductSpheres: return "product_spheres";
    case ModelKind::FlatTorus: return "flat_torus";
  }
  return "unknown";
}

ModelKind parse_model_kind(const std::string& name) {
  static const std::map<std::string, ModelKind> names = {
      {"sphere", ModelKind::RoundSphere},          {"round_sphere", ModelKind::RoundSphere},
      {"quotient", ModelKind::SphericalQuotient},  {"rp", ModelKind::SphericalQuotient},
      {"spherical_quotient", ModelKind::SphericalQuotient},
      {"hyperbolic", ModelKind::Hyperbolic},       {"cp", ModelKind::ComplexProjective},
      {"complex_projective", ModelKind::ComplexProjective},
      {"product", ModelKind::ProductSpheres},      {"product_spheres", ModelKind::ProductSpheres},
      {"torus", ModelKind::FlatTorus},             {"flat_torus", ModelKind::FlatTorus},
  };
  auto it = names.find(name);
  if (it == names.end()) {
    fail(ErrorKind::InvalidInput,
         "unknown model '" + name + "' (expected sphere, quotient, hyperbolic, cp, product or torus)");
  }
  return it->second;
}

ModelSpace ModelSpace::round_sphere(int n) {
  check_dim(n, 3);
  return ModelSpace(ModelKind::RoundSphere, n);
}

ModelSpace ModelSpace::spherical_quotient(int n, int group_order) {
  check_dim(n, 3);
  if (group_order < 2) fail(ErrorKind::InvalidInput, "quotient group order must be at least 2");
  if (n % 2 == 0 && group_order != 2) {
    fail(ErrorKind::InvalidInput, "only the antipodal group acts freely on an even-dimensional sphere");
  }
  ModelSpace m(ModelKind::SphericalQuotient, n);
  m.group_order_ = group_order;
  return m;
}

ModelSpace ModelSpace::hyperbolic(int n, std::optional<double> volume) {
  check_dim(n, 3);
  if (volume && !(*volume > 0)) fail(ErrorKind::InvalidInput, "volume must be positive");
  ModelSpace m(ModelKind::Hyperbolic, n);
  m.user_volume_ = volume;
  return m;
}

ModelSpace ModelSpace::complex_projective(int m) {
  if (m < 2) fail(ErrorKind::UnsupportedDimension, "CP^m needs m >= 2");
  check_dim(2 * m, 3);
  return ModelSpace(ModelKind::ComplexProjective, m);
}

ModelSpace ModelSpace::product_spheres(int m) {
  if (m < 2) fail(ErrorKind::UnsupportedDimension, "S^m x S^m needs m >= 2");
  check_dim(2 * m, 3);
  return ModelSpace(ModelKind::ProductSpheres, m);
}

ModelSpace ModelSpace::flat_torus(int n, Rational scale) {
  check_dim(n, 3);
  if (!(scale > 0)) fail(ErrorKind::InvalidInput, "torus scale must be positive");
  ModelSpace m(ModelKind::FlatTorus, n);
  m.scale_ = scale;
  return m;
}

ModelSpace ModelSpace::make(ModelKind kind, int param) {
  switch (kind) {
    case ModelKind::RoundSphere: return round_sphere(param);
    case ModelKind::SphericalQuotient: return spherical_quotient(param);
    case ModelKind::Hyperbolic: return hyperbolic(param);
    case ModelKind::ComplexProjective: return complex_projective(param);
    case ModelKind::ProductSpheres: return product_spheres(param);
    case ModelKind::FlatTorus: return flat_torus(param);
  }
  fail(ErrorKind::InvalidInput, "unknown model kind");
}

int ModelSpace::dim() const {
  switch (kind_) {
    case ModelKind::ComplexProjective:
    case ModelKind::ProductSpheres: return 2 * param_;
    default: return param_;
  }
}

Rational ModelSpace::einstein_constant() const {
  switch (kind_) {
    case ModelKind::RoundSphere:
    case ModelKind::SphericalQuotient: return Rational(param_ - 1);
    case ModelKind::Hyperbolic: return Rational(-(param_ - 1));
    case ModelKind::ComplexProjective: return Rational(2 * (param_ + 1));
    case ModelKind::ProductSpheres: return Rational(param_ - 1);
    case ModelKind::FlatTorus: return Rational(0);
  }
  return Rational(0);
}

Rational ModelSpace::scalar_curvature() const { return einstein_constant() * dim(); }

double sphere_volume(int n) {
  return 2.0 * std::pow(std::numbers::pi, (n + 1) / 2.0) / std::tgamma((n + 1) / 2.0);
}

std::optional<double> ModelSpace::volume() const {
  switch (kind_) {
    case ModelKind::RoundSphere: return sphere_volume(param_);
    case ModelKind::SphericalQuotient: return sphere_volume(param_) / group_order_;
    case ModelKind::Hyperbolic: return user_volume_;
    case ModelKind::ComplexProjective: return std::pow(std::numbers::pi, param_) / std::tgamma(param_ + 1.0);
    case ModelKind::ProductSpheres: return sphere_volume(param_) * sphere_volume(param_);
    case ModelKind::FlatTorus: return std::pow(2.0 * std::numbers::pi * to_double(scale_), param_);
  }
  return std::nullopt;
}

std::optional<int> ModelSpace::euler_characteristic() const {
  const int n = dim();
  switch (kind_) {
    case ModelKind::RoundSphere: return n % 2 == 0 ? 2 : 0;
    case ModelKind::SphericalQuotient: return n % 2 == 0 ? 1 : 0;
    case ModelKind::ComplexProjective: return param_ + 1;
    case ModelKind::ProductSpheres: return param_ % 2 == 0 ? 4 : 0;
    case ModelKind::FlatTorus: return 0;
    case ModelKind::Hyperbolic:
      if (n % 2 == 1) return 0;
      return std::nullopt;
  }
  return std::nullopt;
}

std::string ModelSpace::label() const {
  const std::string p = std::to_string(param_);
  switch (kind_) {
    case ModelKind::RoundSphere: return "S^" + p;
    case ModelKind::SphericalQuotient:
      return group_order_ == 2 ? "RP^" + p : "S^" + p + "/Z" + std::to_string(group_order_);
    case ModelKind::Hyperbolic: return "H^" + p + "/Gamma";
    case ModelKind::ComplexProjective: return "CP^" + p;
    case ModelKind::ProductSpheres: return "S^" + p + "xS^" + p;
    case ModelKind::FlatTorus: return "T^" + p;
  }
  return "?";
}

CurvatureData<Rational> curvature_data(const ModelSpace& model) {
  const int n = model.dim();
  auto g = MetricFrame<Rational>::identity(n);
  switch (model.kind()) {
    case ModelKind::RoundSphere:
    case ModelKind::SphericalQuotient: return decompose(constant_curvature(g, Rational(1)), g);
    case ModelKind::Hyperbolic: return decompose(constant_curvature(g, Rational(-1)), g);
    case ModelKind::ComplexProjective: return decompose(complex_space_form(model.param(), Rational(1)), g);
    case ModelKind::ProductSpheres:
      return decompose(product_constant_curvature(model.param(), Rational(1), model.param(), Rational(1)), g);
    case ModelKind::FlatTorus: return decompose(Curv4<Rational>(n), g);
  }
  fail(ErrorKind::InvalidInput, "unknown model kind");
}

TTSpectrum builtin_tt_data(const ModelSpace& model) {
  const int n = model.dim();
  const int m = model.param();
  TTSpectrum t;
  switch (model.kind()) {
    case ModelKind::RoundSphere:
      t.least = Rational(4 * n);
      t.known = {t.least};
      t.tail = t.least;
      t.tail_strict = true;
      t.witnesses[to_string(t.least)] = "lowest TT eigenspace (SO(n+1)-module)";
      break;
    case ModelKind::SphericalQuotient:
      // invariant subspace of the sphere's spectrum; which eigenvalues survive
      // depends on the group, so only the sphere's bound is certain
      t.least = Rational(4 * n);
      t.least_is_bound = true;
      t.tail = t.least;
      t.tail_strict = false;
      break;
    case ModelKind::Hyperbolic:
      t.least = Rational(-n);
      t.least_is_bound = true;
      t.tail = t.least;
      t.tail_strict = false;
      break;
    case ModelKind::ComplexProjective:
      t.least = Rational(8 * (m + 2));
      t.known = {t.least};
      t.tail = t.least;
      t.tail_strict = true;
      t.witnesses[to_string(t.least)] = "lowest TT eigenspace (SU(m+1)-module)";
      break;
    case ModelKind::ProductSpheres:
      t.least = Rational(0);
      t.known = {Rational(0)};
      t.witnesses["0"] = "g1 - g2 (trace-free, parallel)";
      if (m == 2) {
        t.known.push_back(Rational(4));
        t.witnesses["4"] = "alpha1 . alpha2 (symmetric product of the factors' first-eigenvalue 1-forms)";
      }
      t.tail = Rational(2 * m);
      t.tail_strict = false;
      break;
    case ModelKind::FlatTorus:
      t.least = Rational(0);
      t.known = {Rational(0)};
      t.witnesses["0"] = "constant trace-free symmetric tensors";
      t.tail = Rational(1) / (model.torus_scale() * model.torus_scale());
      t.tail_strict = false;
      break;
  }
  return t;
}

bool has_function_spectrum(const ModelSpace& model) {
  switch (model.kind()) {
    case ModelKind::RoundSphere:
    case ModelKind::ProductSpheres:
    case ModelKind::FlatTorus: return true;
    case ModelKind::SphericalQuotient: return model.group_order() == 2;
    default: return false;
  }
}

std::vector<Rational> sphere_function_eigenvalues(int m, int count) {
  if (m < 1) fail(ErrorKind::InvalidInput, "sphere dimension must be positive");
  std::vector<Rational> out;
  for (int l = 0; l < count; ++l) out.emplace_back(static_cast<long long>(l) * (l + m - 1));
  return out;
}

namespace {

bool sum_of_squares(long v, int parts) {
  if (parts == 0) return v == 0;
  for (long k = 0; k * k <= v; ++k) {
    if (sum_of_squares(v - k * k, parts - 1)) return true;
  }
  return false;
}

}  // namespace

std::vector<Rational> function_spectrum(const ModelSpace& model, int count) {
  if (count < 0) fail(ErrorKind::InvalidInput, "count must be non-negative");
  const int n = model.dim();
  switch (model.kind()) {
    case ModelKind::RoundSphere: return sphere_function_eigenvalues(n, count);
    case ModelKind::SphericalQuotient: {
      if (model.group_order() != 2) break;
      std::vector<Rational> out;
      for (int l = 0; static_cast<int>(out.size()) < count; l += 2) out.emplace_back(static_cast<long long>(l) * (l + n - 1));
      return out;
    }
    case ModelKind::ProductSpheres: {
      const auto one = sphere_function_eigenvalues(model.param(), count);
      std::set<Rational> sums;
      for (const auto& a : one)
        for (const auto& b : one) sums.insert(a + b);
      std::vector<Rational> out(sums.begin(), sums.end());
      out.resize(std::min<size_t>(out.size(), count));
      return out;
    }
    case ModelKind::FlatTorus: {
      std::vector<Rational> out;
      const Rational s2 = model.torus_scale() * model.torus_scale();
      for (long v = 0; static_cast<int>(out.size()) < count; ++v) {
        if (sum_of_squares(v, n)) out.push_back(Rational(v) / s2);
      }
      return out;
    }
    default: break;
  }
  fail(ErrorKind::NotAvailable, "no function spectrum in the catalog for " + model.label());
}

OneFormSpectrum one_form_spectrum(int m, int count) {
  if (m < 2) fail(ErrorKind::InvalidInput, "sphere dimension must be at least 2");
  OneFormSpectrum s;
  for (int l = 1; l <= count; ++l) {
    s.closed.emplace_back(static_cast<long long>(l) * (l + m - 1));
    s.coclosed.emplace_back(static_cast<long long>(l + 1) * (l + m - 2));
  }
  return s;
}

std::string catalog_key(const ModelSpace& model) {
  return std::string(to_string(model.kind())) + ":" + std::to_string(model.param());
}

namespace {

json tt_to_json(const TTSpectrum& t) {
  json j;
  j["least"] = to_string(t.least);
  j["least_is_bound"] = t.least_is_bound;
  j["known"] = json::array();
  for (const auto& k : t.known) j["known"].push_back(to_string(k));
  j["tail"] = t.tail ? json(to_string(*t.tail)) : json(nullptr);
  j["tail_strict"] = t.tail_strict;
  j["witnesses"] = json::object();
  for (const auto& [k, v] : t.witnesses) j["witnesses"][k] = v;
  return j;
}

Rational rational_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) {
    fail(ErrorKind::InvalidInput, std::string("catalog: field '") + key + "' must be a rational string");
  }
  return parse_rational(j[key].get<std::string>());
}

TTSpectrum tt_from_json(const json& j) {
  TTSpectrum t;
  t.least = rational_field(j, "least");
  t.least_is_bound = j.value("least_is_bound", false);
  if (j.contains("known")) {
    for (const auto& k : j["known"]) {
      if (!k.is_string()) fail(ErrorKind::InvalidInput, "catalog: known eigenvalues must be rational strings");
      t.known.push_back(parse_rational(k.get<std::string>()));
    }
  }
  std::sort(t.known.begin(), t.known.end());
  if (j.contains("tail") && !j["tail"].is_null()) t.tail = rational_field(j, "tail");
  t.tail_strict = j.value("tail_strict", false);
  if (j.contains("witnesses")) {
    for (const auto& [k, v] : j["witnesses"].items()) t.witnesses[k] = v.get<std::string>();
  }
  return t;
}

}  // namespace

Catalog Catalog::builtin() { return Catalog(); }

Catalog Catalog::from_environment() {
  const char* path = std::getenv("QCF_CATALOG");
  if (path == nullptr || *path == '\0') return builtin();
  return from_json_file(path);
}

Catalog Catalog::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidInput, "cannot read catalog file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

Catalog Catalog::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidInput, std::string("catalog: malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("schema_version") || !j["schema_version"].is_number_integer()) {
    fail(ErrorKind::InvalidInput, "catalog: missing schema_version");
  }
  if (j["schema_version"].get<int>() != kSchemaVersion) {
    fail(ErrorKind::InvalidInput, "catalog: unsupported schema_version " + j["schema_version"].dump());
  }
  Catalog c;
  if (!j.contains("models")) return c;
  for (const auto& entry : j["models"]) {
    if (!entry.contains("model") || !entry.contains("param")) {
      fail(ErrorKind::InvalidInput, "catalog: every model entry needs 'model' and 'param'");
    }
    ModelSpace model = ModelSpace::make(parse_model_kind(entry["model"].get<std::string>()), entry["param"].get<int>());
    if (entry.contains("tt")) c.overrides_[catalog_key(model)] = tt_from_json(entry["tt"]);
  }
  return c;
}

TTSpectrum Catalog::tt_data(const ModelSpace& model) const {
  if (auto it = overrides_.find(catalog_key(model)); it != overrides_.end()) {
    return it->second;
  }
  return builtin_tt_data(model);
}

bool Catalog::overridden(const ModelSpace& model) const { return overrides_.count(catalog_key(model)) > 0; }

std::vector<ModelSpace> Catalog::standard_models() {
  std::vector<ModelSpace> out;
  for (int n = 3; n <= kMaxDim; ++n) out.push_back(ModelSpace::round_sphere(n));
  for (int n = 3; n <= kMaxDim; ++n) out.push_back(ModelSpace::spherical_quotient(n));
  for (int n = 3; n <= kMaxDim; ++n) out.push_back(ModelSpace::hyperbolic(n));
  for (int m = 2; 2 * m <= kMaxDim; ++m) out.push_back(ModelSpace::complex_projective(m));
  for (int m = 2; 2 * m <= kMaxDim; ++m) out.push_back(ModelSpace::product_spheres(m));
  for (int n = 3; n <= kMaxDim; ++n) out.push_back(ModelSpace::flat_torus(n));
  return out;
}

std::string Catalog::to_json() const {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["models"] = json::array();
  for (const auto& m : standard_models()) {
    json e;
    e["model"] = to_string(m.kind());
    e["param"] = m.param();
    e["label"] = m.label();
    e["n"] = m.dim();
    e["einstein_constant"] = qcf::to_string(m.einstein_constant());
    e["scalar_curvature"] = qcf::to_string(m.scalar_curvature());
    if (auto v = m.volume()) e["volume"] = *v;
    if (auto chi = m.euler_characteristic()) e["euler_characteristic"] = *chi;
    e["tt"] = tt_to_json(tt_data(m));
    if (has_function_spectrum(m)) {
      e["function_spectrum_prefix"] = json::array();
      for (const auto& x : function_spectrum(m, 6)) e["function_spectrum_prefix"].push_back(qcf::to_string(x));
    }
    j["models"].push_back(e);
  }
  return j.dump(2);
}

}  // namespace qcf
