#pragma once

// Closed Einstein model spaces with exact curvature and spectral data.

#include "qcf/tensor.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qcf {

enum class ModelKind {
  RoundSphere,        // unit S^n
  SphericalQuotient,  // S^n / Gamma, locally isometric to the unit sphere
  Hyperbolic,         // closed quotient of H^n, sectional curvature -1
  ComplexProjective,  // CP^m with the Fubini-Study metric, Ric = 2(m+1) g
  ProductSpheres,     // S^m x S^m, unit factors
  FlatTorus,          // R^n / (L Z)^n
};

const char* to_string(ModelKind kind);
// Accepts the short CLI names ("sphere", "quotient", "hyperbolic", "cp",
// "product", "torus") and the canonical names printed by to_string.
ModelKind parse_model_kind(const std::string& name);

class ModelSpace {
 public:
  static ModelSpace round_sphere(int n);
  // Free quotient of S^n by a group of the given order (2: real projective space).
  static ModelSpace spherical_quotient(int n, int group_order = 2);
  static ModelSpace hyperbolic(int n, std::optional<double> volume = std::nullopt);
  static ModelSpace complex_projective(int m);
  static ModelSpace product_spheres(int m);
  // Side length L = 2*pi*scale.
  static ModelSpace flat_torus(int n, Rational scale = Rational(1));

  // Builds a model from a kind and its natural integer parameter: the real
  // dimension for spheres, quotients, hyperbolic spaces and tori, the
  // complex dimension for CP^m and the factor dimension for products.
  static ModelSpace make(ModelKind kind, int param);

  ModelKind kind() const { return kind_; }
  int param() const { return param_; }
  int dim() const;
  Rational einstein_constant() const;
  Rational scalar_curvature() const;
  std::optional<double> volume() const;
  std::optional<int> euler_characteristic() const;
  int group_order() const { return group_order_; }
  const Rational& torus_scale() const { return scale_; }
  std::string label() const;  // "S^3", "CP^2", "S^2xS^2", ...
  // The conformal Jacobi operator of the round sphere has a kernel from
  // first spherical harmonics; quotients by a nontrivial group do not.
  bool has_conformal_first_harmonics() const { return kind_ == ModelKind::RoundSphere; }

  bool operator==(const ModelSpace& o) const {
    return kind_ == o.kind_ && param_ == o.param_ && group_order_ == o.group_order_ && scale_ == o.scale_;
  }

 private:
  ModelSpace(ModelKind kind, int param) : kind_(kind), param_(param) {}
  ModelKind kind_;
  int param_;
  int group_order_ = 1;
  Rational scale_ = Rational(1);
  std::optional<double> user_volume_;
};

// Exact curvature in an orthonormal frame.
CurvatureData<Rational> curvature_data(const ModelSpace& model);

// Spectrum of the Einstein operator on TT tensors, in the convention where
// mu = 2R/n marks infinitesimal Einstein deformations.
struct TTSpectrum {
  Rational least;                // smallest eigenvalue, or a lower bound
  bool least_is_bound = false;   // least is only a lower bound
  std::vector<Rational> known;   // exact eigenvalues, ascending
  std::optional<Rational> tail;  // rest of the spectrum lies at or above this
  bool tail_strict = false;      // rest lies strictly above tail
  std::map<std::string, std::string> witnesses;  // eigenvalue -> eigentensor description
};

TTSpectrum builtin_tt_data(const ModelSpace& model);

// Distinct eigenvalues of the Laplacian on functions, ascending, starting at 0.
bool has_function_spectrum(const ModelSpace& model);
std::vector<Rational> function_spectrum(const ModelSpace& model, int count);

std::vector<Rational> sphere_function_eigenvalues(int m, int count);

struct OneFormSpectrum {
  std::vector<Rational> closed;    // l(l+m-1), l >= 1
  std::vector<Rational> coclosed;  // (l+1)(l+m-2), l >= 1
};
OneFormSpectrum one_form_spectrum(int m, int count);

double sphere_volume(int n);

// Built-in spectral data with optional overrides loaded from JSON (the
// QCF_CATALOG environment variable, or an explicit path).
class Catalog {
 public:
  static constexpr int kSchemaVersion = 1;

  Catalog() = default;
  static Catalog builtin();
  static Catalog from_environment();
  static Catalog from_json_file(const std::string& path);
  static Catalog from_json_text(const std::string& text);

  TTSpectrum tt_data(const ModelSpace& model) const;
  bool overridden(const ModelSpace& model) const;
  std::string to_json() const;

  // Models serialized by to_json().
  static std::vector<ModelSpace> standard_models();

 private:
  std::map<std::string, TTSpectrum> overrides_;
};

std::string catalog_key(const ModelSpace& model);

}  // namespace qcf
