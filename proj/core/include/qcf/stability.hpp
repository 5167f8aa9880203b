#pragma once

// Stability and rigidity verdicts for the normalized functionals F_tau at
// the catalog's Einstein models.

#include "qcf/catalog.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qcf {

struct TauBound {
  std::optional<Rational> value;  // nullopt: infinite
  bool open = true;
  std::string provenance;
};

struct TauInterval {
  TauBound lo;
  TauBound hi;
  bool empty = false;
  // False when the interval only certifies stability, not strict local
  // minimality (flat tori: parallel TT tensors).
  bool strict = true;
  std::string upper_optimality = "sharp";  // "sharp" or "unknown"
  std::vector<std::string> notes;

  bool contains(const Rational& tau) const;
};

enum class VerdictKind {
  StrictlyStable,
  StableBoundOnly,
  Indeterminate,
  FailsTT,
  FailsConformal,
};

const char* to_string(VerdictKind k);

struct StabilityVerdict {
  VerdictKind kind = VerdictKind::StrictlyStable;
  std::optional<Rational> witness;  // mu for FailsTT, lambda for FailsConformal
  std::vector<std::string> notes;
  std::vector<std::string> provenance;

  bool passes() const { return kind == VerdictKind::StrictlyStable || kind == VerdictKind::StableBoundOnly; }
};

// TT part: the spectrum must miss the closed interval between 2R/n and
// (4/n + 2 tau) R.
StabilityVerdict tt_gap_check(const ModelSpace& model, const TTSpectrum& tt, const Rational& tau);
StabilityVerdict tt_gap_check(const ModelSpace& model, const Rational& tau);

// Conformal part, by dimension and sign of R. lambda1 is the first nonzero
// eigenvalue of the Laplacian on functions; required for hyperbolic n >= 5
// outside (-n/(4(n-1)), -1/n].
StabilityVerdict conformal_gap_check(const ModelSpace& model, const Rational& tau,
                                     std::optional<Rational> lambda1 = std::nullopt);

// Both parts combined.
StabilityVerdict assess_stability(const ModelSpace& model, const TTSpectrum& tt, const Rational& tau,
                                  std::optional<Rational> lambda1 = std::nullopt);

TauInterval stability_interval(const ModelSpace& model, const TTSpectrum& tt,
                               std::optional<Rational> lambda1 = std::nullopt);
TauInterval stability_interval(const ModelSpace& model);

// (4 - 3n) / (2n(n-1))
Rational conformal_threshold(int n);

enum class GapStatus { Holds, Fails, Indeterminate };
const char* to_string(GapStatus s);

struct ExceptionalTau {
  Rational tau;
  Rational mu;
  std::string kernel_note;
  GapStatus conformal_kernel_trivial = GapStatus::Indeterminate;
  std::string conformal_note;
};

struct RigidityReport {
  int n = 0;
  Rational scalar;
  std::vector<ExceptionalTau> taus;  // strictly increasing in tau
  bool einstein_deformations = false;  // 2R/n is a TT eigenvalue
  std::vector<std::string> notes;
};

// tau with a TT kernel at eigenvalue mu: (4/n + 2 tau) R = mu.
Rational exceptional_tau(int n, const Rational& scalar, const Rational& mu);

// Whether the conformal Jacobi operator has trivial kernel at tau.
GapStatus conformal_kernel_status(const ModelSpace& model, const Rational& tau, std::optional<Rational> lambda1,
                                  std::string* note = nullptr);

RigidityReport rigidity_exceptional_taus(const ModelSpace& model, const TTSpectrum& tt, int count,
                                         const std::vector<Rational>& extra_mu = {},
                                         std::optional<Rational> lambda1 = std::nullopt);

struct BachVerdict {
  GapStatus rigid = GapStatus::Indeterminate;  // {R/3, R/2} miss the TT spectrum
  StabilityVerdict minimizer;                 // TT gap over [R/3, R/2]
  std::vector<std::string> notes;
};

BachVerdict bach_verdict(const ModelSpace& model, const TTSpectrum& tt);

enum class BishopDeduction { VolumeAtLeast, Inconclusive, EqualityRigidity };
const char* to_string(BishopDeduction d);

BishopDeduction reverse_bishop(double vol_g, int n, double vol_gt, bool ric_upper_ok, bool ric_lower_ok,
                               double ftilde0_gt);

struct RicciBoundFlags {
  bool upper_ok = false;  // Ric <= (n-1) g
  bool lower_ok = false;  // Ric > -(n-1) g
  double max_eigenvalue = 0;
  double min_eigenvalue = 0;
};

// Eigenvalues of g^{-1} Ric against the unit-sphere normalization.
RicciBoundFlags ricci_bound_flags(const CurvatureData<double>& cd);

}  // namespace qcf
