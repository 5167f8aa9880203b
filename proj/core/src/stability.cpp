#include "qcf/stability.hpp"

#include "qcf/error.hpp"
#include "qcf/jacobi.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>

namespace qcf {

const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::StrictlyStable: return "strictly_stable";
    case VerdictKind::StableBoundOnly: return "stable_bound_only";
    case VerdictKind::Indeterminate: return "indeterminate";
    case VerdictKind::FailsTT: return "fails_tt";
    case VerdictKind::FailsConformal: return "fails_conformal";
  }
  return "unknown";
}

const char* to_string(GapStatus s) {
  switch (s) {
    case GapStatus::Holds: return "holds";
    case GapStatus::Fails: return "fails";
    case GapStatus::Indeterminate: return "indeterminate";
  }
  return "unknown";
}

const char* to_string(BishopDeduction d) {
  switch (d) {
    case BishopDeduction::VolumeAtLeast: return "volume_at_least";
    case BishopDeduction::Inconclusive: return "inconclusive";
    case BishopDeduction::EqualityRigidity: return "equality_rigidity";
  }
  return "unknown";
}

bool TauInterval::contains(const Rational& tau) const {
  if (empty) return false;
  if (lo.value && (lo.open ? tau <= *lo.value : tau < *lo.value)) return false;
  if (hi.value && (hi.open ? tau >= *hi.value : tau > *hi.value)) return false;
  return true;
}

Rational conformal_threshold(int n) { return Rational(4 - 3 * n, 2 * n * (n - 1)); }

namespace {

// Region of the TT spectrum the catalog does not resolve eigenvalue by
// eigenvalue: [tail, inf) or (tail, inf).
struct Tail {
  std::optional<Rational> start;
  bool strict = false;
  bool contains(const Rational& x) const { return start && (strict ? x > *start : x >= *start); }
  // [lo, hi] meets the tail
  bool meets(const Rational& hi) const { return contains(hi); }
};

Tail tail_of(const TTSpectrum& tt) {
  Tail t;
  if (tt.tail) {
    t.start = tt.tail;
    t.strict = tt.tail_strict;
  } else if (tt.least_is_bound) {
    t.start = tt.least;
  }
  return t;
}

bool is_known(const TTSpectrum& tt, const Rational& mu) {
  return std::find(tt.known.begin(), tt.known.end(), mu) != tt.known.end();
}

std::string fmt(const Rational& x) { return to_string(x); }

// Nonzero function eigenvalues usable as conformal directions; the round
// sphere's first eigenvalue comes from conformal Killing fields (gauge).
std::optional<Rational> conformal_witness(const ModelSpace& model, const SpectralPolynomial& p, bool allow_zero_value) {
  if (!has_function_spectrum(model)) return std::nullopt;
  for (int count = 16; count <= (1 << 16); count *= 4) {
    const auto spec = function_spectrum(model, count);
    for (const auto& lam : spec) {
      if (lam == 0) continue;
      if (model.has_conformal_first_harmonics() && lam == Rational(model.dim())) continue;
      const Rational v = p(lam);
      if (v < 0 || (allow_zero_value && v == 0)) return lam;
    }
  }
  return std::nullopt;
}

}  // namespace

StabilityVerdict tt_gap_check(const ModelSpace& model, const TTSpectrum& tt, const Rational& tau) {
  const int n = model.dim();
  const Rational r = model.scalar_curvature();
  const Rational a = Rational(2, n) * r;
  const Rational b = (Rational(4, n) + 2 * tau) * r;
  const Rational lo = std::min(a, b);
  const Rational hi = std::max(a, b);

  StabilityVerdict v;
  v.provenance.push_back("tt-spectral-gap");
  for (const auto& mu : tt.known) {
    if (mu >= lo && mu <= hi) {
      v.kind = VerdictKind::FailsTT;
      v.witness = mu;
      if (mu == a) {
        v.notes.push_back("mu = 2R/n: infinitesimal Einstein deformations");
      } else if (auto it = tt.witnesses.find(fmt(mu)); it != tt.witnesses.end()) {
        v.notes.push_back("TT eigenvalue " + fmt(mu) + ": " + it->second);
      }
      if (r == 0) v.notes.push_back("parallel TT tensors are integrable flat deformations; minimality is not strict");
      return v;
    }
  }
  const Tail t = tail_of(tt);
  if (t.meets(hi)) {
    v.kind = VerdictKind::Indeterminate;
    v.notes.push_back("interval [" + fmt(lo) + ", " + fmt(hi) + "] reaches TT spectrum the catalog only bounds (from " +
                      fmt(*t.start) + ")");
    return v;
  }
  v.kind = tt.least_is_bound ? VerdictKind::StableBoundOnly : VerdictKind::StrictlyStable;
  return v;
}

StabilityVerdict tt_gap_check(const ModelSpace& model, const Rational& tau) {
  return tt_gap_check(model, builtin_tt_data(model), tau);
}

StabilityVerdict conformal_gap_check(const ModelSpace& model, const Rational& tau, std::optional<Rational> lambda1) {
  const int n = model.dim();
  const Rational r = model.scalar_curvature();
  const Rational t1 = conformal_threshold(n);
  const Rational t2 = degenerate_tau(n);
  const auto poly = conformal_polynomial(n, r, Coupling::tau(tau));

  StabilityVerdict v;
  auto pass = [&](const std::string& tag) {
    v.kind = VerdictKind::StrictlyStable;
    v.provenance.push_back(tag);
    if (model.has_conformal_first_harmonics()) {
      v.notes.push_back("first spherical harmonics give a kernel from conformal Killing fields (gauge)");
    }
    return v;
  };
  auto fails = [&](const std::string& tag, const std::string& note) {
    v.kind = VerdictKind::FailsConformal;
    v.provenance.push_back(tag);
    v.notes.push_back(note);
    v.witness = conformal_witness(model, poly, true);
    if (!v.witness) v.notes.push_back("no function spectrum in the catalog to exhibit a witness eigenvalue");
    return v;
  };
  auto indeterminate = [&](const std::string& tag, const std::string& note) {
    v.kind = VerdictKind::Indeterminate;
    v.provenance.push_back(tag);
    v.notes.push_back(note);
    return v;
  };

  if (n == 4 && tau == Rational(-1, 3)) {
    return fails("conformal-degenerate-n4",
                 "the functional is conformally invariant at tau = -1/3 (n = 4); the conformal Jacobi operator vanishes");
  }

  if (r > 0) {
    const Rational pass_above = std::max(t1, t2);
    const Rational fail_below = std::min(t1, t2);
    if (tau > pass_above) return pass("conformal-positive-scalar");
    if (tau < fail_below) return fails("conformal-positive-scalar", "local maximizer in conformal directions");
    return indeterminate("conformal-positive-scalar",
                         "tau in [" + fmt(fail_below) + ", " + fmt(pass_above) + "]: no sign information");
  }

  if (r == 0) {
    if (tau > t2) return pass("conformal-ricci-flat");
    return fails("conformal-ricci-flat", tau == t2 ? "conformal Jacobi operator vanishes at tau = -n/(4(n-1))"
                                                   : "local maximizer in conformal directions");
  }

  // R < 0
  if (n == 3) {
    if (tau > Rational(-1, 3)) return pass("conformal-negative-scalar");
    if (tau < Rational(-3, 8)) return fails("conformal-negative-scalar", "local maximizer in conformal directions");
    return indeterminate("conformal-negative-scalar", "tau in [-3/8, -1/3]: no sign information");
  }
  if (n == 4) {
    if (tau > Rational(-1, 3)) return pass("conformal-negative-scalar");
    return fails("conformal-negative-scalar", "local maximizer in conformal directions");
  }
  const Rational minus_inv_n(-1, n);
  if (tau > t2 && tau <= minus_inv_n) return pass("conformal-negative-scalar");
  if (tau == t2) return fails("conformal-negative-scalar", "conformal Jacobi operator loses its leading term");
  const Rational bound = Rational(n - 4, 2 * (n - 1)) * (-r);
  if (!lambda1) {
    fail(ErrorKind::InsufficientData,
         "tau = " + fmt(tau) + " needs the first function eigenvalue lambda1 (condition lambda1 > (n-4)/(2(n-1)) (-R) = " +
             fmt(bound) + "); pass --lambda1");
  }
  if (!(*lambda1 > 0)) fail(ErrorKind::InvalidInput, "lambda1 must be positive");
  const Rational at1 = poly(*lambda1);
  if (tau > minus_inv_n) {
    if (*lambda1 > bound) return pass("conformal-lambda1-bound");
    if (at1 > 0) return pass("conformal-lambda1-direct");
    v.kind = VerdictKind::FailsConformal;
    v.witness = *lambda1;
    v.provenance.push_back("conformal-lambda1-direct");
    v.notes.push_back("Jacobi polynomial is non-positive at lambda1");
    return v;
  }
  // tau < t2: negative leading coefficient
  if (at1 < 0 || *lambda1 > bound) {
    v.kind = VerdictKind::FailsConformal;
    if (at1 <= 0) v.witness = *lambda1;
    v.provenance.push_back("conformal-lambda1-bound");
    v.notes.push_back("local maximizer in conformal directions");
    return v;
  }
  return indeterminate("conformal-lambda1-bound", "lambda1 does not satisfy the bound " + fmt(bound));
}

StabilityVerdict assess_stability(const ModelSpace& model, const TTSpectrum& tt, const Rational& tau,
                                  std::optional<Rational> lambda1) {
  StabilityVerdict t = tt_gap_check(model, tt, tau);
  StabilityVerdict c;
  try {
    c = conformal_gap_check(model, tau, lambda1);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InsufficientData) throw;
    c.kind = VerdictKind::Indeterminate;
    c.notes.push_back(e.what());
    c.provenance.push_back("conformal-lambda1-bound");
  }
  StabilityVerdict out;
  out.provenance = t.provenance;
  out.provenance.insert(out.provenance.end(), c.provenance.begin(), c.provenance.end());
  out.notes = t.notes;
  out.notes.insert(out.notes.end(), c.notes.begin(), c.notes.end());
  if (t.kind == VerdictKind::FailsTT) {
    out.kind = t.kind;
    out.witness = t.witness;
  } else if (c.kind == VerdictKind::FailsConformal) {
    out.kind = c.kind;
    out.witness = c.witness;
  } else if (t.kind == VerdictKind::Indeterminate || c.kind == VerdictKind::Indeterminate) {
    out.kind = VerdictKind::Indeterminate;
  } else if (t.kind == VerdictKind::StableBoundOnly) {
    out.kind = VerdictKind::StableBoundOnly;
  } else {
    out.kind = VerdictKind::StrictlyStable;
  }
  return out;
}

namespace {

TauBound infinite() {
  TauBound b;
  b.open = true;
  b.provenance = "unbounded";
  return b;
}

TauBound bound(Rational v, bool open, std::string prov) {
  TauBound b;
  b.value = std::move(v);
  b.open = open;
  b.provenance = std::move(prov);
  return b;
}

// larger lower bound wins; at equal values the open one wins
TauBound max_lo(const TauBound& a, const TauBound& b) {
  if (!a.value) return b;
  if (!b.value) return a;
  if (*a.value != *b.value) return *a.value > *b.value ? a : b;
  return a.open ? a : b;
}

TauBound min_hi(const TauBound& a, const TauBound& b) {
  if (!a.value) return b;
  if (!b.value) return a;
  if (*a.value != *b.value) return *a.value < *b.value ? a : b;
  return a.open ? a : b;
}

// tau with (4/n + 2 tau) R = mu
Rational tau_for(int n, const Rational& r, const Rational& mu) { return (mu / r - Rational(4, n)) / 2; }

}  // namespace

Rational exceptional_tau(int n, const Rational& scalar, const Rational& mu) {
  if (scalar == 0) fail(ErrorKind::InvalidInput, "no exceptional tau when R = 0");
  return tau_for(n, scalar, mu);
}

TauInterval stability_interval(const ModelSpace& model, const TTSpectrum& tt, std::optional<Rational> lambda1) {
  const int n = model.dim();
  const Rational r = model.scalar_curvature();
  const Rational t1 = conformal_threshold(n);
  const Rational t2 = degenerate_tau(n);
  TauInterval out;

  // TT range: (4/n + 2 tau) R must stay strictly between the nearest
  // spectral points around a = 2R/n.
  TauBound tt_lo = infinite();
  TauBound tt_hi = infinite();
  const Rational a = Rational(2, n) * r;
  const Tail tail = tail_of(tt);
  if (is_known(tt, a) || tail.contains(a)) {
    if (r == 0) {
      out.strict = false;
      out.notes.push_back("parallel TT tensors (mu = 0) are integrable flat deformations: stable, not strict");
    } else {
      out.empty = true;
      out.notes.push_back("2R/n lies in the TT spectrum: no tau gives strict stability");
      out.lo = bound(a, true, "tt: 2R/n in spectrum");
      out.hi = out.lo;
      return out;
    }
  } else {
    std::optional<Rational> below;
    std::optional<Rational> above;
    bool above_closed = false;  // above itself is allowed (strict tail start)
    for (const auto& mu : tt.known) {
      if (mu < a && (!below || mu > *below)) below = mu;
      if (mu > a && (!above || mu < *above)) {
        above = mu;
        above_closed = false;
      }
    }
    if (tail.start && *tail.start > a && (!above || *tail.start < *above)) {
      above = tail.start;
      above_closed = tail.strict;
    } else if (tail.start && above && *tail.start == *above) {
      above_closed = false;
    }
    auto label = [&](const Rational& mu, const char* side) {
      std::string s = std::string("tt: ") + side + " TT eigenvalue " + fmt(mu);
      if (tt.least_is_bound && mu == tt.least) s = std::string("tt: ") + side + " TT spectral bound " + fmt(mu);
      return s;
    };
    if (r > 0) {
      if (above) tt_hi = bound(tau_for(n, r, *above), !above_closed, label(*above, "upper"));
      if (below) tt_lo = bound(tau_for(n, r, *below), true, label(*below, "lower"));
    } else if (r < 0) {
      if (above) tt_lo = bound(tau_for(n, r, *above), !above_closed, label(*above, "upper"));
      if (below) tt_hi = bound(tau_for(n, r, *below), true, label(*below, "lower"));
    }
  }

  // conformal range
  TauBound c_lo = infinite();
  TauBound c_hi = infinite();
  if (r > 0) {
    const bool t1_wins = t1 >= t2;
    c_lo = bound(std::max(t1, t2), true, t1_wins ? "conformal: Lichnerowicz threshold (4-3n)/(2n(n-1))"
                                                  : "conformal: leading-coefficient threshold -n/(4(n-1))");
  } else if (r == 0) {
    c_lo = bound(t2, true, "conformal: leading-coefficient threshold -n/(4(n-1))");
  } else if (n == 3 || n == 4) {
    c_lo = bound(Rational(-1, 3), true, "conformal: negative scalar curvature, n = " + std::to_string(n));
  } else {
    c_lo = bound(t2, true, "conformal: leading-coefficient threshold -n/(4(n-1))");
    c_hi = bound(Rational(-1, n), false, "conformal: -1/n without a first-eigenvalue bound");
    if (lambda1) {
      const Rational lb = Rational(n - 4, 2 * (n - 1)) * (-r);
      if (*lambda1 > lb) {
        c_hi = infinite();
      } else {
        const Rational k = Rational(-2 * n * (n - 4)) * r - 4 * (*lambda1) * n * (n - 1);
        const Rational rhs = (*lambda1) * n * n + Rational(2 * (n - 4)) * r;
        if (k > 0) c_hi = bound(rhs / k, true, "conformal: first function eigenvalue " + fmt(*lambda1));
      }
    }
  }

  out.lo = max_lo(tt_lo, c_lo);
  out.hi = min_hi(tt_hi, c_hi);
  if (out.lo.value && out.hi.value &&
      (*out.lo.value > *out.hi.value || (*out.lo.value == *out.hi.value && (out.lo.open || out.hi.open)))) {
    out.empty = true;
  }
  if (model.kind() == ModelKind::ProductSpheres) {
    out.upper_optimality = "unknown";
    out.notes.push_back("upper endpoint bounds strict stability; optimality for strict minimization is not known");
  }
  if (model.has_conformal_first_harmonics()) {
    out.notes.push_back("kernel from first spherical harmonics is gauge (conformal Killing fields)");
  }
  return out;
}

TauInterval stability_interval(const ModelSpace& model) { return stability_interval(model, builtin_tt_data(model)); }

GapStatus conformal_kernel_status(const ModelSpace& model, const Rational& tau, std::optional<Rational> lambda1,
                                  std::string* note) {
  const int n = model.dim();
  const Rational r = model.scalar_curvature();
  const Rational t1 = conformal_threshold(n);
  const Rational t2 = degenerate_tau(n);
  auto say = [&](const std::string& s) {
    if (note) *note = s;
  };
  if (n == 4 && tau == Rational(-1, 3)) {
    say("tau = -1/3 in dimension 4: only TT directions count");
    return GapStatus::Holds;
  }
  if (r == 0) {
    if (tau != t2) {
      say("Ricci-flat, tau != -n/(4(n-1))");
      return GapStatus::Holds;
    }
    say("Ricci-flat at tau = -n/(4(n-1)): conformal Jacobi operator vanishes");
    return GapStatus::Fails;
  }

  // second factor of the conformal polynomial: b1 lambda + b0
  const Rational b1 = Rational(n) * (n - 4 * tau + 4 * n * tau);
  const Rational b0 = Rational(2 * (n - 4)) * (1 + n * tau) * r;
  auto exact_check = [&]() -> std::optional<GapStatus> {
    if (!has_function_spectrum(model)) return std::nullopt;
    if (b1 == 0) return b0 != 0 ? GapStatus::Holds : GapStatus::Fails;
    const Rational x = -b0 / b1;
    if (x <= 0) return GapStatus::Holds;
    for (int count = 16; count <= (1 << 16); count *= 4) {
      const auto spec = function_spectrum(model, count);
      if (spec.back() < x) continue;
      return std::find(spec.begin(), spec.end(), x) != spec.end() ? GapStatus::Fails : GapStatus::Holds;
    }
    return std::nullopt;
  };

  bool gap_applies = false;
  if (r > 0) {
    if (n == 3) gap_applies = !(tau > Rational(-5, 12) && tau < Rational(-3, 8));
    else if (n == 4) gap_applies = true;
    else gap_applies = !(tau > t2 && tau < t1);
    if (gap_applies) {
      say(model.has_conformal_first_harmonics() ? "positive scalar curvature branch; first harmonics are gauge"
                                                : "positive scalar curvature branch");
      return GapStatus::Holds;
    }
  } else {
    if (n == 3) gap_applies = !(tau > Rational(-3, 8) && tau < Rational(-1, 3));
    else if (n == 4) gap_applies = true;
    else gap_applies = tau > t2 && tau < Rational(-1, n);
    if (gap_applies) {
      say("negative scalar curvature branch");
      return GapStatus::Holds;
    }
    if (lambda1 && b1 > 0 && *lambda1 * b1 + b0 > 0) {
      say("first function eigenvalue above the conformal root");
      return GapStatus::Holds;
    }
  }
  if (auto s = exact_check()) {
    say(*s == GapStatus::Holds ? "checked against the catalog function spectrum"
                               : "conformal root is a function eigenvalue");
    return *s;
  }
  say("outside the branches with a spectral-gap guarantee");
  return GapStatus::Indeterminate;
}

RigidityReport rigidity_exceptional_taus(const ModelSpace& model, const TTSpectrum& tt, int count,
                                         const std::vector<Rational>& extra_mu, std::optional<Rational> lambda1) {
  if (count < 0) fail(ErrorKind::InvalidInput, "count must be non-negative");
  const int n = model.dim();
  const Rational r = model.scalar_curvature();
  RigidityReport rep;
  rep.n = n;
  rep.scalar = r;
  const Rational a = Rational(2, n) * r;

  std::set<Rational> mus(tt.known.begin(), tt.known.end());
  mus.insert(extra_mu.begin(), extra_mu.end());
  if (mus.empty()) {
    fail(ErrorKind::InsufficientData, model.label() +
                                          ": the catalog only bounds the TT spectrum; supply TT eigenvalues (--mu)");
  }
  for (const auto& mu : mus) {
    if (tt.least_is_bound ? mu < tt.least : mu < tt.least) {
      fail(ErrorKind::InvalidInput, "TT eigenvalue " + fmt(mu) + " lies below the spectral bound " + fmt(tt.least));
    }
  }
  rep.einstein_deformations = mus.count(a) > 0;
  if (rep.einstein_deformations) rep.notes.push_back("2R/n is a TT eigenvalue: infinitesimal Einstein deformations");
  if (r == 0) {
    rep.notes.push_back("R = 0: the TT Jacobi operator does not depend on tau; no exceptional values");
    return rep;
  }

  std::vector<ExceptionalTau> all;
  for (const auto& mu : mus) {
    if (mu == a) continue;
    ExceptionalTau e;
    e.mu = mu;
    e.tau = exceptional_tau(n, r, mu);
    if (model.kind() == ModelKind::ProductSpheres && mu == 0) {
      e.kernel_note = "g1 - g2: integrable, tangent to the critical path e^t g1 + e^{-t} g2";
    } else if (model.kind() == ModelKind::ProductSpheres && model.param() == 2 && mu == 4) {
      e.kernel_note = "9-dimensional, spanned by alpha1 . alpha2";
    } else if (model.kind() == ModelKind::RoundSphere && n == 3 && mu == 12) {
      e.kernel_note = "not integrable: nonzero third derivative along the Berger family";
    } else if (auto it = tt.witnesses.find(fmt(mu)); it != tt.witnesses.end()) {
      e.kernel_note = it->second;
    } else if (!is_known(tt, mu)) {
      e.kernel_note = "user-supplied TT eigenvalue";
    }
    e.conformal_kernel_trivial = conformal_kernel_status(model, e.tau, lambda1, &e.conformal_note);
    all.push_back(std::move(e));
  }
  std::sort(all.begin(), all.end(), [](const ExceptionalTau& x, const ExceptionalTau& y) { return x.tau < y.tau; });
  // lowest eigenvalues first, then report in increasing tau
  std::sort(all.begin(), all.end(), [](const ExceptionalTau& x, const ExceptionalTau& y) { return x.mu < y.mu; });
  if (static_cast<int>(all.size()) > count) all.resize(count);
  std::sort(all.begin(), all.end(), [](const ExceptionalTau& x, const ExceptionalTau& y) { return x.tau < y.tau; });
  rep.taus = std::move(all);
  if (tt.tail && !tt.least_is_bound) {
    rep.notes.push_back("TT eigenvalues beyond " + fmt(*tt.tail) + " are not in the catalog; their exceptional values are not listed");
  }
  return rep;
}

BachVerdict bach_verdict(const ModelSpace& model, const TTSpectrum& tt) {
  if (model.dim() != 4) fail(ErrorKind::UnsupportedDimension, "Bach verdicts need n = 4");
  const Rational r = model.scalar_curvature();
  BachVerdict v;
  const Rational p1 = r / 3;
  const Rational p2 = r / 2;
  const Tail tail = tail_of(tt);
  bool unknown = false;
  for (const auto& p : {p1, p2}) {
    if (is_known(tt, p)) {
      v.rigid = GapStatus::Fails;
      v.notes.push_back(fmt(p) + " is a TT eigenvalue");
    } else if (tail.contains(p)) {
      unknown = true;
    }
  }
  if (v.rigid != GapStatus::Fails) v.rigid = unknown ? GapStatus::Indeterminate : GapStatus::Holds;
  v.minimizer = tt_gap_check(model, tt, Rational(-1, 3));
  v.minimizer.notes.push_back("conformal directions are trivial for the Weyl functional");
  return v;
}

BishopDeduction reverse_bishop(double vol_g, int n, double vol_gt, bool ric_upper_ok, bool ric_lower_ok,
                               double ftilde0_gt) {
  if (!(vol_g > 0) || !(vol_gt > 0)) fail(ErrorKind::InvalidInput, "volumes must be positive");
  check_dim(n, 3);
  if (!ric_upper_ok || !ric_lower_ok) return BishopDeduction::Inconclusive;
  const double c = n * (n - 1.0) * (n - 1.0);
  const double lower = c * std::pow(vol_g, 4.0 / n);
  const double upper = c * std::pow(vol_gt, 4.0 / n);
  const double tol = 1e-12 * std::max({std::fabs(lower), std::fabs(upper), std::fabs(ftilde0_gt)});
  if (ftilde0_gt < lower - tol || ftilde0_gt > upper + tol) return BishopDeduction::Inconclusive;
  if (std::fabs(vol_gt - vol_g) <= 1e-12 * vol_g) return BishopDeduction::EqualityRigidity;
  return BishopDeduction::VolumeAtLeast;
}

RicciBoundFlags ricci_bound_flags(const CurvatureData<double>& cd) {
  const int n = cd.dim();
  Eigen::MatrixXd g(n, n), ric(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      g(i, j) = cd.metric()(i, j);
      ric(i, j) = cd.ricci()(i, j);
    }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(ric, g);
  RicciBoundFlags f;
  f.min_eigenvalue = es.eigenvalues().minCoeff();
  f.max_eigenvalue = es.eigenvalues().maxCoeff();
  const double k = n - 1.0;
  f.upper_ok = f.max_eigenvalue <= k * (1 + 1e-12);
  f.lower_ok = f.min_eigenvalue > -k;
  return f;
}

}  // namespace qcf
