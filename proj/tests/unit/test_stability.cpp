#include "qcf/error.hpp"
#include "qcf/homogeneous.hpp"
#include "qcf/jacobi.hpp"
#include "qcf/stability.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qcf;

namespace {

void expect_interval(const TauInterval& iv, std::optional<Rational> lo, std::optional<Rational> hi, bool lo_open,
                     bool hi_open, const std::string& label) {
  EXPECT_FALSE(iv.empty) << label;
  EXPECT_EQ(iv.lo.value, lo) << label;
  EXPECT_EQ(iv.hi.value, hi) << label;
  EXPECT_EQ(iv.lo.open, lo_open) << label;
  EXPECT_EQ(iv.hi.open, hi_open) << label;
}

Rational lichnerowicz_threshold(int n) { return Rational(4 - 3 * n, 2 * n * (n - 1)); }

// Random tau in (lo, hi), with infinite ends clipped to +-3.
Rational random_inside(const TauInterval& iv, std::mt19937_64& rng) {
  const Rational lo = iv.lo.value.value_or(rat(-3));
  const Rational hi = iv.hi.value.value_or(rat(3));
  std::uniform_int_distribution<int> k(1, 999);
  return lo + (hi - lo) * Rational(k(rng), 1000);
}

}  // namespace

TEST(Interval, ThreeSphere) {
  expect_interval(stability_interval(ModelSpace::round_sphere(3)), rat(-3, 8), rat(1, 3), true, true, "S^3");
}

TEST(Interval, RoundSpheres) {
  for (int n = 4; n <= 8; ++n)
    expect_interval(stability_interval(ModelSpace::round_sphere(n)), lichnerowicz_threshold(n), Rational(2, n * (n - 1)),
                    true, true, "S^" + std::to_string(n));
}

TEST(Interval, ComplexProjective) {
  expect_interval(stability_interval(ModelSpace::complex_projective(2)), rat(-1, 3), rat(1, 6), true, true, "CP^2");
  for (int m = 2; m <= 4; ++m)
    expect_interval(stability_interval(ModelSpace::complex_projective(m)), Rational(2 - 3 * m, 2 * m * (2 * m - 1)),
                    Rational(1, m * (m + 1)), true, true, "CP^m");
}

TEST(Interval, ProductSpheres) {
  const auto iv = stability_interval(ModelSpace::product_spheres(2));
  expect_interval(iv, rat(-1, 3), rat(0), true, true, "S^2xS^2");
  EXPECT_EQ(iv.upper_optimality, "unknown");
  for (int m = 2; m <= 4; ++m)
    expect_interval(stability_interval(ModelSpace::product_spheres(m)), Rational(2 - 3 * m, 2 * m * (2 * m - 1)),
                    Rational(2 - m, 2 * m * (m - 1)), true, true, "S^mxS^m");
}

TEST(Interval, Hyperbolic) {
  expect_interval(stability_interval(ModelSpace::hyperbolic(3)), rat(-1, 3), std::nullopt, true, true, "H^3");
  expect_interval(stability_interval(ModelSpace::hyperbolic(4)), rat(-1, 3), std::nullopt, true, true, "H^4");
  expect_interval(stability_interval(ModelSpace::hyperbolic(6)), rat(-7, 30), rat(-1, 6), true, false, "H^6");
  for (int n = 5; n <= 8; ++n)
    expect_interval(stability_interval(ModelSpace::hyperbolic(n)), lichnerowicz_threshold(n), Rational(-1, n), true,
                    false, "H^n");
}

TEST(Interval, HyperbolicWithFirstEigenvalue) {
  const auto m = ModelSpace::hyperbolic(6);
  const auto tt = builtin_tt_data(m);
  // lambda1 = 1/10 fails the bound (n-4)/(2(n-1)) (-R) = 6; the upper end
  // moves to where the conformal polynomial's second factor turns.
  expect_interval(stability_interval(m, tt, rat(1, 10)), rat(-7, 30), rat(-97, 590), true, true, "H^6 small lambda1");
  expect_interval(stability_interval(m, tt, rat(7)), rat(-7, 30), std::nullopt, true, true, "H^6 large lambda1");
}

TEST(Interval, FlatTorusIsNotStrict) {
  const auto iv = stability_interval(ModelSpace::flat_torus(3));
  expect_interval(iv, rat(-3, 8), std::nullopt, true, true, "T^3");
  EXPECT_FALSE(iv.strict);
}

TEST(Interval, QuotientMatchesSphere) {
  expect_interval(stability_interval(ModelSpace::spherical_quotient(3)), rat(-3, 8), rat(1, 3), true, true, "RP^3");
}

TEST(Interval, ProvenanceIsRecorded) {
  const auto iv = stability_interval(ModelSpace::round_sphere(5));
  EXPECT_FALSE(iv.lo.provenance.empty());
  EXPECT_FALSE(iv.hi.provenance.empty());
  EXPECT_TRUE(iv.contains(rat(0)));
  EXPECT_FALSE(iv.contains(rat(1, 10)));
}

TEST(TTGap, SpheresPassBelowUpperEndpoint) {
  for (int n = 3; n <= 8; ++n) {
    const auto m = ModelSpace::round_sphere(n);
    EXPECT_TRUE(tt_gap_check(m, Rational(2, n * (n - 1)) - Rational(1, 1000)).passes());
    const auto at = tt_gap_check(m, Rational(2, n * (n - 1)));
    EXPECT_EQ(at.kind, VerdictKind::FailsTT);
    EXPECT_EQ(at.witness, rat(4 * n));
  }
}

TEST(TTGap, ProductEndpointHitFails) {
  const auto v = tt_gap_check(ModelSpace::product_spheres(2), rat(0));
  EXPECT_EQ(v.kind, VerdictKind::FailsTT);
  EXPECT_EQ(v.witness, rat(4));
}

TEST(TTGap, HyperbolicIsBoundOnly) {
  EXPECT_EQ(tt_gap_check(ModelSpace::hyperbolic(4), rat(0)).kind, VerdictKind::StableBoundOnly);
}

TEST(TTGap, TorusParallelTensorsFail) {
  const auto v = tt_gap_check(ModelSpace::flat_torus(3), rat(0));
  EXPECT_EQ(v.kind, VerdictKind::FailsTT);
  EXPECT_EQ(v.witness, rat(0));
}

TEST(ConformalGap, Branches) {
  EXPECT_TRUE(conformal_gap_check(ModelSpace::round_sphere(3), rat(-1, 3)).passes());
  EXPECT_EQ(conformal_gap_check(ModelSpace::round_sphere(3), rat(-1, 2)).kind, VerdictKind::FailsConformal);
  EXPECT_TRUE(conformal_gap_check(ModelSpace::flat_torus(4), rat(-1, 4)).passes());
  EXPECT_EQ(conformal_gap_check(ModelSpace::round_sphere(4), rat(-1, 3)).kind, VerdictKind::FailsConformal);
}

// Between the two thresholds for n = 5 (tau2 = -5/16 < tau < tau1 = -11/40)
// no decision branch applies.
TEST(ConformalGap, GapBetweenThresholdsIsIndeterminate) {
  const auto m = ModelSpace::round_sphere(5);
  EXPECT_EQ(conformal_gap_check(m, rat(-3, 10)).kind, VerdictKind::Indeterminate);
  EXPECT_EQ(assess_stability(m, builtin_tt_data(m), rat(-3, 10)).kind, VerdictKind::Indeterminate);
}

// tau = -7/20 lies below tau2 = -5/16, where the function eigenvalue 12 gives
// a negative Jacobi value.
TEST(ConformalGap, BelowDegenerateTauFailsWithWitness) {
  const auto m = ModelSpace::round_sphere(5);
  const auto v = conformal_gap_check(m, rat(-7, 20));
  EXPECT_EQ(v.kind, VerdictKind::FailsConformal);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(*v.witness, rat(12));
  EXPECT_LT(conformal_jacobi(5, rat(20), Coupling::tau(rat(-7, 20)), rat(12)), 0);
}

TEST(ConformalGap, HyperbolicNeedsFirstEigenvalue) {
  const auto m = ModelSpace::hyperbolic(6);
  EXPECT_TRUE(conformal_gap_check(m, rat(-1, 5)).passes());
  try {
    conformal_gap_check(m, rat(0));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InsufficientData);
    EXPECT_NE(std::string(e.what()).find("lambda1"), std::string::npos);
  }
  EXPECT_TRUE(conformal_gap_check(m, rat(0), rat(7)).passes());
  EXPECT_EQ(assess_stability(m, builtin_tt_data(m), rat(0)).kind, VerdictKind::Indeterminate);
}

TEST(Thresholds, ConformalThreshold) {
  EXPECT_EQ(conformal_threshold(3), rat(-5, 12));
  EXPECT_EQ(conformal_threshold(5), rat(-11, 40));
}

// Inside the interval both parts pass; outside the closed interval at least
// one part fails or is indeterminate, with a witness when data suffices.
TEST(StabilityProperty, RandomTauInsideAndOutside) {
  std::mt19937_64 rng(31);
  for (const auto& m : Catalog::standard_models()) {
    const auto tt = builtin_tt_data(m);
    const auto iv = stability_interval(m, tt);
    ASSERT_FALSE(iv.empty) << m.label();
    for (int i = 0; i < 50; ++i) {
      const Rational t = random_inside(iv, rng);
      // A non-strict interval (flat tori) certifies only the conformal part.
      if (iv.strict) EXPECT_TRUE(tt_gap_check(m, tt, t).passes()) << m.label() << " " << to_string(t);
      EXPECT_TRUE(conformal_gap_check(m, t).passes()) << m.label() << " " << to_string(t);
    }
    std::uniform_int_distribution<int> k(1, 2000);
    for (int i = 0; i < 50; ++i) {
      const bool below = iv.lo.value && (!iv.hi.value || i % 2 == 0);
      if (!iv.lo.value && !iv.hi.value) break;
      const Rational t = below ? *iv.lo.value - Rational(k(rng), 1000) : *iv.hi.value + Rational(k(rng), 1000);
      StabilityVerdict v;
      try {
        v = assess_stability(m, tt, t);
      } catch (const Error& e) {
        ADD_FAILURE() << m.label() << ": " << e.what();
        continue;
      }
      EXPECT_FALSE(v.passes()) << m.label() << " " << to_string(t);
      // Conformal witnesses need a function spectrum (none for CP^m or H^n).
      if (v.kind == VerdictKind::FailsTT || (v.kind == VerdictKind::FailsConformal && has_function_spectrum(m)))
        EXPECT_TRUE(v.witness.has_value()) << m.label();
    }
  }
}

TEST(Rigidity, ExamplesFromSpectra) {
  const auto s3 = rigidity_exceptional_taus(ModelSpace::round_sphere(3), builtin_tt_data(ModelSpace::round_sphere(3)), 1);
  ASSERT_FALSE(s3.taus.empty());
  EXPECT_EQ(s3.taus[0].tau, rat(1, 3));

  const auto cp = ModelSpace::complex_projective(2);
  EXPECT_EQ(rigidity_exceptional_taus(cp, builtin_tt_data(cp), 1).taus[0].tau, rat(1, 6));

  const auto pr = ModelSpace::product_spheres(2);
  const auto rep = rigidity_exceptional_taus(pr, builtin_tt_data(pr), 5);
  ASSERT_EQ(rep.taus.size(), 2u);
  EXPECT_EQ(rep.taus[0].tau, rat(-1, 2));
  EXPECT_EQ(rep.taus[1].tau, rat(0));
  EXPECT_NE(rep.taus[0].kernel_note.find("g1 - g2"), std::string::npos);
  EXPECT_NE(rep.taus[1].kernel_note.find("9-dimensional"), std::string::npos);
}

TEST(Rigidity, SphereFormulaForHigherEigenvalues) {
  // tau_i = (mu_i - 4(n-1)) / (2n(n-1))
  for (int n = 3; n <= 8; ++n)
    for (const Rational mu : {rat(4 * n), rat(50), rat(97, 2)})
      EXPECT_EQ(exceptional_tau(n, rat(n * (n - 1)), mu), (mu - 4 * (n - 1)) / (2 * n * (n - 1)));
}

TEST(Rigidity, HyperbolicFormulaNeedsSuppliedEigenvalues) {
  const auto m = ModelSpace::hyperbolic(4);
  try {
    rigidity_exceptional_taus(m, builtin_tt_data(m), 3);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InsufficientData);
  }
  const auto rep = rigidity_exceptional_taus(m, builtin_tt_data(m), 3, {rat(5)});
  ASSERT_EQ(rep.taus.size(), 1u);
  // -(mu + 4(n-1)) / (2n(n-1))
  EXPECT_EQ(rep.taus[0].tau, -(rat(5) + 12) / 24);
}

TEST(RigidityProperty, ExceptionalValuesAreJacobiZeros) {
  for (const auto& m : Catalog::standard_models()) {
    const auto tt = builtin_tt_data(m);
    if (tt.least_is_bound) continue;
    const auto rep = rigidity_exceptional_taus(m, tt, 5, {rat(100), rat(301, 3)});
    for (size_t i = 0; i < rep.taus.size(); ++i) {
      const auto& e = rep.taus[i];
      EXPECT_EQ(tt_jacobi(m.dim(), m.scalar_curvature(), Coupling::tau(e.tau), e.mu), 0) << m.label();
      if (i > 0) EXPECT_LT(rep.taus[i - 1].tau, e.tau) << m.label();
    }
  }
}

TEST(RigidityProperty, SphereUpperEndpointIsFirstExceptionalValue) {
  for (int n = 3; n <= 8; ++n) {
    const auto m = ModelSpace::round_sphere(n);
    const auto tt = builtin_tt_data(m);
    const auto rep = rigidity_exceptional_taus(m, tt, 1);
    EXPECT_EQ(stability_interval(m, tt).hi.value, rep.taus[0].tau);
    EXPECT_EQ(rep.taus[0].tau, Rational(2, n * (n - 1)));
  }
}

TEST(RigidityProperty, MoreEigenvaluesNeverShrinkTheList) {
  const auto m = ModelSpace::round_sphere(4);
  const auto tt = builtin_tt_data(m);
  std::vector<Rational> mus;
  size_t previous = rigidity_exceptional_taus(m, tt, 10, mus).taus.size();
  for (int k = 1; k <= 6; ++k) {
    mus.push_back(rat(16 + 7 * k));
    const size_t now = rigidity_exceptional_taus(m, tt, 10, mus).taus.size();
    EXPECT_GE(now, previous);
    previous = now;
  }
}

TEST(ConformalKernel, DimensionFourAtBachCouplingHolds) {
  EXPECT_EQ(conformal_kernel_status(ModelSpace::round_sphere(4), rat(-1, 3), std::nullopt), GapStatus::Holds);
}

TEST(Bach, Verdicts) {
  for (const auto& m : {ModelSpace::round_sphere(4), ModelSpace::spherical_quotient(4), ModelSpace::complex_projective(2),
                        ModelSpace::product_spheres(2)}) {
    const auto b = bach_verdict(m, builtin_tt_data(m));
    EXPECT_EQ(b.rigid, GapStatus::Holds) << m.label();
  }
  const auto s4 = bach_verdict(ModelSpace::round_sphere(4), builtin_tt_data(ModelSpace::round_sphere(4)));
  EXPECT_EQ(s4.minimizer.kind, VerdictKind::StrictlyStable);
}

TEST(Bach, CorruptedSpectrumBreaksRigidity) {
  TTSpectrum tt = builtin_tt_data(ModelSpace::round_sphere(4));
  tt.least = rat(4);
  tt.known = {rat(4)};
  tt.tail = rat(4);
  EXPECT_EQ(bach_verdict(ModelSpace::round_sphere(4), tt).rigid, GapStatus::Fails);
}

TEST(ReverseBishop, Examples) {
  const double vol = 2 * oracle::pi2();
  const double bound = 12 * std::pow(vol, 4.0 / 3);
  // Round sphere of radius 1.1: F~_0 is scale invariant.
  EXPECT_EQ(reverse_bishop(vol, 3, 1.331 * vol, true, true, bound), BishopDeduction::VolumeAtLeast);
  EXPECT_EQ(reverse_bishop(vol, 3, vol, true, true, bound), BishopDeduction::EqualityRigidity);
  EXPECT_EQ(reverse_bishop(vol, 3, 0.9 * vol, false, true, bound), BishopDeduction::Inconclusive);
}

TEST(ReverseBishop, BergerRicciFlags) {
  // Eigenvalue 4 - 2 s^2 = 2.38 > 2 at s = 0.9.
  const auto flags = ricci_bound_flags(curvature(named_algebra<double>("su2"), berger_metric(0.81)));
  EXPECT_FALSE(flags.upper_ok);
  EXPECT_TRUE(flags.lower_ok);
  EXPECT_NEAR(flags.max_eigenvalue, 2.38, 1e-12);
  EXPECT_NEAR(flags.min_eigenvalue, 1.62, 1e-12);
}
