#include "qcf/error.hpp"
#include "qcf/homogeneous.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qcf;

namespace {

MetricFrame<double> random_metric(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::vector<double> a(static_cast<size_t>(n) * n);
  for (auto& x : a) x = u(rng);
  std::vector<double> g(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) g[i * n + j] += a[k * n + i] * a[k * n + j];
      if (i == j) g[i * n + j] += 0.5;
    }
  return MetricFrame<double>(n, g);
}

Sym2<double> random_direction(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  Sym2<double> h(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) h.set(i, j, u(rng));
  return h;
}

double f_tau(const StructureConstants<double>& c, const MetricFrame<double>& g, double tau) {
  const auto q = quadratic_invariants(curvature(c, g));
  return homogeneous_volume(g, 1.0) * (q.ric2 + tau * q.scal2);
}

MetricFrame<double> shifted(const MetricFrame<double>& g, const Sym2<double>& h, double eps) {
  auto v = g.components();
  for (size_t i = 0; i < v.size(); ++i) v[i] += eps * h.components()[i];
  return MetricFrame<double>(g.dim(), v);
}

}  // namespace

TEST(StructureConstants, RejectsJacobiViolation) {
  // [e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e3: the Jacobi sum is e1.
  using SC = StructureConstants<double>;
  EXPECT_THROW(SC::from_brackets(3, {{0, 1, {0, 0, 1}}, {1, 2, {1, 0, 0}}, {2, 0, {0, 0, 1}}}), Error);
}

TEST(StructureConstants, Unimodularity) {
  EXPECT_TRUE(named_algebra<double>("su2").unimodular());
  EXPECT_TRUE(named_algebra<double>("sol").unimodular());
  EXPECT_FALSE(named_algebra<double>("hyperbolic3").unimodular());
}

TEST(LeviCivita, AbelianIsFlat) {
  std::mt19937_64 rng(1);
  const auto c = StructureConstants<double>::abelian(4);
  const auto gm = levi_civita(c, random_metric(4, rng));
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) EXPECT_EQ(gm(k, i, j), 0.0);
}

TEST(LeviCivita, RoundSu2IsHalfTheBracket) {
  const auto gm = levi_civita(named_algebra<Rational>("su2"), MetricFrame<Rational>::identity(3));
  EXPECT_EQ(gm(2, 0, 1), rat(1));
  EXPECT_EQ(gm(2, 1, 0), rat(-1));
  EXPECT_EQ(gm(0, 1, 2), rat(1));
  EXPECT_EQ(gm(1, 2, 0), rat(1));
  EXPECT_EQ(gm(0, 0, 0), rat(0));
}

TEST(LeviCivita, RejectsSingularMetric) {
  EXPECT_THROW(MetricFrame<double>::diagonal({1, 0, 1}), Error);
}

TEST(Curvature, BergerRicciEigenvalues) {
  for (const Rational s2 : {rat(1), rat(1, 4), rat(2, 13), rat(3), rat(9, 5)}) {
    const auto cd = curvature(named_algebra<Rational>("su2"), berger_metric(s2));
    const auto& g = cd.metric();
    // g is diagonal, so the eigenvalues of g^{-1} Ric are Ric_ii / g_ii.
    EXPECT_EQ(cd.ricci()(0, 0) / g(0, 0), 4 - 2 * s2);
    EXPECT_EQ(cd.ricci()(1, 1) / g(1, 1), 4 - 2 * s2);
    EXPECT_EQ(cd.ricci()(2, 2) / g(2, 2), 2 * s2);
    EXPECT_EQ(cd.ricci()(0, 1), 0);
    EXPECT_EQ(cd.ricci()(0, 2), 0);
  }
}

TEST(Curvature, BergerQuadraticInvariants) {
  for (const Rational s2 : {rat(1), rat(1, 4), rat(2, 13), rat(5, 2)}) {
    const auto q = quadratic_invariants(curvature(named_algebra<Rational>("su2"), berger_metric(s2)));
    EXPECT_EQ(q.ric2, 32 - 32 * s2 + 12 * s2 * s2);
    EXPECT_EQ(q.scal2, 64 - 32 * s2 + 4 * s2 * s2);
  }
}

TEST(Curvature, AbelianIsFlat) {
  const auto cd = curvature(StructureConstants<Rational>::abelian(3), MetricFrame<Rational>::identity(3));
  for (const auto& x : cd.riemann().components()) EXPECT_EQ(x, 0);
}

TEST(Curvature, SolvableHyperbolicModelHasCurvatureMinusOne) {
  for (int n = 3; n <= 6; ++n) {
    const auto g = MetricFrame<Rational>::identity(n);
    const auto cd = curvature(named_algebra<Rational>("hyperbolic" + std::to_string(n)), g);
    EXPECT_EQ(cd.riemann(), constant_curvature(g, rat(-1))) << n;
  }
}

TEST(CovariantDerivative, MetricIsParallel) {
  std::mt19937_64 rng(2);
  for (const std::string name : {"su2", "sol", "heisenberg", "su2+R"}) {
    const auto c = named_algebra<double>(name);
    const auto g = random_metric(c.dim(), rng);
    const auto gm = levi_civita(c, g);
    const auto d = invariant_cov_deriv(InvariantTensor<double>::from(Sym2<double>::from_metric(g)), 1, gm);
    EXPECT_LT(d.max_abs(), 1e-12) << name;
  }
}

TEST(CovariantDerivative, RicciParallelOnRoundSu2) {
  const auto c = named_algebra<Rational>("su2");
  const auto g = berger_metric(rat(1));
  const auto cd = curvature(c, g);
  const auto d = invariant_cov_deriv(InvariantTensor<Rational>::from(cd.ricci()), 2, levi_civita(c, g));
  EXPECT_EQ(d.max_abs(), 0);
}

TEST(CovariantDerivative, RejectsOrderThree) {
  const auto c = named_algebra<double>("su2");
  const auto g = MetricFrame<double>::identity(3);
  EXPECT_THROW(invariant_cov_deriv(InvariantTensor<double>::from(Sym2<double>::from_metric(g)), 3, levi_civita(c, g)),
               Error);
}

TEST(Divergence, MetricAndRicciAreDivergenceFree) {
  const auto c = named_algebra<Rational>("su2");
  for (const Rational s2 : {rat(1, 3), rat(2), rat(7, 4)}) {
    const auto g = berger_metric(s2);
    const auto gm = levi_civita(c, g);
    for (const auto& x : divergence(Sym2<Rational>::from_metric(g), gm, g)) EXPECT_EQ(x, 0);
    for (const auto& x : divergence(curvature(c, g).ricci(), gm, g)) EXPECT_EQ(x, 0);
  }
}

TEST(Gradient, DivergenceFreeOnRandomMetrics) {
  std::mt19937_64 rng(4);
  for (const std::string name : {"su2", "sol", "heisenberg", "su2+R", "sol+R"}) {
    const auto c = named_algebra<double>(name);
    for (int trial = 0; trial < 5; ++trial) {
      const auto g = random_metric(c.dim(), rng);
      const auto grad = gradient_F(c, g, 0.3);
      for (double x : divergence(grad, levi_civita(c, g), g)) EXPECT_LT(std::fabs(x), 1e-9) << name;
    }
  }
}

// The directional derivative of F_tau along h equals <grad F_tau, h> Vol.
TEST(Gradient, MatchesFiniteDifferences) {
  std::mt19937_64 rng(6);
  for (const std::string name : {"su2", "sol", "heisenberg", "su2+R", "heisenberg+R"}) {
    const auto c = named_algebra<double>(name);
    for (const double tau : {0.0, -0.4, 1.5}) {
      const auto g = random_metric(c.dim(), rng);
      const auto h = random_direction(c.dim(), rng);
      const double e = 1e-3;
      auto f = [&](double t) { return f_tau(c, shifted(g, h, t), tau); };
      const double d1 = (f(-2 * e) - 8 * f(-e) + 8 * f(e) - f(2 * e)) / (12 * e);
      const double half = (f(-e) - 8 * f(-e / 2) + 8 * f(e / 2) - f(e)) / (6 * e);
      const double extrapolated = (16 * half - d1) / 15;
      const double expected = inner(gradient_F(c, g, tau), h, g) * homogeneous_volume(g, 1.0);
      EXPECT_NEAR(extrapolated, expected, 1e-6 * std::max(1.0, std::fabs(expected))) << name << " tau " << tau;
    }
  }
}

TEST(Gradient, EinsteinSpecializationExact) {
  for (const std::string name : {"su2", "hyperbolic3", "hyperbolic4", "hyperbolic5"}) {
    const auto c = named_algebra<Rational>(name);
    const int n = c.dim();
    const auto g = MetricFrame<Rational>::identity(n);
    const auto cd = curvature(c, g);
    const Rational r2 = cd.scalar() * cd.scalar();
    for (const Rational tau : {rat(0), rat(-1, 3), rat(2, 7)}) {
      const Rational k = (Rational(n - 4, 2 * n * n) + tau * Rational(n - 4, 2 * n)) * r2;
      EXPECT_EQ(gradient_F(c, g, tau), k * Sym2<Rational>::from_metric(g)) << name;
    }
    EXPECT_EQ(gradient_F0(c, g), Rational(n - 4, 2 * n * n) * r2 * Sym2<Rational>::from_metric(g));
    EXPECT_EQ(gradient_S(c, g), Rational(n - 4, 2 * n) * r2 * Sym2<Rational>::from_metric(g));
  }
}

TEST(Gradient, ParallelFormulaAgreesWithStructureConstants) {
  const auto c = named_algebra<Rational>("hyperbolic4");
  const auto g = MetricFrame<Rational>::identity(4);
  for (const Rational tau : {rat(0), rat(-1, 2), rat(3)})
    EXPECT_EQ(gradient_F_parallel(curvature(c, g), tau), gradient_F(c, g, tau));
}

// Non-Einstein Berger critical point s^2 = 2(1+2tau)/(3+tau) at tau = -2/5.
TEST(Gradient, NormalizedGradientVanishesAtSecondaryBergerPoint) {
  const auto c = named_algebra<Rational>("su2");
  const auto ng = normalized_gradient(c, berger_metric(rat(2, 13)), rat(-2, 5));
  for (const auto& x : ng.components()) EXPECT_EQ(x, 0);
  // A nearby metric is not critical.
  const auto off = normalized_gradient(c, berger_metric(rat(1, 6)), rat(-2, 5));
  EXPECT_GT(relative_norm(off, berger_metric(rat(1, 6))), 1e-3);
}

TEST(Bach, VanishesOnEinsteinFourManifolds) {
  for (const auto& rm : {constant_curvature(MetricFrame<Rational>::identity(4), rat(1)),
                         product_constant_curvature(2, rat(1), 2, rat(1)), complex_space_form(2, rat(1))}) {
    const auto b = bach_tensor(decompose(rm, MetricFrame<Rational>::identity(4)));
    for (const auto& x : b.components()) EXPECT_EQ(x, 0);
  }
  const auto hyp = bach_tensor(named_algebra<Rational>("hyperbolic4"), MetricFrame<Rational>::identity(4));
  for (const auto& x : hyp.components()) EXPECT_EQ(x, 0);
}

TEST(Bach, TraceAndDivergenceFreeOnNonEinsteinMetrics) {
  std::mt19937_64 rng(8);
  for (const std::string name : {"su2+R", "sol+R", "heisenberg+R"}) {
    const auto c = named_algebra<double>(name);
    for (int trial = 0; trial < 4; ++trial) {
      const auto g = random_metric(4, rng);
      const auto b = bach_tensor(c, g);
      const double scale = std::max(1.0, relative_norm(b, g));
      EXPECT_LT(std::fabs(trace(b, g)), 1e-10 * scale) << name;
      for (double x : divergence(b, levi_civita(c, g), g)) EXPECT_LT(std::fabs(x), 1e-9 * scale) << name;
    }
  }
}

TEST(Bach, RejectsOtherDimensions) {
  try {
    bach_tensor(named_algebra<double>("su2"), MetricFrame<double>::identity(3));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedDimension);
  }
}

TEST(Volume, ReferenceVolumeIsRoundThreeSphere) {
  EXPECT_DOUBLE_EQ(su2_reference_volume(), 2 * oracle::pi2());
  EXPECT_NEAR(homogeneous_volume(berger_metric(0.25), su2_reference_volume()), oracle::pi2(), 1e-12);
}
