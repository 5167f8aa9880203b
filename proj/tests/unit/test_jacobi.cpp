#include "qcf/error.hpp"
#include "qcf/functionals.hpp"
#include "qcf/jacobi.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qcf;

namespace {

Coupling tau(const Rational& t) { return Coupling::tau(t); }

std::vector<Rational> unit(int n, int k) {
  std::vector<Rational> v(n, rat(0));
  v[k] = 1;
  return v;
}

}  // namespace

TEST(TTJacobi, Examples) {
  EXPECT_EQ(tt_jacobi(3, rat(6), tau(rat(1, 3)), rat(12)), 0);
  EXPECT_EQ(tt_jacobi(4, rat(24), tau(rat(0)), rat(32)), rat(80));
  for (const Rational t : {rat(-1), rat(0), rat(5, 7)}) EXPECT_EQ(tt_jacobi(5, rat(20), tau(t), rat(8)), 0);
}

TEST(TTJacobi, SquareAtMinusOneOverN) {
  const auto p = tt_polynomial(4, rat(12), tau(rat(-1, 4)));
  // 1/2 (6 - mu)^2
  EXPECT_EQ(p.c2, rat(1, 2));
  EXPECT_EQ(p.c1, rat(-6));
  EXPECT_EQ(p.c0, rat(18));
}

TEST(TTJacobiProperty, FactorizationOnRandomInputs) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> dim(3, 8);
  for (int i = 0; i < 200; ++i) {
    const int n = dim(rng);
    const Rational r = oracle::random_rational(rng, 60, 7);
    const Rational t = oracle::random_rational(rng, 20, 9);
    const Rational mu = oracle::random_rational(rng, 80, 5);
    EXPECT_EQ(tt_jacobi(n, r, tau(t), mu), oracle::tt_product(n, r, t, mu));
  }
}

// Normalized minus unnormalized TT operators differ by -(n-4)/(2n^2) R^2 (1 + n tau).
TEST(TTJacobiProperty, NormalizationOffset) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 100; ++i) {
    const int n = 3 + i % 6;
    const Rational r = oracle::random_rational(rng, 40, 5);
    const Rational t = oracle::random_rational(rng, 10, 7);
    const auto a = tt_polynomial(n, r, tau(t));
    const auto b = tt_polynomial_unnormalized(n, r, tau(t));
    EXPECT_EQ(a.c2, b.c2);
    EXPECT_EQ(a.c1, b.c1);
    EXPECT_EQ(a.c0 - b.c0, -Rational(n - 4, 2 * n * n) * r * r * (1 + n * t));
  }
}

TEST(TTJacobiProperty, UnnormalizedCoefficientsAtTauZero) {
  for (int n = 3; n <= 8; ++n) {
    const Rational r = rat(n * (n - 1));
    const auto b = tt_polynomial_unnormalized(n, r, tau(rat(0)));
    EXPECT_EQ(b.c2, rat(1, 2));
    EXPECT_EQ(b.c1, -Rational(3, n) * r);
    EXPECT_EQ(b.c0, Rational(n + 4, 2 * n * n) * r * r);
  }
}

TEST(TTJacobiProperty, ScalarSquaredIsTheLeadingTauCoefficient) {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 50; ++i) {
    const int n = 3 + i % 6;
    const Rational r = oracle::random_rational(rng, 40, 5);
    const auto s = tt_polynomial(n, r, Coupling::scalar_squared());
    const auto p1 = tt_polynomial(n, r, tau(rat(1)));
    const auto p0 = tt_polynomial(n, r, tau(rat(0)));
    EXPECT_EQ(s.c2, p1.c2 - p0.c2);
    EXPECT_EQ(s.c1, p1.c1 - p0.c1);
    EXPECT_EQ(s.c0, p1.c0 - p0.c0);
  }
}

TEST(ConformalJacobi, Examples) {
  EXPECT_EQ(conformal_jacobi(3, rat(6), tau(rat(0)), rat(8)), rat(100));
  for (int n = 3; n <= 8; ++n) {
    const Rational r = rat(n * (n - 1));
    EXPECT_EQ(conformal_jacobi(n, r, tau(rat(2, 9)), r / (n - 1)), 0);
  }
  // Conformal invariance in dimension four at tau = -1/3.
  const auto p = conformal_polynomial(4, rat(12), tau(rat(-1, 3)));
  EXPECT_EQ(p.c2, 0);
  EXPECT_EQ(p.c1, 0);
  EXPECT_EQ(p.c0, 0);
}

TEST(ConformalJacobiProperty, FactorizationOnRandomInputs) {
  std::mt19937_64 rng(25);
  std::uniform_int_distribution<int> dim(3, 8);
  for (int i = 0; i < 200; ++i) {
    const int n = dim(rng);
    const Rational r = oracle::random_rational(rng, 60, 7);
    const Rational t = oracle::random_rational(rng, 20, 9);
    const Rational lambda = oracle::random_rational(rng, 80, 5);
    EXPECT_EQ(conformal_jacobi(n, r, tau(t), lambda), oracle::conformal_product(n, r, t, lambda));
  }
}

// The tau -> infinity limit: ((n-1) lambda - R)(2(n-1) lambda + (n-4) R).
TEST(ConformalJacobiProperty, ScalarSquaredLimit) {
  std::mt19937_64 rng(26);
  for (int i = 0; i < 50; ++i) {
    const int n = 3 + i % 6;
    const Rational r = oracle::random_rational(rng, 40, 5);
    const auto s = conformal_polynomial(n, r, Coupling::scalar_squared());
    const auto p1 = conformal_polynomial(n, r, tau(rat(1)));
    const auto p0 = conformal_polynomial(n, r, tau(rat(0)));
    EXPECT_EQ(s.c2, p1.c2 - p0.c2);
    EXPECT_EQ(s.c1, p1.c1 - p0.c1);
    EXPECT_EQ(s.c0, p1.c0 - p0.c0);
    for (const Rational lambda : {rat(0), rat(3), rat(-7, 2)})
      EXPECT_EQ(s(lambda), ((n - 1) * lambda - r) * (2 * (n - 1) * lambda + (n - 4) * r));
  }
}

TEST(ConformalJacobiProperty, LeadingCoefficientVanishesAtDegenerateTau) {
  for (int n = 3; n <= 8; ++n) EXPECT_EQ(conformal_polynomial(n, rat(7), tau(degenerate_tau(n))).c2, 0);
}

// Both f''(1) along the Berger family and the S^3 TT Jacobi value at mu = 12
// are positive multiples of 1/3 - tau.
TEST(JacobiCrossCheck, BergerSecondDerivativeSign) {
  for (int k = 0; k < 10; ++k) {
    const Rational t = rat(-1) + Rational(k, 6);
    const double tv = to_double(t);
    auto f = [tv](double s) { return berger_curve(tv, s); };
    const double d2 = derivative(f, 1.0, 2).value;
    const Rational j = tt_jacobi(3, rat(6), tau(t), rat(12));
    if (j == 0) {
      EXPECT_LT(std::fabs(d2), 1e-6);
    } else {
      EXPECT_EQ(d2 > 0, j > 0) << to_string(t);
    }
  }
}

TEST(DegenerateTau, Values) {
  EXPECT_EQ(degenerate_tau(3), rat(-3, 8));
  EXPECT_EQ(degenerate_tau(4), rat(-1, 3));
  EXPECT_EQ(degenerate_tau(5), rat(-5, 16));
}

TEST(Symbol, TraceFreeOrthogonalInputIsHalved) {
  const auto op = gauged_symbol(4, rat(0), unit(4, 0));
  Sym2<Rational> h(4);
  h.set(1, 2, rat(1));
  EXPECT_EQ(op.apply(h), Rational(1, 2) * h);
}

TEST(SymbolProperty, TraceFreeOrthogonalInvariant) {
  // For trace-free h with h(xi, .) = 0 the output is 1/2 |xi|^4 h.
  const std::vector<Rational> xi{rat(1), rat(2), rat(0), rat(0), rat(0)};
  const Rational xi4 = 25;
  for (const Rational t : {rat(0), rat(-1, 7), rat(3)}) {
    const auto op = gauged_symbol(5, t, xi);
    Sym2<Rational> h(5);
    h.set(2, 3, rat(1));
    h.set(2, 2, rat(1));
    h.set(4, 4, rat(-1));
    EXPECT_EQ(op.apply(h), Rational(1, 2) * xi4 * h);
  }
}

TEST(Symbol, MetricInKernelAtDegenerateTau) {
  const auto op = gauged_symbol(4, rat(-1, 3), unit(4, 0));
  const auto out = op.apply(Sym2<Rational>::from_metric(MetricFrame<Rational>::identity(4)));
  for (const auto& x : out.components()) EXPECT_EQ(x, 0);
}

TEST(Symbol, RejectsZeroCovector) {
  EXPECT_THROW(gauged_symbol(3, rat(0), std::vector<Rational>(3, rat(0))), Error);
}

TEST(Symbol, MatrixColumnsAreImages) {
  const std::vector<Rational> xi{rat(1), rat(-2), rat(3)};
  const auto op = gauged_symbol(3, rat(1, 5), xi);
  const auto m = op.matrix();
  const auto basis = sym2_basis(3);
  const int d = op.domain_dim();
  for (int b = 0; b < d; ++b) {
    Sym2<Rational> h(3);
    h.set(basis[b].first, basis[b].second, rat(1));
    const auto img = op.apply(h);
    for (int r = 0; r < d; ++r) EXPECT_EQ(m[r * d + b], img(basis[r].first, basis[r].second));
  }
}

TEST(SymbolInjectivity, Examples) {
  const auto a = symbol_injectivity(3, rat(0), 100, 0);
  EXPECT_TRUE(a.injective);
  EXPECT_GT(a.min_singular_value, 1e-6);

  const auto b = symbol_injectivity(5, rat(-5, 16), 10, 0);
  EXPECT_FALSE(b.injective);
  EXPECT_TRUE(b.metric_in_kernel);
  EXPECT_TRUE(b.degenerate_tau);
  ASSERT_EQ(b.kernel_basis.size(), 1u);

  const auto c = symbol_injectivity(4, rat(-1, 3), 50, 0, true);
  EXPECT_TRUE(c.injective);
}

TEST(SymbolInjectivity, DeterministicForSeed) {
  const auto a = symbol_injectivity(6, rat(1, 7), 20, 42);
  const auto b = symbol_injectivity(6, rat(1, 7), 20, 42);
  EXPECT_EQ(a.min_singular_value, b.min_singular_value);
}

TEST(SymbolInjectivity, InjectiveAwayFromDegenerateTau) {
  std::mt19937_64 rng(27);
  for (int i = 0; i < 30; ++i) {
    const int n = 3 + i % 6;
    Rational t = oracle::random_rational(rng, 30, 20);
    if (abs(t - degenerate_tau(n)) <= Rational(1, 20)) t += 1;
    const auto v = symbol_injectivity(n, t, 5, i);
    EXPECT_TRUE(v.injective) << n << " " << to_string(t);
    EXPECT_GT(v.min_singular_value, 1e-6);
  }
}

TEST(ProbeSymbol, KernelIsTheMetricDirection) {
  const auto p = probe_symbol(3, rat(-3, 8), {rat(2), rat(1), rat(-1)});
  EXPECT_EQ(p.rank, 5);
  ASSERT_EQ(p.kernel.size(), 1u);
  const auto& k = p.kernel[0];
  // Proportional to the identity.
  EXPECT_NE(k[0], 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(k[i * 3 + j], i == j ? k[0] : rat(0));
}

TEST(ConformalKilling, ThreeDimensions) {
  const auto v = conformal_killing_symbol(3, unit(3, 0));
  EXPECT_TRUE(v.injective);
  ASSERT_EQ(v.eigenvalues.size(), 3u);
  EXPECT_NEAR(v.eigenvalues[0], 1.0, 1e-14);
  EXPECT_NEAR(v.eigenvalues[1], 1.0, 1e-14);
  EXPECT_NEAR(v.eigenvalues[2], 4.0 / 3, 1e-14);
}

// det = |xi|^{2n} (2 - 2/n): nonzero for every n >= 2, including n = 2.
TEST(ConformalKilling, DeterminantClosedForm) {
  for (int n = 2; n <= 8; ++n) {
    std::vector<Rational> xi(n, rat(0));
    xi[0] = 1;
    xi[n - 1] = 1;
    const Rational xi2 = 2;
    Rational expected = 2 - Rational(2, n);
    for (int k = 0; k < n; ++k) expected *= xi2;
    const auto v = conformal_killing_symbol(n, xi);
    EXPECT_EQ(v.determinant, expected) << n;
    EXPECT_TRUE(v.injective) << n;
  }
}

TEST(ConformalKilling, OrthogonalFormsScaleByXiSquared) {
  // Eigenvalue |xi|^2 has multiplicity n - 1 (forms orthogonal to xi).
  const auto v = conformal_killing_symbol(5, {rat(0), rat(3), rat(4), rat(0), rat(0)});
  int count = 0;
  for (double e : v.eigenvalues) count += std::fabs(e - 25.0) < 1e-12;
  EXPECT_EQ(count, 4);
}

TEST(ExactLinearAlgebra, RankAndKernel) {
  // Rows (1 2 3), (2 4 6), (1 0 1).
  const std::vector<Rational> m{rat(1), rat(2), rat(3), rat(2), rat(4), rat(6), rat(1), rat(0), rat(1)};
  EXPECT_EQ(exact_rank(m, 3, 3), 2);
  const auto k = exact_kernel(m, 3, 3);
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0][0] + 2 * k[0][1] + 3 * k[0][2], 0);
  EXPECT_EQ(k[0][0] + k[0][2], 0);
}
