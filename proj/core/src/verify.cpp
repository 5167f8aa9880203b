#include "qcf/verify.hpp"

#include "qcf/error.hpp"
#include "qcf/functionals.hpp"
#include "qcf/homogeneous.hpp"
#include "qcf/jacobi.hpp"
#include "qcf/stability.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <thread>

namespace qcf {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string rs(const Rational& x) { return to_string(x); }

// Collects sub-check failures and summary strings for one criterion.
struct Check {
  std::vector<std::string> failures;
  std::vector<std::string> measured;
  std::vector<std::string> expected;

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

using Body = std::function<void(const Catalog&, std::uint64_t, Check&)>;

struct Criterion {
  CriterionInfo info;
  Body body;
};

std::mt19937_64 rng_for(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

Rational random_rational(std::mt19937_64& rng, int max_den, int max_abs_num) {
  std::uniform_int_distribution<int> den(1, max_den);
  const int q = den(rng);
  std::uniform_int_distribution<int> nu(-max_abs_num * q, max_abs_num * q);
  return Rational(nu(rng), q);
}

std::string interval_text(const TauInterval& iv) {
  if (iv.empty) return "empty";
  std::string s = iv.lo.open ? "(" : "[";
  s += iv.lo.value ? rs(*iv.lo.value) : "-inf";
  s += ", ";
  s += iv.hi.value ? rs(*iv.hi.value) : "+inf";
  s += iv.hi.open ? ")" : "]";
  return s;
}

// ---- 1: stability intervals ----

void check_intervals(const Catalog& cat, std::uint64_t, Check& c) {
  struct Expect {
    ModelSpace model;
    std::optional<Rational> lo;
    std::optional<Rational> hi;
    bool hi_open;
  };
  std::vector<Expect> cases;
  for (int n = 3; n <= 8; ++n) {
    const Rational lo = n == 3 ? Rational(-3, 8) : Rational(4 - 3 * n, 2 * n * (n - 1));
    cases.push_back({ModelSpace::round_sphere(n), lo, Rational(2, n * (n - 1)), true});
  }
  for (int m = 2; m <= 4; ++m) {
    cases.push_back({ModelSpace::complex_projective(m), Rational(2 - 3 * m, 2 * m * (2 * m - 1)),
                     Rational(1, m * (m + 1)), true});
  }
  for (int m = 2; m <= 4; ++m) {
    cases.push_back({ModelSpace::product_spheres(m), Rational(2 - 3 * m, 2 * m * (2 * m - 1)),
                     Rational(2 - m, 2 * m * (m - 1)), true});
  }
  for (int n = 3; n <= 4; ++n) cases.push_back({ModelSpace::hyperbolic(n), Rational(-1, 3), std::nullopt, true});
  for (int n = 5; n <= 8; ++n) {
    cases.push_back({ModelSpace::hyperbolic(n), Rational(4 - 3 * n, 2 * n * (n - 1)), Rational(-1, n), false});
  }
  for (const auto& e : cases) {
    const TauInterval iv = stability_interval(e.model, cat.tt_data(e.model));
    TauInterval want;
    want.lo.value = e.lo;
    want.hi.value = e.hi;
    want.hi.open = e.hi_open;
    const bool ok = !iv.empty && iv.lo.value == e.lo && iv.lo.open && iv.hi.value == e.hi && iv.hi.open == e.hi_open;
    c.measured.push_back(e.model.label() + " " + interval_text(iv));
    c.expected.push_back(e.model.label() + " " + interval_text(want));
    c.require(ok, e.model.label() + ": got " + interval_text(iv) + ", want " + interval_text(want));
  }
}

// ---- 2: Berger derivatives ----

void check_berger_derivatives(const Catalog&, std::uint64_t, Check& c) {
  auto curve_at = [](double tau) { return [tau](double s) { return berger_curve(tau, s); }; };
  DerivativeOptions opts;
  opts.domain_lower = 0.0;
  const auto f = curve_at(1.0 / 3.0);
  const auto d1 = derivative(f, 1.0, 1, opts);
  const auto d2 = derivative(f, 1.0, 2, opts);
  const auto d3 = derivative(f, 1.0, 3, opts);
  const double want3 = 5120.0 / 9.0;
  c.measured.push_back("tau=1/3: d1=" + sci(d1.value) + " d2=" + sci(d2.value) + " d3=" + num(d3.value));
  c.expected.push_back("tau=1/3: |d1|<1e-8 |d2|<1e-6 d3=5120/9 within 0.1%");
  c.require(std::fabs(d1.value) < 1e-8, "tau=1/3 d1 = " + sci(d1.value));
  c.require(std::fabs(d2.value) < 1e-6, "tau=1/3 d2 = " + sci(d2.value));
  c.require(std::fabs(d3.value - want3) <= 1e-3 * want3, "tau=1/3 d3 = " + num(d3.value));

  double worst1 = 0, worst2 = 0;
  for (int k = 0; k < 20; ++k) {
    const double tau = -1.0 + 0.1 * k;
    const auto g = curve_at(tau);
    const double e1 = std::fabs(derivative(g, 1.0, 1, opts).value);
    const double want = 128.0 * (1.0 / 3.0 - tau);
    const double e2 = std::fabs(derivative(g, 1.0, 2, opts).value - want) / std::fabs(want);
    worst1 = std::max(worst1, e1);
    worst2 = std::max(worst2, e2);
    c.require(e1 < 1e-8, "tau=" + num(tau) + ": |d1| = " + sci(e1));
    c.require(e2 < 1e-5, "tau=" + num(tau) + ": d2 relative error " + sci(e2));
  }
  c.measured.push_back("20 tau in [-1, 0.9]: max|d1|=" + sci(worst1) + " max rel err d2=" + sci(worst2));
  c.expected.push_back("d1 within 1e-8, d2 = 128(1/3 - tau) within 1e-5 relative");
}

// ---- 3: non-Einstein critical Berger metric ----

void check_berger_critical(const Catalog&, std::uint64_t, Check& c) {
  const Rational tau(-2, 5);
  const auto crit = berger_critical_points(tau);
  c.require(crit.secondary_s2 && *crit.secondary_s2 == Rational(2, 13),
            "closed-form secondary root is " + (crit.secondary_s2 ? rs(*crit.secondary_s2) : std::string("absent")));

  // independent root of d/ds [s^{4/3} u(s)] on a bracket below s = 1
  const double t = to_double(tau);
  const double a = 32 * (1 + 2 * t), b = -32 * (1 + t), cc = 4 * (3 + t);
  auto g = [&](double s) { return 4 * a + 10 * b * s * s + 16 * cc * s * s * s * s; };
  std::uintmax_t iters = 200;
  const auto bracket = boost::math::tools::toms748_solve(g, 0.2, 0.8, boost::math::tools::eps_tolerance<double>(52), iters);
  const double root = 0.5 * (bracket.first + bracket.second);
  const double closed = std::sqrt(2.0 / 13.0);
  const double s_from_set = crit.s.empty() ? 0.0 : crit.s.front();
  c.require(std::fabs(root - closed) < 1e-10, "numerical root " + num(root) + " vs sqrt(2/13) " + num(closed));
  c.require(std::fabs(s_from_set - closed) < 1e-10, "reported s " + num(s_from_set));

  const auto alg = named_algebra<double>("su2");
  const auto gm = berger_metric<double>(root * root);
  const double resid = relative_norm(normalized_gradient(alg, gm, t), gm);
  c.require(resid < 1e-8, "critical-point residual " + sci(resid));
  c.measured.push_back("s^2=" + rs(crit.secondary_s2.value_or(Rational(0))) + " root=" + num(root) +
                       " residual=" + sci(resid));
  c.expected.push_back("s^2=2/13, root within 1e-10 of sqrt(2/13), residual < 1e-8");
}

// ---- 4: product-sphere path ----

void check_product_path(const Catalog&, std::uint64_t, Check& c) {
  const double want = -64 * kPi * kPi;
  double worst = 0;
  for (int k = 0; k <= 40; ++k) {
    const double t = -1.0 + 0.05 * k;
    const double v = product_sphere_curve(-0.5, t);
    worst = std::max(worst, std::fabs(v - want) / std::fabs(want));
  }
  c.require(worst < 1e-10, "max relative deviation " + sci(worst));
  c.measured.push_back("max relative deviation from -64 pi^2 over t in [-1,1]: " + sci(worst));
  c.expected.push_back("< 1e-10 (value -64 pi^2 = " + num(want) + ")");
}

// ---- 5: Einstein gradient constants ----

void check_einstein_gradients(const Catalog&, std::uint64_t, Check& c) {
  int count = 0;
  auto expect = [&](const std::string& label, int n, const Rational& r, const Sym2<Rational>& f0, const Sym2<Rational>& s,
                    const MetricFrame<Rational>& g) {
    const Sym2<Rational> gs = Sym2<Rational>::from_metric(g);
    const Sym2<Rational> want_f0 = (Rational(n - 4, 2 * n * n) * r * r) * gs;
    const Sym2<Rational> want_s = (Rational(n - 4, 2 * n) * r * r) * gs;
    c.require(f0 == want_f0, label + ": grad F_0 differs from (n-4)/(2n^2) R^2 g");
    c.require(s == want_s, label + ": grad S differs from (n-4)/(2n) R^2 g");
    ++count;
  };
  for (const auto& m : Catalog::standard_models()) {
    const auto cd = curvature_data(m);
    const auto f0 = gradient_F_parallel(cd, Rational(0));
    const auto f1 = gradient_F_parallel(cd, Rational(1));
    expect(m.label(), m.dim(), cd.scalar(), f0, f1 - f0, cd.metric());
  }
  // homogeneous Einstein metrics through the full algebraic gradient
  std::vector<std::string> algebras = {"su2", "hyperbolic3", "hyperbolic4", "hyperbolic5"};
  for (const auto& name : algebras) {
    const auto alg = named_algebra<Rational>(name);
    const auto g = MetricFrame<Rational>::identity(alg.dim());
    const auto cd = curvature(alg, g);
    expect(name, alg.dim(), cd.scalar(), gradient_F0(alg, g), gradient_S(alg, g), g);
  }
  c.measured.push_back(std::to_string(count) + " Einstein metrics checked exactly, " +
                       std::to_string(c.failures.size()) + " mismatches");
  c.expected.push_back("grad F_0 = (n-4)/(2n^2) R^2 g and grad S = (n-4)/(2n) R^2 g, exact");
}

// ---- 6: divergence-free gradients ----

void check_divergence(const Catalog&, std::uint64_t seed, Check& c) {
  auto rng = rng_for(seed, 6);
  std::uniform_real_distribution<double> logd(std::log(0.25), std::log(4.0));
  std::uniform_real_distribution<double> taud(-1.0, 1.0);
  const auto alg = named_algebra<double>("su2");
  double worst = 0;
  for (int k = 0; k < 100; ++k) {
    const auto g = MetricFrame<double>::diagonal({std::exp(logd(rng)), std::exp(logd(rng)), std::exp(logd(rng))});
    const double tau = taud(rng);
    const auto grad = gradient_F(alg, g, tau);
    const auto div = divergence(grad, levi_civita(alg, g), g);
    double m = 0;
    for (double x : div) m = std::max(m, std::fabs(x));
    worst = std::max(worst, m);
  }
  c.require(worst < 1e-9, "max |div grad F_tau| = " + sci(worst));
  c.measured.push_back("max |div grad F_tau| over 100 diagonal su(2) metrics: " + sci(worst));
  c.expected.push_back("< 1e-9");
}

// ---- 7: symbols ----

void check_symbol_injective(const Catalog&, std::uint64_t seed, Check& c) {
  auto rng = rng_for(seed, 7);
  std::uniform_int_distribution<int> dim(3, 8);
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 100; ++k) {
    const int n = dim(rng);
    Rational tau;
    do {
      tau = random_rational(rng, 24, 2);
    } while (abs(tau - degenerate_tau(n)) <= Rational(1, 20));
    const auto v = symbol_injectivity(n, tau, 1, rng());
    worst = std::min(worst, v.min_singular_value);
    c.require(v.injective && v.min_singular_value > 1e-6,
              "n=" + std::to_string(n) + " tau=" + rs(tau) + ": rank " + std::to_string(v.min_rank) + "/" +
                  std::to_string(v.domain_dim) + ", sigma_min " + sci(v.min_singular_value));
  }
  c.measured.push_back("100 trials, smallest singular value " + num(worst));
  c.expected.push_back("all injective, smallest singular value > 1e-6");
}

void check_symbol_degenerate(const Catalog&, std::uint64_t seed, Check& c) {
  for (int n = 3; n <= 5; ++n) {
    const Rational tau = degenerate_tau(n);
    const auto v = symbol_injectivity(n, tau, 10, seed + n);
    bool kernel_is_metric = v.kernel_basis.size() == 1;
    if (kernel_is_metric) {
      const auto& k = v.kernel_basis.front();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) kernel_is_metric = kernel_is_metric && k[i * n + j] == (i == j ? k[0] : Rational(0));
      kernel_is_metric = kernel_is_metric && k[0] != 0;
    }
    c.measured.push_back("n=" + std::to_string(n) + " tau=" + rs(tau) + ": rank " + std::to_string(v.min_rank) + "/" +
                         std::to_string(v.domain_dim) + (v.metric_in_kernel ? ", g in kernel" : ", g not in kernel") +
                         (kernel_is_metric ? ", kernel = span{g}" : ""));
    c.expected.push_back("n=" + std::to_string(n) + ": rank deficient, kernel = span{g}");
    c.require(!v.injective && v.metric_in_kernel && kernel_is_metric, "n=" + std::to_string(n) + ": not degenerate along g");
  }
}

void check_conformal_killing(const Catalog&, std::uint64_t seed, Check& c) {
  auto rng = rng_for(seed, 73);
  std::uniform_int_distribution<int> coord(-5, 5);
  for (int n = 2; n <= 8; ++n) {
    std::vector<Rational> xi(n, Rational(0));
    xi[0] = 1;
    bool injective = conformal_killing_symbol(n, xi).injective;
    const Rational det_e1 = conformal_killing_symbol(n, xi).determinant;
    for (int k = 0; k < 5; ++k) {
      bool nonzero = false;
      for (auto& x : xi) {
        x = coord(rng);
        nonzero = nonzero || x != 0;
      }
      if (nonzero) injective = injective && conformal_killing_symbol(n, xi).injective;
    }
    const bool want_degenerate = n == 2;
    c.measured.push_back("n=" + std::to_string(n) + ": " + (injective ? "injective" : "degenerate") +
                         " (det at e1 = " + rs(det_e1) + ")");
    c.expected.push_back("n=" + std::to_string(n) + ": " + (want_degenerate ? "degenerate" : "injective"));
    c.require(injective != want_degenerate, "n=" + std::to_string(n) + ": symbol is " +
                                                (injective ? "injective" : "degenerate") + ", det(e1) = " + rs(det_e1));
  }
}

// ---- 8: rigidity ----

void check_exceptional(const Catalog& cat, std::uint64_t, Check& c) {
  auto taus = [&](const ModelSpace& m, int count, const std::vector<Rational>& extra = {}) {
    const auto tt = cat.tt_data(m);
    const auto rep = rigidity_exceptional_taus(m, tt, count, extra);
    std::vector<Rational> out;
    for (const auto& e : rep.taus) {
      out.push_back(e.tau);
      c.require(tt_jacobi(m.dim(), m.scalar_curvature(), Coupling::tau(e.tau), e.mu) == 0,
                m.label() + ": tt_jacobi(tau=" + rs(e.tau) + ", mu=" + rs(e.mu) + ") != 0");
    }
    for (size_t i = 1; i < out.size(); ++i) c.require(out[i - 1] < out[i], m.label() + ": list not increasing");
    return out;
  };
  auto show = [](const std::vector<Rational>& v) {
    std::string s = "{";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + rs(v[i]);
    return s + "}";
  };
  const auto s3 = taus(ModelSpace::round_sphere(3), 1);
  const auto cp2 = taus(ModelSpace::complex_projective(2), 1);
  const auto s2s2 = taus(ModelSpace::product_spheres(2), 2);
  c.require(!s3.empty() && s3.front() == Rational(1, 3), "S^3 first value " + show(s3));
  c.require(!cp2.empty() && cp2.front() == Rational(1, 6), "CP^2 first value " + show(cp2));
  c.require(s2s2 == std::vector<Rational>{Rational(-1, 2), Rational(0)}, "S^2xS^2 values " + show(s2s2));
  c.measured.push_back("S^3 " + show(s3) + "; CP^2 " + show(cp2) + "; S^2xS^2 " + show(s2s2));
  c.expected.push_back("S^3 {1/3}; CP^2 {1/6}; S^2xS^2 {-1/2, 0}");

  // closed forms for spheres and user-supplied hyperbolic eigenvalues
  for (int n = 3; n <= 8; ++n) {
    const auto v = taus(ModelSpace::round_sphere(n), 1);
    const Rational mu = 4 * n;
    c.require(!v.empty() && v.front() == (mu - 4 * (n - 1)) / (2 * n * (n - 1)), "S^" + std::to_string(n) + " formula");
  }
  const std::vector<Rational> mus = {Rational(0), Rational(7), Rational(31, 2)};
  for (int n = 3; n <= 6; ++n) {
    const auto v = taus(ModelSpace::hyperbolic(n), 3, mus);
    std::vector<Rational> want;
    for (const auto& mu : mus) want.push_back(-(mu + 4 * (n - 1)) / (2 * n * (n - 1)));
    std::sort(want.begin(), want.end());
    c.require(v == want, "H^" + std::to_string(n) + " formula " + show(v));
  }
}

void check_bach(const Catalog& cat, std::uint64_t, Check& c) {
  const std::vector<ModelSpace> models = {ModelSpace::round_sphere(4), ModelSpace::spherical_quotient(4),
                                          ModelSpace::complex_projective(2), ModelSpace::product_spheres(2)};
  for (const auto& m : models) {
    const auto v = bach_verdict(m, cat.tt_data(m));
    const auto b = bach_tensor(curvature_data(m));
    const bool flat = b == Sym2<Rational>(4);
    c.measured.push_back(m.label() + ": " + (v.rigid == GapStatus::Holds ? "rigid" : to_string(v.rigid)) +
                         ", minimizer " + to_string(v.minimizer.kind) + (flat ? ", Bach-flat" : ", Bach != 0"));
    c.expected.push_back(m.label() + ": rigid, Bach-flat");
    c.require(v.rigid == GapStatus::Holds, m.label() + ": Bach rigidity " + to_string(v.rigid));
    c.require(flat, m.label() + ": Bach tensor nonzero");
  }
}

// ---- 9: Chern-Gauss-Bonnet ----

void check_cgb(const Catalog&, std::uint64_t, Check& c) {
  struct Case {
    ModelSpace m;
    int chi;
    double vol;
  };
  const std::vector<Case> cases = {{ModelSpace::round_sphere(4), 2, 8 * kPi * kPi / 3},
                                   {ModelSpace::product_spheres(2), 4, 16 * kPi * kPi}};
  for (const auto& e : cases) {
    const auto q = quadratic_invariants(curvature_data(e.m));
    const Rational integrand = q.weyl2 - 2 * q.ric2 + Rational(2, 3) * q.scal2;
    const double lhs = e.vol * to_double(integrand);
    const double rhs = 32 * kPi * kPi * e.chi;
    const double rel = std::fabs(lhs - rhs) / rhs;
    const double vol_rel = std::fabs(e.m.volume().value_or(0) - e.vol) / e.vol;
    c.require(rel < 1e-10, e.m.label() + ": relative CGB defect " + sci(rel));
    c.require(vol_rel < 1e-12, e.m.label() + ": catalog volume " + num(e.m.volume().value_or(0)));
    c.measured.push_back(e.m.label() + ": " + num(lhs) + " (|W|^2 = " + rs(q.weyl2) + ")");
    c.expected.push_back(e.m.label() + ": 32 pi^2 chi = " + num(rhs));
  }
  const auto q = quadratic_invariants(curvature_data(ModelSpace::product_spheres(2)));
  c.require(q.weyl2 == Rational(16, 3), "|W|^2(S^2xS^2) = " + rs(q.weyl2));
}

// ---- 10: property suites ----

// Algebraic curvature tensors from random left-invariant metrics.
CurvatureData<double> random_curvature(std::mt19937_64& rng, int* dim_out = nullptr) {
  static const std::vector<std::string> algebras = {"su2", "sol", "heisenberg", "su2+R", "sol+R",
                                                    "heisenberg+R", "hyperbolic4", "hyperbolic5"};
  std::uniform_int_distribution<size_t> pick(0, algebras.size() - 1);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  const auto alg = named_algebra<double>(algebras[pick(rng)]);
  const int n = alg.dim();
  std::vector<double> l(static_cast<size_t>(n) * n), g(static_cast<size_t>(n) * n, 0.0);
  for (auto& x : l) x = u(rng);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = i == j ? 0.5 : 0.0;
      for (int k = 0; k < n; ++k) s += l[i * n + k] * l[j * n + k];
      g[i * n + j] = s;
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) g[i * n + j] = g[j * n + i];
  if (dim_out) *dim_out = n;
  return curvature(alg, MetricFrame<double>(n, g));
}

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

void check_curvature_symmetries(const Catalog&, std::uint64_t seed, Check& c) {
  auto rng = rng_for(seed, 101);
  double worst_sym = 0, worst_trace = 0, worst_reassembly = 0;
  for (int k = 0; k < 100; ++k) {
    const auto cd = random_curvature(rng);
    const int n = cd.dim();
    const auto& g = cd.metric();
    const double scale = std::max(1.0, max_abs(cd.riemann().components()));
    worst_sym = std::max(worst_sym, cd.riemann().symmetry_defect() / scale);
    worst_trace = std::max(worst_trace, max_abs(contract_ricci(cd.weyl(), g).components()) / scale);
    const auto gs = Sym2<double>::from_metric(g);
    Curv4<double> re = cd.weyl();
    re += (1.0 / (n - 2)) * kulkarni_nomizu(cd.ricci(), gs);
    re -= (cd.scalar() / (2.0 * (n - 1) * (n - 2))) * kulkarni_nomizu(gs, gs);
    re -= cd.riemann();
    worst_reassembly = std::max(worst_reassembly, max_abs(re.components()) / scale);
    const double rtrace = trace(cd.ricci(), g);
    worst_trace = std::max(worst_trace, std::fabs(rtrace - cd.scalar()) / scale);
  }
  c.require(worst_sym < 1e-10, "symmetry defect " + sci(worst_sym));
  c.require(worst_trace < 1e-10, "trace defect " + sci(worst_trace));
  c.require(worst_reassembly < 1e-10, "reassembly defect " + sci(worst_reassembly));
  c.measured.push_back("100 random metrics: symmetry " + sci(worst_sym) + ", traces " + sci(worst_trace) +
                       ", reassembly " + sci(worst_reassembly));
  c.expected.push_back("each < 1e-10 (relative to max |Rm|)");
}

void check_rm_decomposition_identity(const Catalog&, std::uint64_t seed, Check& c) {
  auto rng = rng_for(seed, 102);
  std::uniform_real_distribution<double> kd(-2.0, 2.0);
  std::uniform_real_distribution<double> eps(0.05, 1.0);
  double worst = 0;
  for (int k = 0; k < 100; ++k) {
    const auto base = random_curvature(rng);
    const auto& g = base.metric();
    const int n = g.dim();
    Curv4<double> rm = constant_curvature(g, kd(rng));
    rm += eps(rng) * base.riemann();
    const auto cd = decompose(rm, g);
    const auto q = quadratic_invariants(cd);
    const double lhs = (n - 2) / 4.0 * (q.rm2 - q.weyl2);
    const double rhs = q.ric2 - q.scal2 / (2.0 * (n - 1));
    const double scale = std::max({1.0, std::fabs(q.rm2), std::fabs(q.ric2)});
    worst = std::max(worst, std::fabs(lhs - rhs) / scale);
  }
  c.require(worst < 1e-9, "pointwise identity defect " + sci(worst));
  c.measured.push_back("max defect over 100 inputs: " + sci(worst));
  c.expected.push_back("(n-2)/4 (|Rm|^2 - |W|^2) = |Ric|^2 - R^2/(2(n-1)) within 1e-9");
}

void check_factorizations(const Catalog&, std::uint64_t seed, Check& c) {
  auto rng = rng_for(seed, 103);
  std::uniform_int_distribution<int> dim(3, 8);
  int bad = 0;
  for (int k = 0; k < 200; ++k) {
    const int n = dim(rng);
    const Rational r = random_rational(rng, 12, 30);
    const Rational tau = random_rational(rng, 12, 2);
    const auto cp = Coupling::tau(tau);
    // TT: (1/2)(2R/n - mu)((4/n + 2tau)R - mu)
    const Rational a = Rational(2, n) * r;
    const Rational b = (Rational(4, n) + 2 * tau) * r;
    const auto tt = tt_polynomial(n, r, cp);
    const bool tt_ok = tt.c2 == Rational(1, 2) && tt.c1 == -(a + b) / 2 && tt.c0 == a * b / 2;
    // conformal: (1/2n)((n-1) lambda - R)(n(n - 4tau + 4n tau) lambda + 2(n-4)(1 + n tau) R)
    const Rational b1 = Rational(n) * (n - 4 * tau + 4 * n * tau);
    const Rational b0 = Rational(2 * (n - 4)) * (1 + n * tau) * r;
    const auto cf = conformal_polynomial(n, r, cp);
    const Rational h(1, 2 * n);
    const bool cf_ok = cf.c2 == h * (n - 1) * b1 && cf.c1 == h * ((n - 1) * b0 - r * b1) && cf.c0 == -h * r * b0;
    // normalized minus unnormalized TT operator is a constant
    const auto un = tt_polynomial_unnormalized(n, r, cp);
    const Rational offset = -Rational(n - 4, 2 * n * n) * r * r * (1 + n * tau);
    const bool off_ok = tt.c2 == un.c2 && tt.c1 == un.c1 && tt.c0 - un.c0 == offset;
    const bool roots_ok = tt(a) == 0 && tt(b) == 0 && cf(r / (n - 1)) == 0;
    if (!(tt_ok && cf_ok && off_ok && roots_ok)) {
      ++bad;
      c.require(false, "n=" + std::to_string(n) + " R=" + rs(r) + " tau=" + rs(tau) + ":" + (tt_ok ? "" : " tt") +
                           (cf_ok ? "" : " conformal") + (off_ok ? "" : " offset") + (roots_ok ? "" : " roots"));
    }
  }
  // unnormalized operator at tau = 0 against its explicit coefficients
  for (int n = 3; n <= 8; ++n) {
    const Rational r = n * (n - 1);
    const auto un = tt_polynomial_unnormalized(n, r, Coupling::tau(Rational(0)));
    c.require(un.c2 == Rational(1, 2) && un.c1 == -Rational(3, n) * r && un.c0 == Rational(n + 4, 2 * n * n) * r * r,
              "unnormalized coefficients at n=" + std::to_string(n));
    // conformal invariance in dimension 4 at tau = -1/3
  }
  const auto z = conformal_polynomial(4, Rational(12), Coupling::tau(Rational(-1, 3)));
  c.require(z.c0 == 0 && z.c1 == 0 && z.c2 == 0, "n=4 tau=-1/3 conformal polynomial is not identically 0");
  c.measured.push_back("200 random (n, R, tau): " + std::to_string(bad) + " mismatches");
  c.expected.push_back("0 mismatches (exact)");
}

void check_scalar_limit(const Catalog&, std::uint64_t seed, Check& c) {
  auto rng = rng_for(seed, 104);
  std::uniform_int_distribution<int> dim(3, 8);
  int bad = 0;
  for (int k = 0; k < 50; ++k) {
    const int n = dim(rng);
    const Rational r = random_rational(rng, 12, 30);
    const auto s_cf = conformal_polynomial(n, r, Coupling::scalar_squared());
    const auto c1 = conformal_polynomial(n, r, Coupling::tau(Rational(1)));
    const auto c0 = conformal_polynomial(n, r, Coupling::tau(Rational(0)));
    const auto s_tt = tt_polynomial(n, r, Coupling::scalar_squared());
    const auto t1 = tt_polynomial(n, r, Coupling::tau(Rational(1)));
    const auto t0 = tt_polynomial(n, r, Coupling::tau(Rational(0)));
    const bool ok = s_cf.c2 == c1.c2 - c0.c2 && s_cf.c1 == c1.c1 - c0.c1 && s_cf.c0 == c1.c0 - c0.c0 &&
                    s_tt.c2 == t1.c2 - t0.c2 && s_tt.c1 == t1.c1 - t0.c1 && s_tt.c0 == t1.c0 - t0.c0;
    if (!ok) {
      ++bad;
      c.require(false, "n=" + std::to_string(n) + " R=" + rs(r));
    }
  }
  c.measured.push_back("50 random (n, R): " + std::to_string(bad) + " mismatches");
  c.expected.push_back("tau-coefficients equal the int R^2 polynomials exactly");
}

// ---- catalog cross-checks ----

void check_cp_tt(const Catalog& cat, std::uint64_t, Check& c) {
  for (int m = 2; 2 * m <= kMaxDim; ++m) {
    const auto model = ModelSpace::complex_projective(m);
    const Rational r = model.scalar_curvature();
    const auto tt = cat.tt_data(model);
    const Rational want = 2 * (m + 2) * r / (m * (m + 1));
    const bool ok = r == 4 * m * (m + 1) && want == 8 * (m + 2) && tt.least == want && !tt.least_is_bound &&
                    !tt.known.empty() && tt.known.front() == want;
    c.measured.push_back(model.label() + ": least TT eigenvalue " + rs(tt.least));
    c.expected.push_back(model.label() + ": 2(m+2)R/(m(m+1)) = " + rs(want));
    c.require(ok, model.label() + ": least TT eigenvalue " + rs(tt.least) + " != 2(m+2)R/(m(m+1)) = " + rs(want));
  }
}

void check_sphere_tt(const Catalog& cat, std::uint64_t, Check& c) {
  for (int n = 3; n <= kMaxDim; ++n) {
    const auto model = ModelSpace::round_sphere(n);
    const auto tt = cat.tt_data(model);
    const Rational want = 4 * model.scalar_curvature() / (n - 1);
    c.require(tt.least == want && want == 4 * n && !tt.least_is_bound,
              model.label() + ": least TT eigenvalue " + rs(tt.least) + " != 4R/(n-1) = " + rs(want));
    // the upper endpoint of the interval is the first exceptional value
    const auto iv = stability_interval(model, tt);
    const auto rep = rigidity_exceptional_taus(model, tt, 1);
    c.require(!rep.taus.empty() && iv.hi.value && *iv.hi.value == rep.taus.front().tau &&
                  *iv.hi.value == Rational(2, n * (n - 1)),
              model.label() + ": upper endpoint differs from the first exceptional value");
  }
  c.measured.push_back(std::to_string(c.failures.size()) + " mismatches for n = 3..8");
  c.expected.push_back("mu_1 = 4n = 4R/(n-1) and upper endpoint 2/(n(n-1))");
}

void check_product_spectrum(const Catalog&, std::uint64_t, Check& c) {
  for (int m = 2; m <= 4; ++m) {
    std::set<Rational> brute;
    for (int a = 0; a < 40; ++a)
      for (int b = 0; b < 40; ++b) brute.insert(Rational(a * (a + m - 1) + b * (b + m - 1)));
    std::vector<Rational> want(brute.begin(), brute.end());
    want.resize(50);
    const auto got = function_spectrum(ModelSpace::product_spheres(m), 50);
    c.require(got == want, "S^" + std::to_string(m) + "xS^" + std::to_string(m) + " spectrum differs");
  }
  c.measured.push_back(std::to_string(c.failures.size()) + " mismatches");
  c.expected.push_back("first 50 values equal brute-force pairwise sums, m = 2..4");
}

void check_einstein_catalog(const Catalog&, std::uint64_t, Check& c) {
  int count = 0;
  for (const auto& m : Catalog::standard_models()) {
    const auto cd = curvature_data(m);
    const Sym2<Rational> want = m.einstein_constant() * Sym2<Rational>::from_metric(cd.metric());
    c.require(cd.ricci() == want, m.label() + ": Ric != kappa g");
    c.require(cd.scalar() == m.scalar_curvature(), m.label() + ": R = " + rs(cd.scalar()));
    ++count;
  }
  c.measured.push_back(std::to_string(count) + " models, " + std::to_string(c.failures.size()) + " mismatches");
  c.expected.push_back("Ric = kappa g and R as tabulated, exact");
}

std::vector<Criterion> criteria() {
  return {
      {{"1", "stability intervals (exact)", {"intervals", "stability"}}, check_intervals},
      {{"2", "Berger curve derivatives at the round metric", {"berger", "functionals"}}, check_berger_derivatives},
      {{"3", "non-Einstein critical Berger metric", {"berger", "gradient"}}, check_berger_critical},
      {{"4", "product-sphere critical path", {"product", "functionals"}}, check_product_path},
      {{"5", "Einstein gradient constants", {"gradient"}}, check_einstein_gradients},
      {{"6", "divergence-free gradients", {"gradient"}}, check_divergence},
      {{"7a", "gauged symbol injective away from the degenerate tau", {"symbol"}}, check_symbol_injective},
      {{"7b", "gauged symbol degenerate along g at tau = -n/(4(n-1))", {"symbol"}}, check_symbol_degenerate},
      {{"7c", "conformal Killing symbol degenerate iff n = 2", {"symbol"}}, check_conformal_killing},
      {{"8a", "rigidity exceptional values", {"rigidity"}}, check_exceptional},
      {{"8b", "Bach rigidity in dimension 4", {"rigidity", "bach"}}, check_bach},
      {{"9", "Chern-Gauss-Bonnet consistency (n = 4)", {"catalog", "cgb"}}, check_cgb},
      {{"10a", "curvature symmetry invariants", {"properties"}}, check_curvature_symmetries},
      {{"10b", "pointwise Rm/W/Ric/R identity", {"properties"}}, check_rm_decomposition_identity},
      {{"10c", "spectral polynomial factorizations", {"properties", "jacobi"}}, check_factorizations},
      {{"10d", "int R^2 polynomials as the tau -> infinity limit", {"properties", "jacobi"}}, check_scalar_limit},
      {{"11a", "complex-projective TT least eigenvalue cross-check (8(m+2) = 2(m+2)R/(m(m+1)))", {"catalog"}},
       check_cp_tt},
      {{"11b", "sphere TT least eigenvalue cross-check (4n = 4R/(n-1))", {"catalog"}}, check_sphere_tt},
      {{"11c", "product-sphere function spectrum against pairwise sums", {"catalog"}}, check_product_spectrum},
      {{"11d", "catalog models are Einstein with tabulated R", {"catalog"}}, check_einstein_catalog},
  };
}

const CriterionInfo kRuntime{"10e", "full suite runtime under 60 s", {"properties", "runtime"}};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "; " : "") + v[i];
  return s;
}

}  // namespace

std::vector<CriterionInfo> list_criteria() {
  std::vector<CriterionInfo> out;
  for (const auto& c : criteria()) out.push_back(c.info);
  out.push_back(kRuntime);
  return out;
}

bool matches_filter(const CriterionInfo& info, const std::string& filter) {
  const auto terms = split(filter);
  if (terms.empty()) return true;
  for (const auto& t : terms) {
    if (t == info.id) return true;
    // "7" selects 7a, 7b, 7c
    if (info.id.size() > t.size() && info.id.compare(0, t.size(), t) == 0 && std::isalpha(static_cast<unsigned char>(info.id[t.size()])))
      return true;
    if (std::find(info.tags.begin(), info.tags.end(), t) != info.tags.end()) return true;
  }
  return false;
}

std::vector<CriterionResult> run_verification(const Catalog& catalog, const VerifyOptions& opts) {
  if (opts.jobs < 1) fail(ErrorKind::InvalidInput, "jobs must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  std::vector<Criterion> selected;
  for (auto& c : criteria())
    if (matches_filter(c.info, opts.filter)) selected.push_back(std::move(c));
  const bool with_runtime = matches_filter(kRuntime, opts.filter);
  if (selected.empty() && !with_runtime) fail(ErrorKind::InvalidInput, "filter '" + opts.filter + "' selects no criteria");

  std::vector<CriterionResult> results(selected.size());
  auto run_one = [&](size_t i) {
    const auto t0 = std::chrono::steady_clock::now();
    Check chk;
    CriterionResult& r = results[i];
    r.info = selected[i].info;
    try {
      selected[i].body(catalog, opts.seed, chk);
    } catch (const std::exception& e) {
      chk.failures.push_back(std::string("exception: ") + e.what());
    }
    r.passed = chk.failures.empty();
    r.failures = std::move(chk.failures);
    r.measured = join(chk.measured);
    r.expected = join(chk.expected);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  const int workers = std::min<int>(opts.jobs, static_cast<int>(selected.size()));
  if (workers <= 1) {
    for (size_t i = 0; i < selected.size(); ++i) run_one(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (size_t i = next++; i < selected.size(); i = next++) run_one(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  if (with_runtime) {
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CriterionResult r;
    r.info = kRuntime;
    r.seconds = total;
    r.passed = total < 60.0;
    r.measured = "completed";
    r.expected = "under 60 s";
    if (!r.passed) r.failures.push_back("suite took " + num(total) + " s");
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace qcf
