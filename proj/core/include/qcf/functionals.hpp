#pragma once

// Quadratic curvature functionals on homogeneous metrics and explicit
// one-parameter variation curves.

#include "qcf/tensor.hpp"

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <variant>
#include <vector>

namespace qcf {

// int |Ric|^2 + tau int R^2
struct Ftau {
  double tau;
  std::optional<Rational> exact;  // set when tau was given as a ratio
  explicit Ftau(double t) : tau(t) {}
  explicit Ftau(const Rational& t) : tau(to_double(t)), exact(t) {}
};
struct Sfunc {};  // int R^2
struct Wfunc {};  // int |W|^2
struct Rfunc {};  // int |Rm|^2
using FunctionalSelector = std::variant<Ftau, Sfunc, Wfunc, Rfunc>;

// True for F_tau at tau = -n/(4(n-1)), where the gauged symbol degenerates.
bool degenerate_symbol(const FunctionalSelector& sel, int n);

double integrand(const FunctionalSelector& sel, const QuadraticInvariants<double>& q);

// Unnormalized: Vol * integrand. Normalized: Vol^{4/n} * integrand, the
// scale-invariant version Vol^{4/n - 1} F.
double evaluate(const FunctionalSelector& sel, const CurvatureData<double>& cd, double vol, bool normalized);

// Normalized F_tau along the Berger family, scaled so f(1) = 12 + 36 tau:
// s^{4/3} (32(1+2tau) - 32(1+tau)s^2 + 4(3+tau)s^4).
double berger_curve(double tau, double s);

// Positive constant relating berger_curve to evaluate(..., normalized).
double berger_normalization();

// Normalized F_tau of e^t g1 + e^{-t} g2 on the unit S^2 x S^2.
double product_sphere_curve(double tau, double t);

struct DerivativeEstimate {
  double value = 0;
  double error = 0;
};

struct CurveSample {
  double param = 0;
  double value = 0;
  std::array<std::optional<DerivativeEstimate>, 3> d;
};

struct DerivativeOptions {
  double initial_step = 1e-2;
  double min_step = 1e-4;
  // Smallest parameter the curve accepts; steps shrink to stay inside.
  std::optional<double> domain_lower;
};

// Central stencils (5-point for orders 1 and 2, 4-point for order 3) with
// Richardson extrapolation over step halvings. Throws IllConditioned when
// the steps underflow at x.
DerivativeEstimate derivative(const std::function<double(double)>& f, double x, int order,
                              const DerivativeOptions& opts = {});

CurveSample curve_derivatives(const std::function<double(double)>& f, double x, int max_order,
                              const DerivativeOptions& opts = {});

struct BergerCriticalSet {
  std::vector<double> s;                     // ascending
  std::optional<Rational> secondary_s2;      // exact s^2 of the non-round critical point
  bool double_root = false;                  // s = 1 is a double root
  bool secondary_out_of_domain = false;      // closed-form root is <= 0
};

// Roots of (4/3)u(s) + s u'(s) = 0. Throws InvalidInput at tau = -3.
BergerCriticalSet berger_critical_points(const Rational& tau);
BergerCriticalSet berger_critical_points(double tau);

void write_curve_csv(std::ostream& out, const std::vector<CurveSample>& samples);

}  // namespace qcf
