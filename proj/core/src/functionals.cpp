#include "qcf/functionals.hpp"

#include "qcf/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

namespace qcf {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

bool degenerate_symbol(const FunctionalSelector& sel, int n) {
  const auto* f = std::get_if<Ftau>(&sel);
  if (f == nullptr) return false;
  const Rational bad(-n, 4 * (n - 1));
  if (f->exact) return *f->exact == bad;
  return std::fabs(f->tau - to_double(bad)) <= 1e-15;
}

double integrand(const FunctionalSelector& sel, const QuadraticInvariants<double>& q) {
  return std::visit(overloaded{
                        [&](const Ftau& f) { return q.ric2 + f.tau * q.scal2; },
                        [&](const Sfunc&) { return q.scal2; },
                        [&](const Wfunc&) { return q.weyl2; },
                        [&](const Rfunc&) { return q.rm2; },
                    },
                    sel);
}

double evaluate(const FunctionalSelector& sel, const CurvatureData<double>& cd, double vol, bool normalized) {
  if (!(vol > 0)) fail(ErrorKind::InvalidInput, "volume must be positive");
  const int n = cd.dim();
  if (std::holds_alternative<Wfunc>(sel) && n == 3) return 0.0;
  const double val = integrand(sel, quadratic_invariants(cd));
  if (!normalized) return vol * val;
  return std::pow(vol, 4.0 / n) * val;
}

double berger_curve(double tau, double s) {
  if (!(s > 0)) fail(ErrorKind::InvalidInput, "Berger parameter must be positive");
  const double s2 = s * s;
  const double u = 32.0 * (1 + 2 * tau) - 32.0 * (1 + tau) * s2 + 4.0 * (3 + tau) * s2 * s2;
  return std::pow(s, 4.0 / 3.0) * u;
}

double berger_normalization() { return std::pow(2.0 * std::numbers::pi * std::numbers::pi, 4.0 / 3.0); }

double product_sphere_curve(double tau, double t) {
  // factor radii a^2 = e^t, b^2 = e^{-t}; volume is 16 pi^2 along the path
  const double ia2 = std::exp(-t);
  const double ib2 = std::exp(t);
  const double ric2 = 2 * ia2 * ia2 + 2 * ib2 * ib2;
  const double scal = 2 * ia2 + 2 * ib2;
  const double vol = 16.0 * std::numbers::pi * std::numbers::pi;
  return vol * (ric2 + tau * scal * scal);
}

namespace {

double stencil(const std::function<double(double)>& f, double x, double h, int order) {
  switch (order) {
    case 1: return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
    case 2: return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) / (12 * h * h);
    case 3: return (-f(x - 2 * h) + 2 * f(x - h) - 2 * f(x + h) + f(x + 2 * h)) / (2 * h * h * h);
  }
  fail(ErrorKind::InvalidInput, "derivative order must be 1, 2 or 3");
}

}  // namespace

DerivativeEstimate derivative(const std::function<double(double)>& f, double x, int order, const DerivativeOptions& opts) {
  if (order < 1 || order > 3) fail(ErrorKind::InvalidInput, "derivative order must be 1, 2 or 3");
  double h = opts.initial_step;
  double hmin = opts.min_step;
  if (opts.domain_lower) {
    const double room = (x - *opts.domain_lower) / 4;
    if (!(room > 0)) fail(ErrorKind::InvalidInput, "point lies outside the curve's domain");
    if (room < h) {
      hmin *= room / h;
      h = room;
    }
  }
  if (!(h > 0) || !(hmin > 0) || hmin > h) fail(ErrorKind::InvalidInput, "bad step sequence");
  if (x + hmin == x || hmin < 64 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(x))) {
    fail(ErrorKind::IllConditioned, "finite-difference steps underflow at this point");
  }

  // Neville tableau; the leading error term is h^4 for orders 1-2 and h^2
  // for order 3, each following term two powers higher.
  const int p0 = order == 3 ? 2 : 4;
  std::vector<std::vector<double>> a;
  DerivativeEstimate best{0, std::numeric_limits<double>::infinity()};
  for (int i = 0; h >= hmin * (1 - 1e-12); ++i, h /= 2) {
    a.emplace_back(i + 1);
    a[i][0] = stencil(f, x, h, order);
    if (i == 0) {
      best.value = a[0][0];
      continue;
    }
    for (int j = 1; j <= i; ++j) {
      const double fac = std::ldexp(1.0, p0 + 2 * (j - 1));
      a[i][j] = (fac * a[i][j - 1] - a[i - 1][j - 1]) / (fac - 1);
      const double err = std::max(std::fabs(a[i][j] - a[i][j - 1]), std::fabs(a[i][j] - a[i - 1][j - 1]));
      if (err <= best.error) {
        best.error = err;
        best.value = a[i][j];
      }
    }
    // roundoff has taken over once the diagonal stops improving
    if (std::fabs(a[i][i] - a[i - 1][i - 1]) >= 2 * best.error) break;
  }
  if (!std::isfinite(best.error)) best.error = std::fabs(best.value);
  return best;
}

CurveSample curve_derivatives(const std::function<double(double)>& f, double x, int max_order,
                              const DerivativeOptions& opts) {
  if (max_order < 0 || max_order > 3) fail(ErrorKind::InvalidInput, "max_order must be between 0 and 3");
  CurveSample s;
  s.param = x;
  s.value = f(x);
  for (int k = 1; k <= max_order; ++k) s.d[k - 1] = derivative(f, x, k, opts);
  return s;
}

BergerCriticalSet berger_critical_points(const Rational& tau) {
  if (tau == -3) fail(ErrorKind::InvalidInput, "tau = -3 makes the quartic coefficient vanish");
  BergerCriticalSet out;
  // 4a + 10b x + 16c x^2 = 0 in x = s^2 has the root x = 1; the other root is
  // a / (4c) = 2(1+2tau)/(3+tau).
  const Rational x2 = Rational(2) * (1 + 2 * tau) / (3 + tau);
  out.s.push_back(1.0);
  if (x2 == 1) {
    out.double_root = true;
  } else if (x2 > 0) {
    out.secondary_s2 = x2;
    out.s.push_back(std::sqrt(to_double(x2)));
  } else {
    out.secondary_out_of_domain = true;
  }
  std::sort(out.s.begin(), out.s.end());
  return out;
}

BergerCriticalSet berger_critical_points(double tau) { return berger_critical_points(from_double(tau)); }

void write_curve_csv(std::ostream& out, const std::vector<CurveSample>& samples) {
  auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << "param,value,d1,d2,d3,err1,err2,err3\n";
  for (const auto& s : samples) {
    out << num(s.param) << ',' << num(s.value);
    for (const auto& d : s.d) out << ',' << (d ? num(d->value) : "");
    for (const auto& d : s.d) out << ',' << (d ? num(d->error) : "");
    out << '\n';
  }
}

}  // namespace qcf
