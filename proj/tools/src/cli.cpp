#include "cli.hpp"

#include "report.hpp"

#include "qcf/error.hpp"
#include "qcf/functionals.hpp"
#include "qcf/homogeneous.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <thread>

namespace qcf::cli {

namespace {

enum class Format { Text, Json, Csv };

Format parse_format(const std::string& s, Format fallback) {
  if (s.empty()) return fallback;
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "text") return Format::Text;
  fail(ErrorKind::InvalidInput, "unknown format '" + s + "' (expected json, csv or text)");
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

std::string rs(const Rational& x) { return to_string(x); }

std::string bound_text(const TauBound& b, bool lower) {
  if (!b.value) return lower ? "-inf" : "+inf";
  return rs(*b.value);
}

std::string interval_text(const TauInterval& iv) {
  if (iv.empty) return "empty";
  return std::string(iv.lo.open ? "(" : "[") + bound_text(iv.lo, true) + ", " + bound_text(iv.hi, false) +
         (iv.hi.open ? ")" : "]");
}

std::vector<Rational> parse_list(const std::vector<std::string>& items) {
  std::vector<Rational> out;
  for (const auto& s : items) out.push_back(parse_rational(s));
  return out;
}

void print_model_listing(std::ostream& err) {
  err << "available models:\n"
         "  sphere      round S^n             --dim n (3..8)\n"
         "  quotient    S^n / Z_k             --dim n, --order k (default 2, RP^n)\n"
         "  hyperbolic  closed H^n / Gamma    --dim n, --volume v (optional)\n"
         "  cp          CP^m, Fubini-Study    --m m or --dim 2m\n"
         "  product     S^m x S^m             --m m or --dim 2m\n"
         "  torus       flat T^n, side 2 pi s --dim n, --scale s (default 1)\n";
}

// Model selection shared by intervals and rigidity.
struct ModelArgs {
  std::string model;
  int dim = 0;
  int m = 0;
  int order = 2;
  std::string scale = "1";
  std::optional<double> volume;

  void add(CLI::App* app) {
    app->add_option("--model", model, "sphere, quotient, hyperbolic, cp, product or torus");
    app->add_option("--dim", dim, "real dimension");
    app->add_option("--m", m, "complex dimension (cp) or factor dimension (product)");
    app->add_option("--order", order, "group order of a spherical quotient");
    app->add_option("--scale", scale, "flat torus side length in units of 2 pi");
    app->add_option("--volume", volume, "volume of a hyperbolic model");
  }

  ModelSpace build() const {
    if (model.empty()) fail(ErrorKind::InvalidInput, "--model is required");
    const ModelKind kind = parse_model_kind(model);
    switch (kind) {
      case ModelKind::ComplexProjective:
      case ModelKind::ProductSpheres: {
        int mm = m;
        if (mm == 0) {
          if (dim == 0 || dim % 2 != 0) fail(ErrorKind::InvalidInput, "give --m, or an even --dim");
          mm = dim / 2;
        } else if (dim != 0 && dim != 2 * mm) {
          fail(ErrorKind::InvalidInput, "--dim must equal 2 --m");
        }
        return kind == ModelKind::ComplexProjective ? ModelSpace::complex_projective(mm) : ModelSpace::product_spheres(mm);
      }
      default: break;
    }
    if (dim == 0) fail(ErrorKind::InvalidInput, "--dim is required for " + model);
    switch (kind) {
      case ModelKind::RoundSphere: return ModelSpace::round_sphere(dim);
      case ModelKind::SphericalQuotient: return ModelSpace::spherical_quotient(dim, order);
      case ModelKind::Hyperbolic: return ModelSpace::hyperbolic(dim, volume);
      case ModelKind::FlatTorus: return ModelSpace::flat_torus(dim, parse_rational(scale));
      default: break;
    }
    fail(ErrorKind::InvalidInput, "unsupported model");
  }
};

Catalog load_catalog(const std::string& path) {
  return path.empty() ? Catalog::from_environment() : Catalog::from_json_file(path);
}

// ---- intervals ----

struct IntervalsArgs {
  ModelArgs model;
  bool all = false;
  std::string tau;
  std::string lambda1;
};

int cmd_intervals(const IntervalsArgs& a, const Catalog& cat, Format fmt, std::ostream& out) {
  const std::optional<Rational> lambda1 = a.lambda1.empty() ? std::nullopt : std::optional(parse_rational(a.lambda1));
  if (!a.tau.empty()) {
    if (a.all) fail(ErrorKind::InvalidInput, "--tau needs a single model");
    const ModelSpace m = a.model.build();
    const Rational tau = parse_rational(a.tau);
    const TTSpectrum tt = cat.tt_data(m);
    VerdictParts parts;
    parts.tt = tt_gap_check(m, tt, tau);
    parts.conformal = conformal_gap_check(m, tau, lambda1);
    parts.combined = assess_stability(m, tt, tau, lambda1);
    if (fmt == Format::Json) {
      out << verdict_report(m, tau, parts).dump(2) << "\n";
    } else if (fmt == Format::Csv) {
      out << "model,n,R,tau,verdict,witness,tt,conformal\n";
      out << m.label() << ',' << m.dim() << ',' << rs(m.scalar_curvature()) << ',' << rs(tau) << ','
          << to_string(parts.combined.kind) << ',' << (parts.combined.witness ? rs(*parts.combined.witness) : "") << ','
          << to_string(parts.tt.kind) << ',' << to_string(parts.conformal.kind) << "\n";
    } else {
      out << m.label() << " tau = " << rs(tau) << ": " << to_string(parts.combined.kind);
      if (parts.combined.witness) out << " (witness " << rs(*parts.combined.witness) << ")";
      out << "\n  tt: " << to_string(parts.tt.kind) << "\n  conformal: " << to_string(parts.conformal.kind) << "\n";
      for (const auto& n : parts.combined.notes) out << "  note: " << n << "\n";
    }
    return kOk;
  }

  std::vector<ModelSpace> models;
  if (a.all) {
    models = Catalog::standard_models();
  } else {
    models.push_back(a.model.build());
  }
  std::vector<std::pair<ModelSpace, TauInterval>> rows;
  for (const auto& m : models) rows.emplace_back(m, stability_interval(m, cat.tt_data(m), lambda1));

  if (fmt == Format::Json) {
    if (a.all) {
      json arr = json::array();
      for (const auto& [m, iv] : rows) arr.push_back(interval_report(m, iv));
      out << json{{"intervals", arr}}.dump(2) << "\n";
    } else {
      out << interval_report(rows[0].first, rows[0].second).dump(2) << "\n";
    }
  } else if (fmt == Format::Csv) {
    out << "model,n,R,lo,hi,lo_open,hi_open,strict,optimality,lo_provenance,hi_provenance\n";
    for (const auto& [m, iv] : rows) {
      out << m.label() << ',' << m.dim() << ',' << rs(m.scalar_curvature()) << ',' << bound_text(iv.lo, true) << ','
          << bound_text(iv.hi, false) << ',' << iv.lo.open << ',' << iv.hi.open << ',' << iv.strict << ','
          << iv.upper_optimality << ',' << csv_field(iv.lo.provenance) << ',' << csv_field(iv.hi.provenance) << "\n";
    }
  } else {
    for (const auto& [m, iv] : rows) {
      out << m.label() << " (n = " << m.dim() << ", R = " << rs(m.scalar_curvature()) << "): " << interval_text(iv);
      if (!iv.strict) out << " [not strict]";
      if (iv.upper_optimality != "sharp") out << " [upper endpoint optimality " << iv.upper_optimality << "]";
      out << "\n";
      if (!a.all) {
        out << "  lower: " << iv.lo.provenance << "\n  upper: " << iv.hi.provenance << "\n";
        for (const auto& n : iv.notes) out << "  note: " << n << "\n";
      }
    }
  }
  return kOk;
}

// ---- rigidity ----

struct RigidityArgs {
  ModelArgs model;
  int count = 5;
  std::vector<std::string> mu;
  std::string lambda1;
};

int cmd_rigidity(const RigidityArgs& a, const Catalog& cat, Format fmt, std::ostream& out) {
  const ModelSpace m = a.model.build();
  const TTSpectrum tt = cat.tt_data(m);
  const std::optional<Rational> lambda1 = a.lambda1.empty() ? std::nullopt : std::optional(parse_rational(a.lambda1));
  const RigidityReport rep = rigidity_exceptional_taus(m, tt, a.count, parse_list(a.mu), lambda1);
  std::optional<BachVerdict> bach;
  if (m.dim() == 4) bach = bach_verdict(m, tt);

  if (fmt == Format::Json) {
    out << rigidity_report(m, rep, bach).dump(2) << "\n";
  } else if (fmt == Format::Csv) {
    out << "tau,mu,kernel,conformal_kernel_trivial\n";
    for (const auto& e : rep.taus) {
      out << rs(e.tau) << ',' << rs(e.mu) << ',' << csv_field(e.kernel_note) << ',' << to_string(e.conformal_kernel_trivial)
          << "\n";
    }
  } else {
    out << m.label() << " (n = " << m.dim() << ", R = " << rs(m.scalar_curvature()) << ")\n";
    for (const auto& e : rep.taus) {
      out << "  tau = " << rs(e.tau) << "  (mu = " << rs(e.mu) << ")";
      if (!e.kernel_note.empty()) out << "  " << e.kernel_note;
      out << "  [conformal kernel trivial: " << to_string(e.conformal_kernel_trivial) << "]\n";
    }
    if (rep.einstein_deformations) out << "  infinitesimal Einstein deformations present\n";
    for (const auto& n : rep.notes) out << "  note: " << n << "\n";
    if (bach) {
      out << "  Bach: " << (bach->rigid == GapStatus::Holds ? "rigid" : to_string(bach->rigid)) << ", Weyl functional "
          << to_string(bach->minimizer.kind) << "\n";
    }
  }
  return kOk;
}

// ---- berger ----

struct BergerArgs {
  std::string tau = "0";
  double at = 1.0;
  int derivatives = 3;
  double step = 1e-2;
  double min_step = 1e-4;
};

DerivativeOptions deriv_opts(double step, double min_step, std::optional<double> lower) {
  DerivativeOptions o;
  o.initial_step = step;
  o.min_step = min_step;
  o.domain_lower = lower;
  return o;
}

int cmd_berger(const BergerArgs& a, Format fmt, std::ostream& out) {
  const Rational tau_q = parse_rational(a.tau);
  const double tau = to_double(tau_q);
  if (!(a.at > 0)) fail(ErrorKind::InvalidInput, "--at must be positive");
  if (a.derivatives < 0 || a.derivatives > 3) fail(ErrorKind::InvalidInput, "--derivatives must be 0..3");
  auto f = [tau](double s) { return berger_curve(tau, s); };
  const CurveSample sample = curve_derivatives(f, a.at, a.derivatives, deriv_opts(a.step, a.min_step, 0.0));
  const BergerCriticalSet crit = berger_critical_points(tau_q);
  const auto alg = named_algebra<double>("su2");
  std::vector<double> residuals;
  for (double s : crit.s) {
    const auto g = berger_metric<double>(s * s);
    residuals.push_back(relative_norm(normalized_gradient(alg, g, tau), g));
  }

  if (fmt == Format::Json) {
    json j;
    j["tau"] = ratio_parts(tau_q);
    j["s"] = a.at;
    j["value"] = sample.value;
    j["derivatives"] = derivative_json(sample);
    json c;
    c["s"] = crit.s;
    c["secondary_s2"] = crit.secondary_s2 ? rational_json(*crit.secondary_s2) : json(nullptr);
    c["double_root"] = crit.double_root;
    c["secondary_out_of_domain"] = crit.secondary_out_of_domain;
    c["gradient_residuals"] = residuals;
    j["critical"] = c;
    out << j.dump(2) << "\n";
  } else if (fmt == Format::Csv) {
    write_curve_csv(out, {sample});
  } else {
    out << "Berger curve, tau = " << rs(tau_q) << ", s = " << num(a.at) << ": f = " << num(sample.value) << "\n";
    for (int k = 0; k < 3; ++k) {
      if (sample.d[k]) out << "  d" << k + 1 << " = " << num(sample.d[k]->value) << "  (+- " << num(sample.d[k]->error) << ")\n";
    }
    out << "  critical s:";
    for (size_t i = 0; i < crit.s.size(); ++i) out << " " << num(crit.s[i]) << " (residual " << num(residuals[i]) << ")";
    out << "\n";
    if (crit.double_root) out << "  s = 1 is a double root\n";
    if (crit.secondary_s2) out << "  secondary s^2 = " << rs(*crit.secondary_s2) << "\n";
    if (crit.secondary_out_of_domain) out << "  secondary root lies outside s > 0\n";
  }
  return kOk;
}

// ---- curve ----

struct CurveArgs {
  std::string curve = "berger";
  std::string tau = "0";
  double from = 0.5;
  double to = 1.5;
  int steps = 11;
  int derivatives = 2;
  double step = 1e-2;
  double min_step = 1e-4;
};

int cmd_curve(const CurveArgs& a, Format fmt, int jobs, std::ostream& out) {
  const double tau = to_double(parse_rational(a.tau));
  if (a.steps < 1) fail(ErrorKind::InvalidInput, "--steps must be at least 1");
  if (a.derivatives < 0 || a.derivatives > 3) fail(ErrorKind::InvalidInput, "--derivatives must be 0..3");
  std::function<double(double)> f;
  std::optional<double> lower;
  if (a.curve == "berger") {
    f = [tau](double s) { return berger_curve(tau, s); };
    lower = 0.0;
    if (!(a.from > 0)) fail(ErrorKind::InvalidInput, "Berger parameter must be positive");
  } else if (a.curve == "product") {
    f = [tau](double t) { return product_sphere_curve(tau, t); };
  } else {
    fail(ErrorKind::InvalidInput, "unknown curve '" + a.curve + "' (expected berger or product)");
  }
  std::vector<double> xs(a.steps);
  for (int i = 0; i < a.steps; ++i) xs[i] = a.steps == 1 ? a.from : a.from + (a.to - a.from) * i / (a.steps - 1);

  std::vector<CurveSample> samples(xs.size());
  std::vector<std::string> errors(xs.size());
  const auto opts = deriv_opts(a.step, a.min_step, lower);
  auto work = [&](size_t i) {
    try {
      samples[i] = curve_derivatives(f, xs[i], a.derivatives, opts);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  };
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(xs.size())));
  if (workers == 1) {
    for (size_t i = 0; i < xs.size(); ++i) work(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (size_t i = next++; i < xs.size(); i = next++) work(i);
      });
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (!e.empty()) fail(ErrorKind::IllConditioned, e);

  if (fmt == Format::Json) {
    json j;
    j["curve"] = a.curve;
    j["tau"] = ratio_parts(parse_rational(a.tau));
    j["samples"] = json::array();
    for (const auto& s : samples) j["samples"].push_back({{"param", s.param}, {"value", s.value}, {"derivatives", derivative_json(s)}});
    out << j.dump(2) << "\n";
  } else if (fmt == Format::Csv) {
    write_curve_csv(out, samples);
  } else {
    for (const auto& s : samples) {
      out << num(s.param) << "  " << num(s.value);
      for (const auto& d : s.d)
        if (d) out << "  " << num(d->value);
      out << "\n";
    }
  }
  return kOk;
}

// ---- grad ----

struct GradArgs {
  std::string algebra = "su2";
  std::vector<std::string> metric;
  std::string s2;
  std::string tau = "0";
  bool normalized = false;
  bool exact = false;
  bool bach = false;
};

template <class T>
MetricFrame<T> build_metric(int n, const std::vector<Rational>& v) {
  std::vector<T> c;
  for (const auto& x : v) c.push_back(scalar_from<T>(x));
  if (c.empty()) return MetricFrame<T>::identity(n);
  if (static_cast<int>(c.size()) == n) return MetricFrame<T>::diagonal(c);
  if (static_cast<int>(c.size()) == n * n) return MetricFrame<T>(n, c);
  fail(ErrorKind::InvalidInput, "--metric needs n diagonal entries or n*n components");
}

template <class T>
json grad_json(const GradArgs& a, const std::vector<Rational>& metric, const Rational& tau_q) {
  const auto alg = named_algebra<T>(a.algebra);
  const int n = alg.dim();
  const MetricFrame<T> g = build_metric<T>(n, metric);
  const T tau = scalar_from<T>(tau_q);
  const auto gamma = levi_civita(alg, g);
  const auto cd = curvature(alg, g);
  const Sym2<T> grad = a.normalized ? normalized_gradient(alg, g, tau) : gradient_F(alg, g, tau);
  const auto div = divergence(gradient_F(alg, g, tau), gamma, g);
  auto emit = [](const T& x) -> json {
    if constexpr (ScalarTraits<T>::exact) {
      return rational_json(x);
    } else {
      return x;
    }
  };
  auto matrix = [&](const Sym2<T>& h) {
    json rows = json::array();
    for (int i = 0; i < n; ++i) {
      json row = json::array();
      for (int j = 0; j < n; ++j) row.push_back(emit(h(i, j)));
      rows.push_back(row);
    }
    return rows;
  };
  const auto q = quadratic_invariants(cd);
  json j;
  j["algebra"] = a.algebra;
  j["n"] = n;
  j["exact"] = ScalarTraits<T>::exact;
  j["tau"] = ratio_parts(tau_q);
  j["normalized"] = a.normalized;
  j["gradient"] = matrix(grad);
  j["ricci"] = matrix(cd.ricci());
  j["scalar"] = emit(cd.scalar());
  j["invariants"] = {{"rm2", emit(q.rm2)}, {"ric2", emit(q.ric2)}, {"scal2", emit(q.scal2)}, {"weyl2", emit(q.weyl2)}};
  double dmax = 0;
  for (const auto& x : div) dmax = std::max(dmax, std::fabs(ScalarTraits<T>::to_double(x)));
  j["divergence_max_abs"] = dmax;
  j["critical_residual"] = relative_norm(normalized_gradient(alg, g, tau), g);
  if (a.bach) j["bach"] = matrix(bach_tensor(alg, g));
  return j;
}

int cmd_grad(const GradArgs& a, Format fmt, std::ostream& out) {
  const Rational tau = parse_rational(a.tau);
  std::vector<Rational> metric = parse_list(a.metric);
  if (!a.s2.empty()) {
    if (!metric.empty()) fail(ErrorKind::InvalidInput, "give either --metric or --s2");
    if (a.algebra != "su2") fail(ErrorKind::InvalidInput, "--s2 selects a Berger metric on su2");
    metric = {Rational(1), Rational(1), parse_rational(a.s2)};
  }
  const json j = a.exact ? grad_json<Rational>(a, metric, tau) : grad_json<double>(a, metric, tau);
  if (fmt == Format::Json) {
    out << j.dump(2) << "\n";
    return kOk;
  }
  auto cell = [](const json& v) { return v.is_string() ? v.get<std::string>() : num(v.get<double>()); };
  const int n = j["n"].get<int>();
  if (fmt == Format::Csv) {
    out << "i,j,gradient,ricci\n";
    for (int r = 0; r < n; ++r)
      for (int c = r; c < n; ++c) out << r << ',' << c << ',' << cell(j["gradient"][r][c]) << ',' << cell(j["ricci"][r][c]) << "\n";
    return kOk;
  }
  out << (a.normalized ? "normalized gradient" : "gradient") << " of F_tau, tau = " << rs(tau) << ", algebra " << a.algebra
      << "\n";
  for (int r = 0; r < n; ++r) {
    out << " ";
    for (int c = 0; c < n; ++c) out << "  " << cell(j["gradient"][r][c]);
    out << "\n";
  }
  out << "  R = " << cell(j["scalar"]) << ", |div| = " << num(j["divergence_max_abs"].get<double>())
      << ", critical residual = " << num(j["critical_residual"].get<double>()) << "\n";
  return kOk;
}

// ---- symbol ----

struct SymbolArgs {
  int dim = 0;
  std::string tau = "0";
  int trials = 100;
  bool trace_free = false;
  bool conformal_killing = false;
  std::vector<std::string> xi;
};

int cmd_symbol(const SymbolArgs& a, std::uint64_t seed, Format fmt, std::ostream& out) {
  if (a.dim == 0) fail(ErrorKind::InvalidInput, "--dim is required");
  if (a.conformal_killing) {
    std::vector<Rational> xi = parse_list(a.xi);
    if (xi.empty()) {
      xi.assign(a.dim, Rational(0));
      if (a.dim > 0) xi[0] = 1;
    }
    const auto v = conformal_killing_symbol(a.dim, xi);
    if (fmt == Format::Json) {
      out << conformal_killing_report(v, xi).dump(2) << "\n";
    } else if (fmt == Format::Csv) {
      out << "n,injective,determinant\n" << v.n << ',' << v.injective << ',' << rs(v.determinant) << "\n";
    } else {
      out << "conformal Killing symbol, n = " << v.n << ": " << (v.injective ? "injective" : "degenerate")
          << "; determinant " << rs(v.determinant) << "\n";
    }
    return kOk;
  }
  const Rational tau = parse_rational(a.tau);
  SymbolVerdict v;
  if (!a.xi.empty()) {
    const auto xi = parse_list(a.xi);
    if (static_cast<int>(xi.size()) != a.dim) fail(ErrorKind::InvalidInput, "--xi needs --dim entries");
    const auto p = probe_symbol(a.dim, tau, xi, a.trace_free);
    v.n = a.dim;
    v.tau = tau;
    v.trace_free_domain = a.trace_free;
    v.trials = 1;
    v.domain_dim = p.domain_dim;
    v.min_rank = p.rank;
    v.injective = p.rank == p.domain_dim;
    v.min_singular_value = p.min_singular_value;
    v.degenerate_tau = tau == degenerate_tau(a.dim);
    v.kernel_basis = p.kernel;
    if (!a.trace_free) {
      const SymbolOperator<Rational> op(a.dim, tau, xi);
      v.metric_in_kernel =
          op.apply(Sym2<Rational>::from_metric(MetricFrame<Rational>::identity(a.dim))) == Sym2<Rational>(a.dim);
    }
  } else {
    v = symbol_injectivity(a.dim, tau, a.trials, seed, a.trace_free);
  }
  if (fmt == Format::Json) {
    out << symbol_report(v).dump(2) << "\n";
  } else if (fmt == Format::Csv) {
    out << "n,tau,trials,trace_free,injective,min_rank,domain_dim,min_singular_value,metric_in_kernel\n";
    out << v.n << ',' << rs(v.tau) << ',' << v.trials << ',' << v.trace_free_domain << ',' << v.injective << ','
        << v.min_rank << ',' << v.domain_dim << ',' << num(v.min_singular_value) << ',' << v.metric_in_kernel << "\n";
  } else {
    out << verdict_summary(v) << "\n";
  }
  return kOk;
}

// ---- bishop ----

struct BishopArgs {
  int dim = 0;
  std::optional<double> vol_g, vol_gt, ftilde0;
  bool upper_ok = false;
  bool lower_ok = false;
  std::optional<double> berger;
  std::optional<double> radius;
};

int cmd_bishop(const BishopArgs& a, Format fmt, std::ostream& out) {
  int n = a.dim;
  double vol_g = 0, vol_gt = 0, f0 = 0;
  bool up = a.upper_ok, low = a.lower_ok;
  std::optional<RicciBoundFlags> flags;
  std::string source = "explicit";
  if (a.berger || a.radius) {
    if (a.berger && a.radius) fail(ErrorKind::InvalidInput, "give either --berger or --radius");
    CurvatureData<double> cd = [&] {
      if (a.berger) {
        if (!(*a.berger > 0)) fail(ErrorKind::InvalidInput, "--berger must be positive");
        n = 3;
        source = "berger";
        vol_gt = su2_reference_volume() * *a.berger;
        return curvature(named_algebra<double>("su2"), berger_metric<double>(*a.berger * *a.berger));
      }
      if (n == 0) fail(ErrorKind::InvalidInput, "--radius needs --dim");
      if (!(*a.radius > 0)) fail(ErrorKind::InvalidInput, "--radius must be positive");
      source = "round";
      vol_gt = sphere_volume(n) * std::pow(*a.radius, n);
      const auto g = MetricFrame<double>::identity(n);
      return decompose(constant_curvature(g, 1.0 / (*a.radius * *a.radius)), g);
    }();
    vol_g = sphere_volume(n);
    flags = ricci_bound_flags(cd);
    up = flags->upper_ok;
    low = flags->lower_ok;
    f0 = evaluate(Ftau(0.0), cd, vol_gt, true);
  } else {
    if (!a.vol_g || !a.vol_gt || !a.ftilde0 || n == 0) {
      fail(ErrorKind::InvalidInput, "give --dim, --vol-g, --vol-gt and --ftilde0, or --berger / --radius");
    }
    vol_g = *a.vol_g;
    vol_gt = *a.vol_gt;
    f0 = *a.ftilde0;
  }
  const BishopDeduction d = reverse_bishop(vol_g, n, vol_gt, up, low, f0);
  const double c = n * (n - 1.0) * (n - 1.0);
  const double lower_bound = c * std::pow(vol_g, 4.0 / n);
  const double upper_bound = c * std::pow(vol_gt, 4.0 / n);
  if (fmt == Format::Json) {
    json j;
    j["n"] = n;
    j["source"] = source;
    j["vol_g"] = vol_g;
    j["vol_gt"] = vol_gt;
    j["ftilde0"] = f0;
    j["lower_bound"] = lower_bound;
    j["upper_bound"] = upper_bound;
    j["ric_upper_ok"] = up;
    j["ric_lower_ok"] = low;
    if (flags) {
      j["ricci_eigenvalues"] = {{"min", flags->min_eigenvalue}, {"max", flags->max_eigenvalue}};
    } else {
      j["ricci_eigenvalues"] = nullptr;
    }
    j["deduction"] = to_string(d);
    out << j.dump(2) << "\n";
  } else if (fmt == Format::Csv) {
    out << "n,vol_g,vol_gt,ftilde0,ric_upper_ok,ric_lower_ok,deduction\n";
    out << n << ',' << num(vol_g) << ',' << num(vol_gt) << ',' << num(f0) << ',' << up << ',' << low << ','
        << to_string(d) << "\n";
  } else {
    out << to_string(d) << "\n";
    out << "  n = " << n << ", Vol(g) = " << num(vol_g) << ", Vol(g~) = " << num(vol_gt) << "\n";
    out << "  F~_0(g~) = " << num(f0) << " in [" << num(lower_bound) << ", " << num(upper_bound) << "]?\n";
    if (flags) {
      out << "  Ricci eigenvalues in [" << num(flags->min_eigenvalue) << ", " << num(flags->max_eigenvalue) << "]\n";
    }
    out << "  Ric <= (n-1) g~: " << (up ? "yes" : "no") << ", Ric > -(n-1) g~: " << (low ? "yes" : "no") << "\n";
  }
  return kOk;
}

// ---- verify ----

int cmd_verify(const std::string& filter, bool timings, const Catalog& cat, std::uint64_t seed, int jobs, Format fmt,
               std::ostream& out) {
  VerifyOptions o;
  o.filter = filter;
  o.seed = seed;
  o.jobs = jobs;
  const auto results = run_verification(cat, o);
  bool all = true;
  for (const auto& r : results) all = all && r.passed;
  if (fmt == Format::Json) {
    out << verify_report(results, timings).dump(2) << "\n";
  } else if (fmt == Format::Csv) {
    out << "id,passed,title,measured,expected" << (timings ? ",seconds" : "") << "\n";
    for (const auto& r : results) {
      out << r.info.id << ',' << r.passed << ',' << csv_field(r.info.title) << ',' << csv_field(r.measured) << ','
          << csv_field(r.expected);
      if (timings) out << ',' << num(r.seconds);
      out << "\n";
    }
  } else {
    int passed = 0;
    for (const auto& r : results) {
      passed += r.passed;
      out << (r.passed ? "PASS " : "FAIL ") << r.info.id << "  " << r.info.title;
      if (timings) out << "  (" << num(r.seconds) << " s)";
      out << "\n    measured: " << r.measured << "\n    expected: " << r.expected << "\n";
      for (const auto& f : r.failures) out << "    failure: " << f << "\n";
    }
    out << passed << "/" << results.size() << " criteria passed\n";
  }
  return all ? kOk : kVerifyFailed;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput:
    case ErrorKind::UnsupportedDimension: return kInvalidInput;
    case ErrorKind::InsufficientData:
    case ErrorKind::NotAvailable: return kInsufficientData;
    case ErrorKind::IllConditioned: return kIllConditioned;
  }
  return kInvalidInput;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quadratic curvature functional toolkit", "qcf"};
  app.require_subcommand(1);
  std::string format;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string catalog_path;
  app.add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--seed", seed, "seed for randomized checks (default 0)");
  app.add_option("--jobs", jobs, "worker threads for sweeps (default 1)");
  app.add_option("--catalog", catalog_path, "catalog JSON with spectral overrides (default: $QCF_CATALOG)");
  app.fallthrough();

  IntervalsArgs ia;
  auto* intervals = app.add_subcommand("intervals", "strict stability interval in tau, or a verdict at --tau");
  ia.model.add(intervals);
  intervals->add_flag("--all", ia.all, "every standard catalog model");
  intervals->add_option("--tau", ia.tau, "coupling (p/q or decimal)");
  intervals->add_option("--lambda1", ia.lambda1, "first nonzero function eigenvalue (hyperbolic models)");

  RigidityArgs ra;
  auto* rigidity = app.add_subcommand("rigidity", "exceptional tau values where TT kernels appear");
  ra.model.add(rigidity);
  rigidity->add_option("--count", ra.count, "number of TT eigenvalues to use (default 5)");
  rigidity->add_option("--mu", ra.mu, "extra TT eigenvalues, comma separated")->delimiter(',');
  rigidity->add_option("--lambda1", ra.lambda1, "first nonzero function eigenvalue (hyperbolic models)");

  BergerArgs ba;
  auto* berger = app.add_subcommand("berger", "Berger sphere curve: value, derivatives and critical points");
  berger->add_option("--tau", ba.tau, "coupling (p/q or decimal)");
  berger->add_option("--at", ba.at, "fiber scale s (default 1)");
  berger->add_option("--derivatives", ba.derivatives, "highest derivative order, 0..3 (default 3)");
  berger->add_option("--step", ba.step, "initial finite-difference step");
  berger->add_option("--min-step", ba.min_step, "smallest finite-difference step");

  CurveArgs ca;
  auto* curve = app.add_subcommand("curve", "sweep a variation curve (CSV by default)");
  curve->add_option("--curve", ca.curve, "berger or product");
  curve->add_option("--tau", ca.tau, "coupling (p/q or decimal)");
  curve->add_option("--from", ca.from, "first parameter");
  curve->add_option("--to", ca.to, "last parameter");
  curve->add_option("--steps", ca.steps, "number of samples");
  curve->add_option("--derivatives", ca.derivatives, "highest derivative order, 0..3 (default 2)");
  curve->add_option("--step", ca.step, "initial finite-difference step");
  curve->add_option("--min-step", ca.min_step, "smallest finite-difference step");

  GradArgs ga;
  auto* grad = app.add_subcommand("grad", "gradient of F_tau for a left-invariant metric");
  grad->add_option("--algebra", ga.algebra, "su2, heisenberg, sol, su2+R, heisenberg+R, sol+R, abelian<n>, hyperbolic<n>");
  grad->add_option("--metric", ga.metric, "n diagonal entries or n*n components, comma separated")->delimiter(',');
  grad->add_option("--s2", ga.s2, "Berger metric diag(1, 1, s^2) on su2");
  grad->add_option("--tau", ga.tau, "coupling (p/q or decimal)");
  grad->add_flag("--normalized", ga.normalized, "gradient of the volume-normalized functional");
  grad->add_flag("--exact", ga.exact, "exact rational arithmetic");
  grad->add_flag("--bach", ga.bach, "also the Bach tensor (n = 4)");

  SymbolArgs sa;
  auto* symbol = app.add_subcommand("symbol", "injectivity of the gauged principal symbol");
  symbol->add_option("--dim", sa.dim, "dimension");
  symbol->add_option("--tau", sa.tau, "coupling (p/q or decimal)");
  symbol->add_option("--trials", sa.trials, "random directions (default 100)");
  symbol->add_flag("--trace-free", sa.trace_free, "restrict to trace-free tensors");
  symbol->add_flag("--conformal-killing", sa.conformal_killing, "symbol of the conformal Killing operator instead");
  symbol->add_option("--xi", sa.xi, "explicit covector, comma separated")->delimiter(',');

  BishopArgs bsa;
  auto* bishop = app.add_subcommand("bishop", "reverse Bishop volume deduction");
  bishop->add_option("--dim", bsa.dim, "dimension");
  bishop->add_option("--vol-g", bsa.vol_g, "volume of the Einstein metric g");
  bishop->add_option("--vol-gt", bsa.vol_gt, "volume of the comparison metric");
  bishop->add_option("--ftilde0", bsa.ftilde0, "normalized int |Ric|^2 of the comparison metric");
  bishop->add_flag("--upper-ok", bsa.upper_ok, "caller asserts Ric <= (n-1) g~");
  bishop->add_flag("--lower-ok", bsa.lower_ok, "caller asserts Ric > -(n-1) g~");
  bishop->add_option("--berger", bsa.berger, "compare the Berger metric with fiber scale s to the unit S^3");
  bishop->add_option("--radius", bsa.radius, "compare the round sphere of this radius to the unit S^n");

  std::string filter;
  bool timings = false;
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("--filter", filter, "comma-separated criterion ids or tags");
  verify->add_flag("--timings", timings, "report per-criterion run times");

  auto* catalog_cmd = app.add_subcommand("catalog", "print the model catalog");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (jobs < 1) fail(ErrorKind::InvalidInput, "--jobs must be at least 1");
    const Catalog cat = load_catalog(catalog_path);
    if (*intervals) return cmd_intervals(ia, cat, parse_format(format, Format::Text), out);
    if (*rigidity) return cmd_rigidity(ra, cat, parse_format(format, Format::Text), out);
    if (*berger) return cmd_berger(ba, parse_format(format, Format::Text), out);
    if (*curve) return cmd_curve(ca, parse_format(format, Format::Csv), jobs, out);
    if (*grad) return cmd_grad(ga, parse_format(format, Format::Text), out);
    if (*symbol) return cmd_symbol(sa, seed, parse_format(format, Format::Text), out);
    if (*bishop) return cmd_bishop(bsa, parse_format(format, Format::Text), out);
    if (*verify) return cmd_verify(filter, timings, cat, seed, jobs, parse_format(format, Format::Text), out);
    if (*catalog_cmd) {
      if (parse_format(format, Format::Text) == Format::Json) {
        out << cat.to_json() << "\n";
      } else {
        for (const auto& m : Catalog::standard_models()) {
          out << to_string(m.kind()) << ' ' << m.label() << " n=" << m.dim() << " R=" << rs(m.scalar_curvature())
              << (cat.overridden(m) ? " (override)" : "") << "\n";
        }
      }
      return kOk;
    }
  } catch (const Error& e) {
    err << "qcf: " << to_string(e.kind()) << ": " << e.what() << "\n";
    if (e.kind() == ErrorKind::InvalidInput && std::string(e.what()).rfind("unknown model", 0) == 0) {
      print_model_listing(err);
    }
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "qcf: error: " << e.what() << "\n";
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace qcf::cli
