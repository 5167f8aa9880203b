#include "report.hpp"

#include <cstdio>

namespace qcf::cli {

json rational_json(const Rational& x) { return to_string(x); }

json ratio_parts(const Rational& x) {
  json j;
  j["num"] = numerator(x).str();
  j["den"] = denominator(x).str();
  return j;
}

json model_json(const ModelSpace& model) {
  json j;
  j["model"] = to_string(model.kind());
  j["label"] = model.label();
  j["n"] = model.dim();
  j["R"] = rational_json(model.scalar_curvature());
  return j;
}

namespace {

json bound_json(const TauBound& b) { return b.value ? rational_json(*b.value) : json(nullptr); }

json strings(const std::vector<std::string>& v) {
  json a = json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

json part_json(const StabilityVerdict& v) {
  json j;
  j["verdict"] = to_string(v.kind);
  j["witness"] = v.witness ? rational_json(*v.witness) : json(nullptr);
  j["provenance"] = strings(v.provenance);
  j["notes"] = strings(v.notes);
  return j;
}

}  // namespace

json interval_report(const ModelSpace& model, const TauInterval& iv) {
  json j = model_json(model);
  j["empty"] = iv.empty;
  j["lo"] = bound_json(iv.lo);
  j["hi"] = bound_json(iv.hi);
  j["lo_open"] = iv.lo.open;
  j["hi_open"] = iv.hi.open;
  j["provenance"] = {{"lo", iv.lo.provenance}, {"hi", iv.hi.provenance}};
  j["strict"] = iv.strict;
  j["optimality"] = iv.upper_optimality;
  j["notes"] = strings(iv.notes);
  return j;
}

json verdict_report(const ModelSpace& model, const Rational& tau, const VerdictParts& parts) {
  json j = model_json(model);
  j["tau"] = ratio_parts(tau);
  j["verdict"] = to_string(parts.combined.kind);
  j["witnesses"] = json::array();
  if (parts.combined.witness) {
    const bool tt = parts.combined.kind == VerdictKind::FailsTT;
    j["witnesses"].push_back({{"kind", tt ? "tt_eigenvalue" : "function_eigenvalue"},
                              {"value", rational_json(*parts.combined.witness)}});
  }
  j["provenance"] = strings(parts.combined.provenance);
  j["notes"] = strings(parts.combined.notes);
  j["tt"] = part_json(parts.tt);
  j["conformal"] = part_json(parts.conformal);
  return j;
}

json rigidity_report(const ModelSpace& model, const RigidityReport& rep, const std::optional<BachVerdict>& bach) {
  json j = model_json(model);
  j["exceptional"] = json::array();
  for (const auto& e : rep.taus) {
    j["exceptional"].push_back({{"tau", rational_json(e.tau)},
                                {"mu", rational_json(e.mu)},
                                {"kernel", e.kernel_note},
                                {"conformal_kernel_trivial", to_string(e.conformal_kernel_trivial)},
                                {"conformal_note", e.conformal_note}});
  }
  j["einstein_deformations"] = rep.einstein_deformations;
  j["notes"] = strings(rep.notes);
  if (bach) {
    json b;
    b["rigid"] = to_string(bach->rigid);
    b["minimizer"] = part_json(bach->minimizer);
    b["notes"] = strings(bach->notes);
    j["bach"] = b;
  } else {
    j["bach"] = nullptr;
  }
  return j;
}

std::string verdict_summary(const SymbolVerdict& v) {
  char buf[96];
  if (v.injective) {
    std::snprintf(buf, sizeof buf, "injective; min singular value %.6g over %d trials", v.min_singular_value, v.trials);
    return buf;
  }
  if (v.metric_in_kernel && v.kernel_basis.size() == 1) return "degenerate; kernel contains the metric direction";
  std::snprintf(buf, sizeof buf, "degenerate; kernel dimension %d", v.domain_dim - v.min_rank);
  return buf;
}

json symbol_report(const SymbolVerdict& v) {
  json j;
  j["n"] = v.n;
  j["tau"] = ratio_parts(v.tau);
  j["trace_free_domain"] = v.trace_free_domain;
  j["trials"] = v.trials;
  j["domain_dim"] = v.domain_dim;
  j["injective"] = v.injective;
  j["min_rank"] = v.min_rank;
  j["min_singular_value"] = v.min_singular_value;
  j["degenerate_tau"] = v.degenerate_tau;
  j["metric_in_kernel"] = v.metric_in_kernel;
  j["summary"] = verdict_summary(v);
  j["kernel_basis"] = json::array();
  for (const auto& k : v.kernel_basis) {
    json row = json::array();
    for (const auto& x : k) row.push_back(rational_json(x));
    j["kernel_basis"].push_back(row);
  }
  return j;
}

json conformal_killing_report(const ConformalKillingVerdict& v, const std::vector<Rational>& xi) {
  json j;
  j["n"] = v.n;
  j["xi"] = json::array();
  for (const auto& x : xi) j["xi"].push_back(rational_json(x));
  j["injective"] = v.injective;
  j["determinant"] = rational_json(v.determinant);
  j["eigenvalues"] = v.eigenvalues;
  return j;
}

json derivative_json(const CurveSample& s) {
  json j = json::array();
  for (int k = 0; k < 3; ++k) {
    if (!s.d[k]) continue;
    j.push_back({{"order", k + 1}, {"value", s.d[k]->value}, {"error", s.d[k]->error}});
  }
  return j;
}

json verify_report(const std::vector<CriterionResult>& results, bool timings) {
  json j;
  bool all = true;
  j["criteria"] = json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    json c;
    c["id"] = r.info.id;
    c["title"] = r.info.title;
    c["tags"] = strings(r.info.tags);
    c["passed"] = r.passed;
    c["measured"] = r.measured;
    c["expected"] = r.expected;
    c["failures"] = strings(r.failures);
    if (timings) c["seconds"] = r.seconds;
    j["criteria"].push_back(c);
  }
  j["passed"] = all;
  return j;
}

}  // namespace qcf::cli
