#pragma once

// JSON report builders shared by the command line tool and its tests. Exact
// values are emitted as "p/q" strings.

#include "qcf/catalog.hpp"
#include "qcf/functionals.hpp"
#include "qcf/jacobi.hpp"
#include "qcf/stability.hpp"
#include "qcf/verify.hpp"

#include <json.hpp>

namespace qcf::cli {

using json = nlohmann::ordered_json;

json rational_json(const Rational& x);
json ratio_parts(const Rational& x);  // {"num": "p", "den": "q"}

json model_json(const ModelSpace& model);

json interval_report(const ModelSpace& model, const TauInterval& iv);

struct VerdictParts {
  StabilityVerdict combined;
  StabilityVerdict tt;
  StabilityVerdict conformal;
};
json verdict_report(const ModelSpace& model, const Rational& tau, const VerdictParts& parts);

json rigidity_report(const ModelSpace& model, const RigidityReport& rep, const std::optional<BachVerdict>& bach);

json symbol_report(const SymbolVerdict& v);
json conformal_killing_report(const ConformalKillingVerdict& v, const std::vector<Rational>& xi);

json derivative_json(const CurveSample& s);

json verify_report(const std::vector<CriterionResult>& results, bool timings);

std::string verdict_summary(const SymbolVerdict& v);

}  // namespace qcf::cli
