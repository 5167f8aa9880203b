#pragma once

// Self-verification suite: every closed-form claim the library encodes,
// checked against an independent computation.

#include "qcf/catalog.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qcf {

struct CriterionInfo {
  std::string id;     // "1", "7a", "catalog", ...
  std::string title;
  std::vector<std::string> tags;
};

struct CriterionResult {
  CriterionInfo info;
  bool passed = false;
  std::string measured;
  std::string expected;
  std::vector<std::string> failures;  // one line per failed sub-check
  double seconds = 0;
};

struct VerifyOptions {
  // Comma-separated ids or tags; empty selects everything.
  std::string filter;
  std::uint64_t seed = 0;
  int jobs = 1;
};

std::vector<CriterionInfo> list_criteria();

// True when the criterion matches one of the comma-separated filter terms
// (id, id prefix such as "7" for "7a", or tag).
bool matches_filter(const CriterionInfo& info, const std::string& filter);

// Results come back in list_criteria() order regardless of jobs.
std::vector<CriterionResult> run_verification(const Catalog& catalog, const VerifyOptions& opts);

}  // namespace qcf
