// Acceptance gate: one PASS/FAIL line per criterion. Tolerances live in the
// criteria themselves (core/src/verify.cpp).

#include "qcf/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

namespace {

const char* kCorruptedCatalog = R"({
  "schema_version": 1,
  "models": [
    {"model": "cp", "param": 2,
     "tt": {"least": "30", "known": ["30"], "tail": "30", "tail_strict": true}}
  ]
})";

void print(const qcf::CriterionResult& r) {
  std::printf("%s %-4s %s\n", r.passed ? "PASS" : "FAIL", r.info.id.c_str(), r.info.title.c_str());
  if (r.info.id == "10e")
    std::printf("       measured: %.2f s\n       expected: %s\n", r.seconds, r.expected.c_str());
  else
    std::printf("       measured: %s\n       expected: %s\n", r.measured.c_str(), r.expected.c_str());
  for (const auto& f : r.failures) std::printf("       failure: %s\n", f.c_str());
}

// A catalog with a corrupted CP^2 least TT eigenvalue must be rejected by the
// complex-projective cross-check, naming the model.
int fault_injection() {
  const auto catalog = qcf::Catalog::from_json_text(kCorruptedCatalog);
  qcf::VerifyOptions opts;
  opts.filter = "11a";
  const auto results = qcf::run_verification(catalog, opts);
  bool rejected = false;
  for (const auto& r : results) {
    print(r);
    for (const auto& f : r.failures) rejected = rejected || f.find("CP^2") != std::string::npos;
  }
  std::printf("%s fault-injection  corrupted CP^2 TT eigenvalue 30 is rejected\n", rejected ? "PASS" : "FAIL");
  return rejected ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcf acceptance suite", "qcf_acceptance"};
  std::string only;
  bool inject = false;
  std::uint64_t seed = 0;
  int jobs = 1;
  app.add_option("--only", only, "run and gate on a single criterion id");
  app.add_flag("--fault-injection", inject, "check that a corrupted catalog is rejected");
  app.add_option("--seed", seed, "seed for randomized criteria");
  app.add_option("--jobs", jobs, "worker threads");
  CLI11_PARSE(app, argc, argv);

  try {
    if (inject) return fault_injection();

    qcf::VerifyOptions opts;
    opts.seed = seed;
    opts.jobs = jobs;
    // The runtime criterion times the whole suite, so it never runs alone.
    if (!only.empty() && only != "10e") opts.filter = only;
    const auto results = qcf::run_verification(qcf::Catalog::builtin(), opts);

    int passed = 0;
    int failed = 0;
    for (const auto& r : results) {
      if (!only.empty() && r.info.id != only) continue;
      print(r);
      (r.passed ? passed : failed)++;
    }
    if (passed + failed == 0) {
      std::fprintf(stderr, "no criterion with id '%s'\n", only.c_str());
      return 2;
    }
    std::printf("%d/%d criteria passed\n", passed, passed + failed);
    return failed == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "qcf_acceptance: %s\n", e.what());
    return 2;
  }
}
