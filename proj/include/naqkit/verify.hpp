#pragma once
// Fixture-driven verification suites behind `naqkit verify` and the
// acceptance harness: realizer identity, exact truncation, description+
// selection, pool stability, pigeonhole, variant panels and GC selection.

#include "naqkit/complexity.hpp"
#include "naqkit/io.hpp"

#include <string>
#include <vector>

namespace naqkit {

struct CheckResult {
  std::string id;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  std::vector<CheckResult> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

struct VerifyOptions {
  std::string fixtures_dir = "data/fixtures";
  SearchCaps caps{20, kDefaultStepBudget};
  uint64_t burden_max_len = 24;
  uint64_t seed = 20260810;
};

const std::vector<std::string>& verify_suite_names();

// Runs one named suite; throws DataError for unknown names or missing
// fixture files.
SuiteResult run_suite(const std::string& name, const VerifyOptions& options);

Json suite_to_json(const SuiteResult& result);

// The shipped identity fixture corpus (id, instance, predicate) loader.
std::vector<std::pair<Instance, ValidityPredicate>> load_identity_corpus(
    const std::string& path);

}  // namespace naqkit
