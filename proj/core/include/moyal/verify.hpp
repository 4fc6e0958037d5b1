#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace moyal {

struct VerifyCase {
  std::string name;
  bool pass = false;
  std::string counterexample;  // empty when the case passed
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<VerifyCase> cases;

  bool all_pass() const;
};

// Suites: "algebra", "covariance", "kick", "starexp" and "all" (their
// concatenation). Runs are deterministic in the seed: the same seed yields a
// byte-identical JSON report. Throws UnknownSuiteError for other names.
VerifyReport run_suite(const std::string& name, std::uint64_t seed);

const std::vector<std::string>& suite_names();

// {"suite":...,"seed":...,"cases":[{"name":...,"pass":...,"counterexample":...|null}]}
std::string report_to_json_string(const VerifyReport& report);

}  // namespace moyal
