#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace hlim {

struct SuiteCase {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct SuiteReport {
  std::string suite;
  std::string title;
  bool passed = false;
  std::string error;  // set when the suite could not run
  std::vector<SuiteCase> cases;
  double seconds = 0;

  std::size_t passed_cases() const;
  nlohmann::json to_json(bool with_timings = true) const;
};

struct SuiteInfo {
  std::string id;
  std::string title;
};
std::vector<SuiteInfo> registered_suites();

/// Runs one suite. Unknown or empty ids give a failed report with `error`
/// set; a throwing check becomes a failed case.
SuiteReport run_suite(const std::string& id);
/// Runs the suites concurrently; reports come back in the order of `ids`.
std::vector<SuiteReport> run_suites(const std::vector<std::string>& ids);

}  // namespace hlim
