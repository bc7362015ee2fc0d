#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hlim/fp.hpp"
#include "json.hpp"

namespace hlim::cli {

inline constexpr const char* kArtifactVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

/// A malformed job; `field` names the offending JobSpec field.
class SpecError : public ValidationError {
 public:
  SpecError(std::string field, const std::string& message)
      : ValidationError(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct JobSpec {
  std::string command;
  std::string group;
  std::uint64_t p = 0;
  std::string module;
  std::string functor = "atomic";
  std::string objects = "all-p";
  std::size_t n_degrees = 3;
  std::string output;
  std::string route = "auto";  // lambda: auto | bar | subgroup-complex
  std::string suite;           // verify
  std::string family;          // tower, corpus
  std::size_t level = 0;       // corpus truncation level, tower window top
  std::string op;              // corpus
  std::size_t degree = 1;      // tower
  std::string theorem;         // spectral: quotient | lambda-quotient | product
  std::string normal;          // spectral quotients
};

/// The seven job commands; `describe` is separate.
const std::vector<std::string>& command_names();

nlohmann::json to_json(const JobSpec& spec);
/// Unknown keys and wrong types are SpecErrors.
JobSpec spec_from_json(const nlohmann::json& j);
/// Checks the fields the command needs; throws SpecError.
void validate(const JobSpec& spec);

/// Runs a validated job. The report carries the input, per-degree results
/// with provenance and safe window, the extrapolation tag (null for exact
/// results), the artifact version and, under "timings" only, wall-clock data.
nlohmann::json run(const JobSpec& spec);
/// True when the report records a failed invariant (a failed suite or a
/// violated convergence check).
bool report_failed(const nlohmann::json& report);
std::string summary(const nlohmann::json& report);

/// Input grammar and report schema.
std::string describe_text();
nlohmann::json describe_json();
JobSpec sample_spec();

/// Exit status: 0 on success, 2 on a malformed job, 1 on a failed invariant
/// or any other error.
int main(int argc, char** argv);

}  // namespace hlim::cli
