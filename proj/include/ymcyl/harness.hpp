#pragma once

// Named, seeded experiments and their report files.
//
// A config is a text file of `key = value` lines ('#' starts a comment).
// `experiment` and `seed` are common to all experiments; every other key
// must belong to the chosen experiment. Values given on the command line
// replace those from the file.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ymcyl/report.hpp"

namespace ymcyl {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : "field '" + field + "': " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 1;
  std::map<std::string, std::string> values;

  /// Parses `key = value` lines; `source` labels error messages.
  static ExperimentConfig parse(std::istream& in, const std::string& source = "config");
  static ExperimentConfig load(const std::string& path);
  /// "key=value"; the experiment and seed keys are accepted too.
  void set(const std::string& assignment);
};

struct ExperimentInfo {
  std::string name;
  /// module::operation exercised by the experiment.
  std::string operation;
  std::string summary;
  /// Every accepted key with its default value.
  std::map<std::string, std::string> defaults;
};

const std::vector<ExperimentInfo>& experiments();
const ExperimentInfo& find_experiment(const std::string& name);

/// Validates the config against the experiment's keys and runs it.
VerificationReport run(const ExperimentConfig& config);

enum class ReportFormat { Csv, Json };
ReportFormat parse_format(const std::string& name);

void emit(const VerificationReport& report, ReportFormat format, std::ostream& out);
/// Writes to `path`; throws IoError if the file cannot be written.
void emit(const VerificationReport& report, ReportFormat format, const std::string& path);
VerificationReport read_json_report(std::istream& in);

}  // namespace ymcyl
