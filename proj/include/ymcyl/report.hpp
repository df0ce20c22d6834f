#pragma once

// Structured record of one verification experiment.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ymcyl {

inline constexpr const char* kArtifactVersion = "0.3.0";
inline constexpr int kReportSchemaVersion = 1;

/// One check. `score` is a z-score for Monte Carlo rows and a residual for
/// deterministic rows; the row passes when |score| <= threshold. Rows without
/// a threshold are informational and always pass.
struct CheckRow {
  std::string name;
  double estimate = 0.0;
  double target = 0.0;
  double error_bar = 0.0;
  double score = 0.0;
  std::optional<double> threshold;
  bool pass = true;
};

struct VerificationReport {
  std::string experiment;
  std::uint64_t seed = 0;
  std::string version = kArtifactVersion;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<CheckRow> rows;
  /// Not emitted; kept out of the files so they are byte-stable.
  double wall_seconds = 0.0;

  void add_input(std::string key, std::string value) { inputs.emplace_back(std::move(key), std::move(value)); }
  /// Adds a row with pass = |score| <= threshold.
  CheckRow& add_check(std::string name, double estimate, double target, double error_bar, double score,
                      double threshold);
  CheckRow& add_info(std::string name, double estimate, double target = 0.0, double error_bar = 0.0,
                     double score = 0.0);
  /// Appends all rows of `other`, prefixing their names.
  void merge(const VerificationReport& other, const std::string& prefix);
  bool passed() const;
};

/// (a - b) / sqrt(ea^2 + eb^2), and 0 when both errors and the difference vanish.
double z_score(double a, double ea, double b, double eb);

}  // namespace ymcyl
