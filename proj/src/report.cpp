#include "ymcyl/report.hpp"

#include <cmath>
#include <limits>

namespace ymcyl {

CheckRow& VerificationReport::add_check(std::string name, double estimate, double target, double error_bar,
                                        double score, double threshold) {
  CheckRow row{std::move(name), estimate, target, error_bar, score, threshold, std::abs(score) <= threshold};
  rows.push_back(std::move(row));
  return rows.back();
}

CheckRow& VerificationReport::add_info(std::string name, double estimate, double target, double error_bar,
                                       double score) {
  rows.push_back(CheckRow{std::move(name), estimate, target, error_bar, score, std::nullopt, true});
  return rows.back();
}

void VerificationReport::merge(const VerificationReport& other, const std::string& prefix) {
  for (CheckRow row : other.rows) {
    row.name = prefix + row.name;
    rows.push_back(std::move(row));
  }
}

bool VerificationReport::passed() const {
  for (const auto& row : rows)
    if (!row.pass) return false;
  return true;
}

double z_score(double a, double ea, double b, double eb) {
  const double diff = a - b;
  const double err = std::sqrt(ea * ea + eb * eb);
  if (err == 0.0) return diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
  return diff / err;
}

}  // namespace ymcyl
