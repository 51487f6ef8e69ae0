#pragma once

// Self-contained log-log line plots.

#include <optional>
#include <string>
#include <vector>

namespace oscillab::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  /// Optional fitted line y = e^intercept x^slope drawn dashed.
  std::optional<std::pair<double, double>> fit;
};

/// Points with x <= 0 or y <= 0 are skipped.
std::string loglog(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                   const std::vector<Series>& series);

}  // namespace oscillab::svg
