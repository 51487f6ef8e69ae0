#pragma once

// Command-line driver: configuration, experiment dispatch and result files.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "oscillab/phase.hpp"

namespace oscillab::cli {

/// Malformed configuration or flags; reported with exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const std::vector<std::string> kExperiments = {
    "validate-phase", "kernel-decay", "maximal",   "sweep-maximal",
    "sweep-operator", "check-main",   "check-lp",  "check-lemmas"};

struct RunConfig {
  std::string experiment;
  // Phase: x^degree (degree defaults to ell) or cos.
  std::string kind = "monomial";
  int ell = 2;
  std::optional<int> degree;
  /// Defaults to 0, or pi/2 for the cosine with ell = 3.
  std::optional<double> x0;
  double epsilon = 1.0;
  std::optional<double> u;
  double tol = 1e-9;

  std::vector<double> lambdas;
  // maximal
  std::string op;
  std::string weight = "const";
  std::string input;
  std::optional<double> step;
  std::optional<double> q;
  // kernel-decay
  int N = 4;
  // corpus sizes
  int weights = 40;
  int per_weight = 5;
  int random = 4;
  int count = 20;
  int per_kind = 4;
  std::vector<std::string> kinds{"const", "bump", "spike", "block", "mixed"};
  // Littlewood-Paley families
  int kmin = -2;
  int kmax = 8;
  std::vector<double> spacings{0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0};

  std::uint64_t seed = 0;
  std::filesystem::path output = "oscillab-out";
  bool emit_plots = true;

  Phase phase() const;
  FiniteTypeSpec spec() const;
  /// Throws ConfigError on out-of-range fields.
  void validate() const;
};

/// "64..4096" (doubling), "16,64,256" or a single value.
std::vector<double> parse_lambdas(const std::string& text);

/// Fields from a JSON document, on top of the defaults.
RunConfig config_from_json(const std::string& text);

/// Exit code 0 when every check passes, 1 on a failed check, 2 on a usage or
/// configuration error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace oscillab::cli
