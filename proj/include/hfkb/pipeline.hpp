#pragma once

// End-to-end runs: validate, compute the base complex, lift, build the
// Borel complex and collect the verdicts into a JSON report.

#include "hfkb/diagram.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace hfkb {

class ValidationFailed : public std::runtime_error {
 public:
  explicit ValidationFailed(const std::string& what) : std::runtime_error(what) {}
};

enum class LiftMode { automatic, on, off };

struct ComputeOptions {
  LiftMode lift = LiftMode::automatic;  // automatic: lift genus-0 bases only
  int max_domain_coeff = 0;
  bool timing = false;
  bool checks = false;
};

struct Input {
  std::string description;
  Diagram diagram;
};

Input two_bridge_input(int p, int q);
Input grid_input(const std::string& path);
Input diagram_input(const std::string& path);

// Throws ValidationFailed (invalid or non-nice diagram, grid with lift),
// ParseError, or the module errors for internal inconsistencies.
nlohmann::json compute_report(const Input& in, const ComputeOptions& opts);

bool all_verdicts_hold(const nlohmann::json& report);
std::string render_text(const nlohmann::json& report);

struct ChecksOptions {
  int max_n = 5;
  std::optional<std::string> fixture;  // path to expected values
};

// Runs the identity suite; "passed" is false on any failure.
nlohmann::json run_checks(const ChecksOptions& opts);
std::string render_checks_text(const nlohmann::json& checks);

}  // namespace hfkb
