#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace specbound {

enum class CheckStatus { satisfied, violated, not_applicable, error };

/// Which way the inequality points. The slack ratio is rhs/lhs for `at_most`,
/// lhs/rhs for `at_least` and `equal`, so a value >= 1 always means "holds".
enum class Orientation { at_most, at_least, equal };

const char* to_string(CheckStatus status);
const char* to_string(Orientation orientation);

struct Diagnostic {
  std::string key;
  std::variant<double, std::string, bool> value;
};

struct VerificationReport {
  std::string scenario;
  std::string check;
  Orientation orientation = Orientation::at_most;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  CheckStatus status = CheckStatus::error;
  std::vector<Diagnostic> diagnostics;

  bool satisfied() const { return status == CheckStatus::satisfied; }
  bool applicable() const {
    return status == CheckStatus::satisfied || status == CheckStatus::violated;
  }

  void add(std::string key, double value) { diagnostics.push_back({std::move(key), value}); }
  void add(std::string key, std::string value) {
    diagnostics.push_back({std::move(key), std::move(value)});
  }
  void add(std::string key, const char* value) { add(std::move(key), std::string(value)); }
  void add(std::string key, bool value) { diagnostics.push_back({std::move(key), value}); }

  /// First diagnostic with this key, or nullptr.
  const Diagnostic* find(const std::string& key) const;
};

/// Oriented slack ratio; +inf when the bounding side is infinite or the bounded side is zero.
double slack_ratio(Orientation orientation, double lhs, double rhs);

/// Marks a report not applicable with a `reason` diagnostic.
VerificationReport not_applicable(std::string scenario, std::string check, std::string reason);

/// A report for a scenario that threw; the message lands in `reason`.
VerificationReport failed(std::string scenario, std::string check, std::string message);

/// JSON array of report objects. Numbers carry 12 significant digits; non-finite
/// values are written as null.
void write_json(std::ostream& out, const std::vector<VerificationReport>& reports);

/// Columns scenario,check,lhs,rhs,slack,satisfied,diagnostics. `satisfied` is true, false
/// or na; diagnostics are `key=value` pairs joined by ';'.
void write_csv(std::ostream& out, const std::vector<VerificationReport>& reports);

std::string report_row_json(const VerificationReport& report);

}  // namespace specbound
