#include "specbound/report.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "specbound/numerics/format.hpp"

namespace specbound {

namespace {

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string json_number(double v) {
  return std::isfinite(v) ? numerics::format_number(v) : "null";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string diagnostic_text(const Diagnostic& d) {
  if (const auto* x = std::get_if<double>(&d.value)) return numerics::format_number(*x);
  if (const auto* b = std::get_if<bool>(&d.value)) return *b ? "true" : "false";
  return std::get<std::string>(d.value);
}

std::string diagnostic_json(const Diagnostic& d) {
  if (const auto* x = std::get_if<double>(&d.value)) {
    // Non-finite diagnostics keep their meaning as strings ("inf" marks a divergent norm).
    return std::isfinite(*x) ? numerics::format_number(*x) : json_string(numerics::format_number(*x));
  }
  if (const auto* b = std::get_if<bool>(&d.value)) return *b ? "true" : "false";
  return json_string(std::get<std::string>(d.value));
}

}  // namespace

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::satisfied:
      return "satisfied";
    case CheckStatus::violated:
      return "violated";
    case CheckStatus::not_applicable:
      return "not_applicable";
    case CheckStatus::error:
      return "error";
  }
  return "error";
}

const char* to_string(Orientation orientation) {
  switch (orientation) {
    case Orientation::at_most:
      return "lhs<=rhs";
    case Orientation::at_least:
      return "lhs>=rhs";
    case Orientation::equal:
      return "lhs==rhs";
  }
  return "";
}

const Diagnostic* VerificationReport::find(const std::string& key) const {
  for (const auto& d : diagnostics) {
    if (d.key == key) return &d;
  }
  return nullptr;
}

double slack_ratio(Orientation orientation, double lhs, double rhs) {
  const double top = orientation == Orientation::at_most ? rhs : lhs;
  const double bottom = orientation == Orientation::at_most ? lhs : rhs;
  if (bottom == 0.0) return top >= 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return top / bottom;
}

VerificationReport not_applicable(std::string scenario, std::string check, std::string reason) {
  VerificationReport r;
  r.scenario = std::move(scenario);
  r.check = std::move(check);
  r.lhs = std::numeric_limits<double>::quiet_NaN();
  r.rhs = std::numeric_limits<double>::quiet_NaN();
  r.slack = std::numeric_limits<double>::quiet_NaN();
  r.status = CheckStatus::not_applicable;
  r.add("status", to_string(r.status));
  r.add("reason", std::move(reason));
  return r;
}

VerificationReport failed(std::string scenario, std::string check, std::string message) {
  VerificationReport r = not_applicable(std::move(scenario), std::move(check), std::move(message));
  r.status = CheckStatus::error;
  r.diagnostics.front().value = std::string(to_string(r.status));
  return r;
}

std::string report_row_json(const VerificationReport& r) {
  std::ostringstream out;
  out << "{\"scenario\":" << json_string(r.scenario) << ",\"check\":" << json_string(r.check)
      << ",\"lhs\":" << json_number(r.lhs) << ",\"rhs\":" << json_number(r.rhs)
      << ",\"slack\":" << json_number(r.slack) << ",\"satisfied\":";
  if (r.applicable()) {
    out << (r.satisfied() ? "true" : "false");
  } else {
    out << "null";
  }
  out << ",\"diagnostics\":{";
  bool first = true;
  for (const auto& d : r.diagnostics) {
    if (!first) out << ',';
    first = false;
    out << json_string(d.key) << ':' << diagnostic_json(d);
  }
  out << "}}";
  return out.str();
}

void write_json(std::ostream& out, const std::vector<VerificationReport>& reports) {
  out << "[\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    out << "  " << report_row_json(reports[i]) << (i + 1 < reports.size() ? ",\n" : "\n");
  }
  out << "]\n";
}

void write_csv(std::ostream& out, const std::vector<VerificationReport>& reports) {
  out << "scenario,check,lhs,rhs,slack,satisfied,diagnostics\n";
  for (const auto& r : reports) {
    std::string diagnostics;
    for (const auto& d : r.diagnostics) {
      if (!diagnostics.empty()) diagnostics += ';';
      diagnostics += d.key + '=' + diagnostic_text(d);
    }
    const char* satisfied = r.applicable() ? (r.satisfied() ? "true" : "false") : "na";
    out << csv_field(r.scenario) << ',' << csv_field(r.check) << ','
        << numerics::format_number(r.lhs) << ',' << numerics::format_number(r.rhs) << ','
        << numerics::format_number(r.slack) << ',' << satisfied << ',' << csv_field(diagnostics)
        << '\n';
  }
}

}  // namespace specbound
