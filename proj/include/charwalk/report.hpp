#pragma once

// Experiment reports: verdict lists, result tables, and their CSV / JSON
// forms. Every real number placed in a report is rounded to 12 significant
// digits first, so the JSON text prints at most 12 digits and parses back to
// the identical value.

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace charwalk {

inline constexpr std::string_view kSpecVersion = "1.0.0";

/// x rounded to 12 significant digits.
double round_sig12(double x);
/// Locale-independent 12-significant-digit text ("%.12g" style).
std::string format_real(double x);
/// JSON number holding round_sig12(x); non-finite values become null.
nlohmann::json real(double x);

struct Verdict {
  std::string id;
  bool pass = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;  // scalars only

  friend bool operator==(const Table&, const Table&) = default;
};

struct ExperimentReport {
  std::string spec_version{kSpecVersion};
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json summary = nlohmann::json::object();
  std::vector<Table> tables;  // tables.front() is the CSV payload
  std::vector<Verdict> verdicts;
  double wall_time = 0.0;

  bool all_pass() const noexcept;

  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

nlohmann::json to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const nlohmann::json& j);

/// Pretty JSON text (2-space indent, trailing newline).
std::string emit_json(const ExperimentReport& report);
/// Same, with wall_time forced to 0 for byte comparisons.
std::string emit_json_payload(const ExperimentReport& report);
ExperimentReport parse_json(std::string_view text);

/// RFC 4180 style: header row, comma separated, CRLF-free "\n" line ends,
/// fields quoted only when they contain a comma, quote or newline.
std::string emit_csv(const Table& table);

}  // namespace charwalk
