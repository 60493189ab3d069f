#include "charwalk/report.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "charwalk/errors.hpp"

namespace charwalk {

using nlohmann::json;

std::string format_real(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

double round_sig12(double x) {
  if (!std::isfinite(x)) return x;
  const std::string text = format_real(x);
  double out = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), out);
  return out;
}

json real(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round_sig12(x);
}

bool ExperimentReport::all_pass() const noexcept {
  for (const auto& v : verdicts) {
    if (!v.pass) return false;
  }
  return true;
}

json to_json(const ExperimentReport& report) {
  json tables = json::array();
  for (const auto& t : report.tables) {
    tables.push_back({{"name", t.name}, {"columns", t.columns}, {"rows", t.rows}});
  }
  json verdicts = json::array();
  for (const auto& v : report.verdicts) {
    verdicts.push_back({{"id", v.id},
                        {"pass", v.pass},
                        {"measured", real(v.measured)},
                        {"threshold", real(v.threshold)},
                        {"detail", v.detail}});
  }
  return {{"spec_version", report.spec_version},
          {"inputs", report.inputs},
          {"outputs", {{"summary", report.summary}, {"tables", tables}}},
          {"verdicts", verdicts},
          {"wall_time", real(report.wall_time)}};
}

ExperimentReport report_from_json(const json& j) {
  try {
    ExperimentReport report;
    report.spec_version = j.at("spec_version").get<std::string>();
    report.inputs = j.at("inputs");
    const json& outputs = j.at("outputs");
    report.summary = outputs.at("summary");
    for (const auto& t : outputs.at("tables")) {
      Table table;
      table.name = t.at("name").get<std::string>();
      table.columns = t.at("columns").get<std::vector<std::string>>();
      table.rows = t.at("rows").get<std::vector<std::vector<json>>>();
      report.tables.push_back(std::move(table));
    }
    for (const auto& v : j.at("verdicts")) {
      report.verdicts.push_back({v.at("id").get<std::string>(), v.at("pass").get<bool>(),
                                 v.at("measured").is_null() ? NAN : v.at("measured").get<double>(),
                                 v.at("threshold").is_null() ? NAN : v.at("threshold").get<double>(),
                                 v.at("detail").get<std::string>()});
    }
    report.wall_time = j.at("wall_time").is_null() ? 0.0 : j.at("wall_time").get<double>();
    return report;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed report JSON: ") + e.what());
  }
}

std::string emit_json(const ExperimentReport& report) { return to_json(report).dump(2) + "\n"; }

std::string emit_json_payload(const ExperimentReport& report) {
  ExperimentReport copy = report;
  copy.wall_time = 0.0;
  return emit_json(copy);
}

ExperimentReport parse_json(std::string_view text) {
  json j = json::parse(text.begin(), text.end(), nullptr, false);
  if (j.is_discarded()) throw InvalidInput("report text is not valid JSON");
  return report_from_json(j);
}

namespace {

std::string csv_field(const json& cell) {
  std::string text;
  if (cell.is_string()) text = cell.get<std::string>();
  else if (cell.is_number_float()) text = format_real(cell.get<double>());
  else if (cell.is_null()) text = "";
  else text = cell.dump();

  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

std::string emit_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += csv_field(table.columns[i]);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_field(row[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace charwalk
