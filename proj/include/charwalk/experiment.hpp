#pragma once

// Command dispatch behind the charwalk CLI and the Python module.
//
// A config is a command name plus flag-name -> text parameters. Validation
// fills every default into the parameter map, so the echoed inputs of a
// report are a complete config that reproduces the report.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "charwalk/errors.hpp"
#include "charwalk/report.hpp"

namespace charwalk {

/// Bad command, unknown flag or unparsable value (exit status 2).
class ConfigError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

enum class Command { WalkExact, WalkMc, CharDist, BlockCensus, PrimeWalk, WeilCheck, Verify };
enum class OutputFormat { Csv, Json };
enum class VerifyLevel { Fast, Full };

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

std::string_view to_string(Command command) noexcept;
Command parse_command(std::string_view name);
VerifyLevel parse_verify_level(std::string_view name);
OutputFormat parse_output_format(std::string_view name);

/// Flags accepted by a command, in documentation order.
std::span<const std::string_view> command_parameters(Command command);

struct ExperimentConfig {
  Command command = Command::Verify;
  std::map<std::string, std::string> parameters;

  bool has(const std::string& key) const { return parameters.contains(key); }
  const std::string& text(const std::string& key) const;
  std::int64_t integer(const std::string& key) const;
  std::uint64_t unsigned_integer(const std::string& key) const;  // accepts 0x prefix
  double real_number(const std::string& key) const;
  std::vector<std::int64_t> integer_list(const std::string& key) const;
  OutputFormat format() const;
  unsigned threads() const;
};

/// Checks flag names, fills defaults and validates values against the
/// target operation's preconditions. Throws ConfigError / InvalidInput.
ExperimentConfig make_config(std::string_view command, std::map<std::string, std::string> parameters);
ExperimentConfig config_from_json(const nlohmann::json& inputs);
nlohmann::json config_to_json(const ExperimentConfig& config);

/// Runs the command. Invalid parameters raise ConfigError/InvalidInput, size
/// caps raise ResourceLimit; failed verdicts are recorded, not thrown.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// The bundled acceptance checks. Fast covers the exact and oracle checks;
/// full adds the large-prime empirical checks.
ExperimentReport verify_suite(VerifyLevel level, unsigned threads = 0);

/// CSV of the primary table or the full JSON report.
std::string render(const ExperimentReport& report, OutputFormat format);

/// 0 when every verdict passes, else 1.
int verdict_exit_code(const ExperimentReport& report) noexcept;

}  // namespace charwalk
