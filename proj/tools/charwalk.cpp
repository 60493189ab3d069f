// charwalk: command-line front end.
//
// Exit status: 0 success, 1 a verdict failed, 2 invalid configuration or
// input, 3 resource limit.

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "charwalk/errors.hpp"
#include "charwalk/experiment.hpp"

namespace {

constexpr const char* kDescriptions[] = {
    "exact k-step law of the walk on Z/mZ",
    "Monte Carlo estimate of the residue-occupation variance",
    "residue distribution of a character-sum walk over k = 1..p",
    "census of Legendre-symbol sign patterns over blocks of length L",
    "walks chi_p(q_1), ..., chi_p(q_k) over primes p <= N",
    "twisted character sum against the Weil bound",
    "run the bundled acceptance checks (--level fast|full)",
};

int emit(const charwalk::ExperimentReport& report, const charwalk::ExperimentConfig& config) {
  const std::string payload = charwalk::render(report, config.format());
  const std::string& out = config.text("out");
  if (out == "-") {
    std::cout << payload;
  } else {
    std::ofstream file(out, std::ios::binary);
    if (!file) {
      std::cerr << "charwalk: cannot write " << out << "\n";
      return 2;
    }
    file << payload;
  }
  for (const auto& v : report.verdicts) {
    std::cerr << (v.pass ? "[PASS] " : "[FAIL] ") << v.id << " measured=" << charwalk::format_real(v.measured)
              << " threshold=" << charwalk::format_real(v.threshold);
    if (!v.detail.empty()) std::cerr << "  " << v.detail;
    std::cerr << "\n";
  }
  return charwalk::verdict_exit_code(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Character-sum walks modulo m and their random-walk model"};
  app.require_subcommand(1);

  std::map<std::string, std::map<std::string, std::string>> given;
  for (int c = 0; c <= static_cast<int>(charwalk::Command::Verify); ++c) {
    const auto command = static_cast<charwalk::Command>(c);
    const std::string name(charwalk::to_string(command));
    CLI::App* sub = app.add_subcommand(name, kDescriptions[c]);
    auto& params = given[name];
    for (std::string_view key : charwalk::command_parameters(command)) {
      const std::string flag(key);
      sub->add_option_function<std::string>(
          "--" + flag, [&params, flag](const std::string& value) { params[flag] = value; },
          "see README for the " + flag + " parameter");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    CLI::App* chosen = app.get_subcommands().front();
    charwalk::ExperimentConfig config = charwalk::make_config(chosen->get_name(), given[chosen->get_name()]);
    const charwalk::ExperimentReport report = charwalk::run_experiment(config);
    return emit(report, config);
  } catch (const charwalk::ResourceLimit& e) {
    std::cerr << "charwalk: resource limit: " << e.what() << "\n";
    return 3;
  } catch (const charwalk::InvalidInput& e) {
    std::cerr << "charwalk: invalid input: " << e.what() << "\n";
    return 2;
  }
}
