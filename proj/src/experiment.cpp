#include "charwalk/experiment.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>

#include "charwalk/char_walk.hpp"
#include "charwalk/exp_sums.hpp"
#include "charwalk/finite_field.hpp"
#include "charwalk/prime_walk.hpp"
#include "charwalk/walk_model.hpp"

namespace charwalk {

using nlohmann::json;

namespace {

constexpr std::array kCommandNames{"walk-exact", "walk-mc",    "char-dist", "block-census",
                                   "prime-walk", "weil-check", "verify"};

constexpr std::array<std::string_view, 3> kCommon{"format", "out", "threads"};
constexpr std::array<std::string_view, 6> kWalkExact{"kind", "k", "m", "format", "out", "threads"};
constexpr std::array<std::string_view, 9> kWalkMc{"kind",      "N",      "m",   "trials", "seed",
                                                   "tolerance", "format", "out", "threads"};
constexpr std::array<std::string_view, 8> kCharDist{"p", "poly", "m", "stat", "budget", "format", "out", "threads"};
constexpr std::array<std::string_view, 7> kBlockCensus{"p", "poly", "L", "tolerance", "format", "out", "threads"};
constexpr std::array<std::string_view, 8> kPrimeWalk{"N", "k", "m", "gap", "pattern-tolerance",
                                                     "format", "out", "threads"};
constexpr std::array<std::string_view, 8> kWeilCheck{"p", "p1", "p2", "start", "length", "format", "out", "threads"};
constexpr std::array<std::string_view, 4> kVerify{"level", "format", "out", "threads"};

template <typename T>
T parse_number(const std::string& key, const std::string& text, int base = 10) {
  T value{};
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  std::from_chars_result res;
  if constexpr (std::is_floating_point_v<T>) {
    res = std::from_chars(begin, end, value);
  } else {
    res = std::from_chars(begin, end, value, base);
  }
  if (text.empty() || res.ec != std::errc{} || res.ptr != end) {
    throw ConfigError("invalid value for --" + key + ": '" + text + "'");
  }
  return value;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

json residues_json(const std::vector<double>& values) {
  json out = json::array();
  for (double v : values) out.push_back(real(v));
  return out;
}

ExperimentReport base_report(const ExperimentConfig& config) {
  ExperimentReport report;
  report.inputs = config_to_json(config);
  return report;
}

ExperimentReport run_walk_exact(const ExperimentConfig& config) {
  const WalkKind kind = parse_walk_kind(config.text("kind"));
  const int k = static_cast<int>(config.integer("k"));
  const int m = static_cast<int>(config.integer("m"));
  const WalkLaw law = psi_exact(kind, k, m);

  ExperimentReport report = base_report(config);
  Table table{"law", {"a", "probability"}, {}};
  double sum = 0.0;
  double worst = 0.0;
  for (int a = 0; a < m; ++a) {
    const double prob = law.probabilities[static_cast<std::size_t>(a)];
    table.rows.push_back({a, real(prob)});
    sum += prob;
    worst = std::max(worst, std::abs(prob - 1.0 / m));
  }
  report.tables.push_back(std::move(table));
  report.summary = {{"kind", to_string(kind)},
                    {"k", k},
                    {"m", m},
                    {"probabilities", residues_json(law.probabilities)},
                    {"max_deviation_from_uniform", real(worst)}};
  report.verdicts.push_back({"normalization", std::abs(sum - 1.0) <= 1e-12, round_sig12(std::abs(sum - 1.0)),
                             1e-12, "|sum_a probability - 1|"});
  if (kind == WalkKind::Rademacher && m >= 3 && m % 2 == 1) {
    const double bound = psi_decay_bound(m, k);
    report.summary["decay_bound"] = real(bound);
    report.verdicts.push_back({"decay_bound", worst <= bound, round_sig12(worst), round_sig12(bound),
                               "max_a |Psi - 1/m| against ((m-1)/m)(1 - pi^2/(3m^2))^k"});
  }
  return report;
}

ExperimentReport run_walk_mc(const ExperimentConfig& config) {
  const WalkKind kind = parse_walk_kind(config.text("kind"));
  const int N = static_cast<int>(config.integer("N"));
  const int m = static_cast<int>(config.integer("m"));
  const std::uint64_t trials = config.unsigned_integer("trials");
  const std::uint64_t seed = config.unsigned_integer("seed");
  const double tolerance = config.real_number("tolerance");

  const MonteCarloEstimate est = walk_monte_carlo(kind, N, m, trials, seed, config.threads());
  const double exact = variance_sum_exact(kind, N, m);
  const double gap = std::abs(est.mean - exact);
  const double z = est.standard_error > 0 ? gap / est.standard_error
                                          : (gap == 0 ? 0.0 : std::numeric_limits<double>::infinity());

  ExperimentReport report = base_report(config);
  report.tables.push_back({"estimate",
                           {"kind", "N", "m", "trials", "seed", "mean", "standard_error", "exact", "z_score"},
                           {{to_string(kind), N, m, trials, seed, real(est.mean), real(est.standard_error),
                             real(exact), real(z)}}});
  report.summary = {{"mean", real(est.mean)},
                    {"standard_error", real(est.standard_error)},
                    {"exact", real(exact)},
                    {"z_score", real(z)}};
  report.verdicts.push_back({"exact_agreement", z <= tolerance, std::isfinite(z) ? round_sig12(z) : 1e300,
                             tolerance, "|mean - closed form| in standard errors"});
  return report;
}

FpPolynomial polynomial_param(const ExperimentConfig& config, const PrimeModulus& mod, const std::string& key) {
  const std::vector<std::int64_t> coeffs = config.integer_list(key);
  return FpPolynomial(mod, coeffs);
}

// Prime modulus and square-free polynomial of degree >= 1, or InvalidInput.
PrimeModulus require_admissible(const ExperimentConfig& config, const std::string& key) {
  const PrimeModulus mod(config.unsigned_integer("p"));
  const FpPolynomial f = polynomial_param(config, mod, key);
  if (f.degree() < 1) throw InvalidInput("--" + key + " must have degree >= 1 mod p");
  if (!is_squarefree(f)) throw InvalidInput("--" + key + " is not square-free mod p");
  return mod;
}

TwistedSumSpec spec_param(const ExperimentConfig& config) {
  const PrimeModulus mod(config.unsigned_integer("p"));
  const FpPolynomial p1 = polynomial_param(config, mod, "p1");
  const FpPolynomial p2 = config.text("p2").empty() ? FpPolynomial::zero(mod) : polynomial_param(config, mod, "p2");
  return TwistedSumSpec(p1, p2, config.unsigned_integer("start"), config.unsigned_integer("length"));
}

ExperimentReport run_char_dist(const ExperimentConfig& config) {
  const PrimeModulus mod(config.unsigned_integer("p"));
  const FpPolynomial f = polynomial_param(config, mod, "poly");
  const int m = static_cast<int>(config.integer("m"));
  const StatisticKind stat = parse_statistic_kind(config.text("stat"));
  const double budget = config.real_number("budget");

  const ResidueDistribution dist = char_walk_distribution(f, m, stat, config.threads());
  const double variance = variance_statistic(dist);
  const double worst = max_deviation(dist);
  const double log_p = std::log(static_cast<double>(mod.value()));
  const double ratio = variance * log_p / (static_cast<double>(m) * m);

  ExperimentReport report = base_report(config);
  Table table{"distribution", {"a", "count", "frequency", "deviation_from_uniform"}, {}};
  for (int a = 0; a < m; ++a) {
    table.rows.push_back({a, dist.counts[static_cast<std::size_t>(a)], real(dist.frequency(a)),
                          real(dist.frequency(a) - 1.0 / m)});
  }
  report.tables.push_back(std::move(table));
  report.summary = {{"p", mod.value()},
                    {"polynomial", f.to_string()},
                    {"m", m},
                    {"stat", to_string(stat)},
                    {"total", dist.total},
                    {"variance", real(variance)},
                    {"max_deviation", real(worst)},
                    {"variance_ratio", real(ratio)},
                    {"deviation_ratio", real(worst * std::sqrt(log_p) / m)}};
  report.verdicts.push_back({"variance_budget", ratio <= budget, round_sig12(ratio), budget,
                             "sum_a (Phi - 1/m)^2 * log p / m^2"});
  return report;
}

ExperimentReport run_block_census(const ExperimentConfig& config) {
  const PrimeModulus mod(config.unsigned_integer("p"));
  const FpPolynomial f = polynomial_param(config, mod, "poly");
  const int L = static_cast<int>(config.integer("L"));
  const double tolerance = config.real_number("tolerance");

  const PatternCensus census = block_pattern_census(f, L, config.threads());
  ExperimentReport report = base_report(config);
  Table table{"census", {"pattern", "signs", "count", "predicted", "relative_deviation"}, {}};
  for (std::uint32_t v = 0; v < census.counts.size(); ++v) {
    table.rows.push_back({v, pattern_label(v, L), census.counts[v], real(census.model_prediction),
                          real(census.relative_deviation[v])});
  }
  report.tables.push_back(std::move(table));
  report.summary = {{"p", census.p},
                    {"L", L},
                    {"blocks_total", census.blocks_total},
                    {"excluded_blocks", census.excluded_blocks},
                    {"model_prediction", real(census.model_prediction)},
                    {"max_relative_deviation", real(census.max_relative_deviation())},
                    {"admissible_length", real(census.admissible_length)},
                    {"in_admissible_regime", census.in_admissible_regime}};
  report.verdicts.push_back({"census_tolerance", census.max_relative_deviation() <= tolerance,
                             round_sig12(census.max_relative_deviation()), tolerance,
                             "max_v |count / (p / (2^L L)) - 1|"});
  return report;
}

ExperimentReport run_prime_walk(const ExperimentConfig& config) {
  const std::uint64_t N = config.unsigned_integer("N");
  const int k = static_cast<int>(config.integer("k"));
  const int m = static_cast<int>(config.integer("m"));
  const double gap = config.real_number("gap");
  const double pattern_tolerance = config.real_number("pattern-tolerance");

  const PrimeTable table = sieve_primes(N);
  const PrimeWalkResult result = psi_N(table, k, m, config.threads());

  ExperimentReport report = base_report(config);
  Table dist{"distribution", {"a", "count", "frequency", "model_probability", "discrepancy"}, {}};
  for (int a = 0; a < m; ++a) {
    const double freq = result.distribution.frequency(a);
    const double model = result.model.probabilities[static_cast<std::size_t>(a)];
    dist.rows.push_back({a, result.distribution.counts[static_cast<std::size_t>(a)], real(freq), real(model),
                         real(freq - model)});
  }
  report.tables.push_back(std::move(dist));
  report.summary = {{"N", N},
                    {"k", k},
                    {"m", m},
                    {"step_prime", result.step_prime},
                    {"pi_N", table.count()},
                    {"included_prime_count", result.included_prime_count},
                    {"excluded_prime_count", result.excluded_prime_count},
                    {"max_discrepancy", real(result.max_discrepancy)},
                    {"advisory_k_limit", real(result.advisory_k_limit)},
                    {"k_in_advisory_range", result.k_in_advisory_range}};
  report.verdicts.push_back({"psi_gap", result.max_discrepancy <= gap, round_sig12(result.max_discrepancy), gap,
                             "max_a |Psi_N - Psi_rand|"});

  if (k <= 20) {
    const PrimeSignCensus census = prime_sign_census(table, k, config.threads());
    Table patterns{"patterns", {"pattern", "signs", "count", "fraction", "relative_deviation"}, {}};
    double worst = 0.0;
    const double expected = std::ldexp(1.0, -k);
    for (std::uint32_t v = 0; v < census.counts.size(); ++v) {
      const double frac = static_cast<double>(census.counts[v]) / static_cast<double>(census.included_prime_count);
      const double rel = frac / expected - 1.0;
      worst = std::max(worst, std::abs(rel));
      patterns.rows.push_back({v, pattern_label(v, k), census.counts[v], real(frac), real(rel)});
    }
    report.tables.push_back(std::move(patterns));
    report.summary["max_pattern_relative_deviation"] = real(worst);
    report.verdicts.push_back({"pattern_fractions", worst <= pattern_tolerance, round_sig12(worst),
                               pattern_tolerance, "max_v |fraction * 2^k - 1|"});
  }
  return report;
}

ExperimentReport run_weil_check(const ExperimentConfig& config) {
  const TwistedSumSpec spec = spec_param(config);
  const PrimeModulus& mod = spec.modulus();
  const FpPolynomial& p1 = spec.p1();
  const FpPolynomial& p2 = spec.p2();
  const WeilCheck check = weil_bound_check(spec);

  ExperimentReport report = base_report(config);
  report.tables.push_back({"weil",
                           {"p", "D", "start", "length", "complete", "re", "im", "magnitude", "bound", "margin"},
                           {{mod.value(), spec.degree_sum(), spec.start(), spec.length(), check.complete,
                             real(check.value.real()), real(check.value.imag()), real(check.magnitude),
                             real(check.bound), real(check.margin)}}});
  report.summary = {{"p1", p1.to_string()},
                    {"p2", p2.to_string()},
                    {"magnitude", real(check.magnitude)},
                    {"bound", real(check.bound)},
                    {"margin", real(check.margin)},
                    {"complete", check.complete}};
  report.verdicts.push_back({"weil_margin", check.pass(), round_sig12(check.margin), 0.0,
                             check.complete ? "D sqrt(p) - |S|" : "2 D sqrt(p) log p - |S_I|"});
  return report;
}

}  // namespace

std::string_view to_string(Command command) noexcept {
  return kCommandNames[static_cast<std::size_t>(command)];
}

Command parse_command(std::string_view name) {
  for (std::size_t i = 0; i < kCommandNames.size(); ++i) {
    if (name == kCommandNames[i]) return static_cast<Command>(i);
  }
  throw ConfigError("unknown command '" + std::string(name) + "'");
}

VerifyLevel parse_verify_level(std::string_view name) {
  if (name == "fast") return VerifyLevel::Fast;
  if (name == "full") return VerifyLevel::Full;
  throw ConfigError("unknown verify level '" + std::string(name) + "' (fast|full)");
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw ConfigError("unknown format '" + std::string(name) + "' (csv|json)");
}

std::span<const std::string_view> command_parameters(Command command) {
  switch (command) {
    case Command::WalkExact: return kWalkExact;
    case Command::WalkMc: return kWalkMc;
    case Command::CharDist: return kCharDist;
    case Command::BlockCensus: return kBlockCensus;
    case Command::PrimeWalk: return kPrimeWalk;
    case Command::WeilCheck: return kWeilCheck;
    case Command::Verify: return kVerify;
  }
  return kCommon;
}

const std::string& ExperimentConfig::text(const std::string& key) const {
  auto it = parameters.find(key);
  if (it == parameters.end()) throw ConfigError("missing required flag --" + key);
  return it->second;
}

std::int64_t ExperimentConfig::integer(const std::string& key) const {
  return parse_number<std::int64_t>(key, text(key));
}

std::uint64_t ExperimentConfig::unsigned_integer(const std::string& key) const {
  const std::string& t = text(key);
  if (t.size() > 2 && t[0] == '0' && (t[1] == 'x' || t[1] == 'X')) {
    return parse_number<std::uint64_t>(key, t.substr(2), 16);
  }
  return parse_number<std::uint64_t>(key, t);
}

double ExperimentConfig::real_number(const std::string& key) const {
  return parse_number<double>(key, text(key));
}

std::vector<std::int64_t> ExperimentConfig::integer_list(const std::string& key) const {
  const std::string& t = text(key);
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos <= t.size()) {
    const std::size_t comma = std::min(t.find(',', pos), t.size());
    out.push_back(parse_number<std::int64_t>(key, t.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

OutputFormat ExperimentConfig::format() const { return parse_output_format(text("format")); }

unsigned ExperimentConfig::threads() const {
  return static_cast<unsigned>(parse_number<std::uint32_t>("threads", text("threads")));
}

ExperimentConfig make_config(std::string_view command, std::map<std::string, std::string> parameters) {
  ExperimentConfig config;
  config.command = parse_command(command);
  const auto allowed = command_parameters(config.command);
  for (const auto& [key, value] : parameters) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown flag --" + key + " for " + std::string(command));
    }
  }
  config.parameters = std::move(parameters);
  auto fill = [&](const std::string& key, std::string value) { config.parameters.try_emplace(key, std::move(value)); };
  fill("format", "csv");
  fill("out", "-");
  fill("threads", "0");
  (void)config.format();
  (void)config.threads();

  switch (config.command) {
    case Command::WalkExact:
      fill("kind", "rademacher");
      (void)parse_walk_kind(config.text("kind"));
      require(config.integer("k") >= 1, "--k must be >= 1");
      require(config.integer("m") >= 2, "--m must be >= 2");
      break;
    case Command::WalkMc:
      fill("kind", "rademacher");
      fill("trials", "100000");
      fill("seed", "0xC0FFEE");
      fill("tolerance", "4");
      (void)parse_walk_kind(config.text("kind"));
      require(config.integer("N") >= 1, "--N must be >= 1");
      require(config.integer("m") >= 2, "--m must be >= 2");
      require(config.unsigned_integer("trials") >= 100, "--trials must be >= 100");
      (void)config.unsigned_integer("seed");
      require(config.real_number("tolerance") > 0, "--tolerance must be positive");
      break;
    case Command::CharDist:
      fill("stat", "signed");
      fill("budget", "10");
      require_admissible(config, "poly");
      require(config.integer("m") >= 2, "--m must be >= 2");
      (void)parse_statistic_kind(config.text("stat"));
      require(config.real_number("budget") > 0, "--budget must be positive");
      break;
    case Command::BlockCensus: {
      fill("tolerance", "0.05");
      const PrimeModulus mod = require_admissible(config, "poly");
      const auto L = config.integer("L");
      require(L >= 1 && L <= 20, "--L must be in [1, 20]");
      require(2 * static_cast<std::uint64_t>(L) <= mod.value(), "--L must satisfy 2L <= p");
      require(config.real_number("tolerance") > 0, "--tolerance must be positive");
      break;
    }
    case Command::PrimeWalk:
      fill("m", "3");
      fill("gap", "0.01");
      fill("pattern-tolerance", "0.10");
      require(config.unsigned_integer("N") >= 2, "--N must be >= 2");
      require(config.integer("k") >= 1, "--k must be >= 1");
      require(config.integer("m") >= 2, "--m must be >= 2");
      require(config.real_number("gap") > 0, "--gap must be positive");
      require(config.real_number("pattern-tolerance") > 0, "--pattern-tolerance must be positive");
      break;
    case Command::WeilCheck:
      fill("p2", "");
      fill("start", "0");
      fill("length", config.text("p"));
      (void)spec_param(config);
      break;
    case Command::Verify:
      fill("level", "fast");
      (void)parse_verify_level(config.text("level"));
      break;
  }
  return config;
}

json config_to_json(const ExperimentConfig& config) {
  return {{"command", to_string(config.command)}, {"parameters", config.parameters}};
}

ExperimentConfig config_from_json(const json& inputs) {
  try {
    return make_config(inputs.at("command").get<std::string>(),
                       inputs.at("parameters").get<std::map<std::string, std::string>>());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config JSON: ") + e.what());
  }
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  ExperimentReport report;
  switch (config.command) {
    case Command::WalkExact: report = run_walk_exact(config); break;
    case Command::WalkMc: report = run_walk_mc(config); break;
    case Command::CharDist: report = run_char_dist(config); break;
    case Command::BlockCensus: report = run_block_census(config); break;
    case Command::PrimeWalk: report = run_prime_walk(config); break;
    case Command::WeilCheck: report = run_weil_check(config); break;
    case Command::Verify:
      report = verify_suite(parse_verify_level(config.text("level")), config.threads());
      report.inputs = config_to_json(config);
      break;
  }
  for (Verdict& v : report.verdicts) {
    v.measured = round_sig12(v.measured);
    v.threshold = round_sig12(v.threshold);
  }
  report.wall_time = round_sig12(
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count());
  return report;
}

std::string render(const ExperimentReport& report, OutputFormat format) {
  if (format == OutputFormat::Json) return emit_json(report);
  return report.tables.empty() ? std::string() : emit_csv(report.tables.front());
}

int verdict_exit_code(const ExperimentReport& report) noexcept { return report.all_pass() ? 0 : 1; }

}  // namespace charwalk
