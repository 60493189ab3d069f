#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "charwalk/char_walk.hpp"
#include "charwalk/exp_sums.hpp"
#include "charwalk/experiment.hpp"
#include "charwalk/finite_field.hpp"
#include "charwalk/prime_walk.hpp"
#include "charwalk/walk_model.hpp"

namespace charwalk {

namespace {

using u64 = std::uint64_t;

constexpr std::array<u64, 4> kEquidistributionPrimes{10007, 100003, 1000003, 9999991};

Verdict at_most(std::string id, double measured, double threshold, std::string detail) {
  return {std::move(id), measured <= threshold, measured, threshold, std::move(detail)};
}

// Closed-form +-1 law against the 2^k enumeration, k <= 16, m = 2..9.
Verdict criterion_psi_enumeration() {
  double worst = 0.0;
  for (int m = 2; m <= 9; ++m) {
    for (int k = 1; k <= 16; ++k) {
      const WalkLaw exact = psi_exact(WalkKind::Rademacher, k, m);
      const WalkLaw brute = psi_enumerate(WalkKind::Rademacher, k, m);
      for (int a = 0; a < m; ++a) {
        const auto i = static_cast<std::size_t>(a);
        worst = std::max(worst, std::abs(exact.probabilities[i] - brute.probabilities[i]));
      }
    }
  }
  return at_most("AC1", worst, 1e-12, "max |psi_exact - enumeration|, k<=16, m=2..9");
}

// Variance identity against walk_enumerate, both kinds, N <= 16, m = 2..8.
Verdict criterion_variance_enumeration() {
  double worst = 0.0;
  for (WalkKind kind : {WalkKind::Rademacher, WalkKind::Bernoulli01}) {
    for (int m = 2; m <= 8; ++m) {
      for (int N = 1; N <= 16; ++N) {
        worst = std::max(worst, std::abs(variance_sum_exact(kind, N, m) - walk_enumerate(kind, N, m).total));
      }
    }
  }
  struct Pinned {
    WalkKind kind;
    int N, m;
    double value;
  };
  for (const Pinned& c : {Pinned{WalkKind::Rademacher, 1, 2, 0.5}, Pinned{WalkKind::Rademacher, 2, 2, 0.0},
                          Pinned{WalkKind::Rademacher, 2, 3, 1.0 / 6.0}, Pinned{WalkKind::Bernoulli01, 2, 2, 0.25}}) {
    worst = std::max(worst, std::abs(variance_sum_exact(c.kind, c.N, c.m) - c.value));
  }
  return at_most("AC2", worst, 1e-12, "max |variance_sum_exact - enumeration|, N<=16, m=2..8, both kinds");
}

// |Psi - 1/m| <= ((m-1)/m)(1 - pi^2/(3m^2))^k, exact comparison. The
// measured value is the largest |Psi - 1/m| / bound among nonzero bounds.
Verdict criterion_decay() {
  double worst_ratio = 0.0;
  u64 violations = 0;
  for (int m = 3; m <= 15; m += 2) {
    for (int k = 1; k <= 2000; ++k) {
      const WalkLaw law = psi_exact(WalkKind::Rademacher, k, m);
      const double bound = psi_decay_bound(m, k);
      for (double prob : law.probabilities) {
        const double dev = std::abs(prob - 1.0 / m);
        if (!(dev <= bound)) ++violations;
        if (bound > 0.0) worst_ratio = std::max(worst_ratio, dev / bound);
      }
    }
  }
  return {"AC3", violations == 0, worst_ratio, 1.0,
          "max |Psi - 1/m| / bound over odd m=3..15, k<=2000; violations=" + std::to_string(violations)};
}

Verdict criterion_scaling() {
  double worst = 0.0;
  for (WalkKind kind : {WalkKind::Rademacher, WalkKind::Bernoulli01}) {
    for (int m = 2; m <= 12; ++m) {
      for (int N = m * m; N <= 5000; ++N) {
        worst = std::max(worst, variance_sum_exact(kind, N, m) * N / (static_cast<double>(m) * m));
      }
    }
  }
  return at_most("AC4", worst, 2.0, "max variance_sum_exact * N / m^2, m=2..12, N in [m^2, 5000]");
}

Verdict criterion_hand_tables() {
  const PrimeModulus p7(7);
  const FpPolynomial x(p7, {0, 1});
  int mismatches = 0;
  const auto signed_dist = char_walk_distribution(x, 2, StatisticKind::SignedSum, 1);
  if (signed_dist.counts != std::vector<u64>{4, 3}) ++mismatches;
  const auto residue_dist = char_walk_distribution(x, 2, StatisticKind::ResidueCount, 1);
  if (residue_dist.counts != std::vector<u64>{2, 5}) ++mismatches;
  const PatternCensus census = block_pattern_census(x, 2, 1);
  const std::array<int, 2> pp{1, 1}, mp{-1, 1}, mm{-1, -1}, pm{1, -1};
  if (census.counts[encode_signs(pp)] != 1) ++mismatches;
  if (census.counts[encode_signs(mp)] != 1) ++mismatches;
  if (census.counts[encode_signs(mm)] != 1) ++mismatches;
  if (census.counts[encode_signs(pm)] != 0) ++mismatches;
  if (census.excluded_blocks != 0) ++mismatches;
  return at_most("AC5", mismatches, 0.0, "mismatches against the p=7 hand tables");
}

Verdict criterion_signed_equidistribution(unsigned threads) {
  double var_ratio = 0.0;
  double dev_ratio = 0.0;
  bool evaluated = true;
  for (const std::vector<std::int64_t>& poly : {std::vector<std::int64_t>{0, 1}, std::vector<std::int64_t>{1, 0, 1}}) {
    const EquidistributionCheck check = theorem1_check(kEquidistributionPrimes, poly, 3, StatisticKind::SignedSum, 10.0, 2.0, threads);
    for (const auto& row : check.rows) {
      evaluated = evaluated && !row.skipped;
      var_ratio = std::max(var_ratio, row.variance_ratio);
      dev_ratio = std::max(dev_ratio, row.deviation_ratio);
    }
  }
  return {"AC6", evaluated && var_ratio <= 10.0 && dev_ratio <= 2.0, var_ratio, 10.0,
          "max V log p / 9 (<= 10); max deviation ratio sqrt(log p)/3 = " + format_real(dev_ratio) + " (<= 2)"};
}

Verdict criterion_count_equidistribution(unsigned threads) {
  double var_ratio = 0.0;
  bool evaluated = true;
  const std::vector<std::int64_t> x{0, 1};
  for (StatisticKind stat : {StatisticKind::ResidueCount, StatisticKind::NonResidueCount}) {
    const EquidistributionCheck check = theorem1_check(kEquidistributionPrimes, x, 3, stat, 10.0, INFINITY, threads);
    for (const auto& row : check.rows) {
      evaluated = evaluated && !row.skipped;
      var_ratio = std::max(var_ratio, row.variance_ratio);
    }
  }
  return {"AC7", evaluated && var_ratio <= 10.0, var_ratio, 10.0,
          "max V log p / 9 for R_p and N_p counts, F = X"};
}

Verdict criterion_census(unsigned threads) {
  const PrimeModulus p(9999991);
  const PatternCensus census = block_pattern_census(FpPolynomial(p, {0, 1}), 4, threads);
  const double worst = census.max_relative_deviation();
  return {"AC8", worst <= 0.05 && census.excluded_blocks <= 1, worst, 0.05,
          "max relative deviation from p/(2^L L), p=9999991, L=4; excluded_blocks=" +
              std::to_string(census.excluded_blocks)};
}

Verdict criterion_prime_walk(unsigned threads) {
  const PrimeTable table = sieve_primes(1'000'000);
  const PrimeSignCensus census = prime_sign_census(table, 6, threads);
  double worst_pattern = 0.0;
  for (u64 c : census.counts) {
    const double frac = static_cast<double>(c) / static_cast<double>(census.included_prime_count);
    worst_pattern = std::max(worst_pattern, std::abs(frac * 64.0 - 1.0));
  }
  const PrimeWalkResult walk = psi_N(table, 6, 3, threads);
  const PrimeWalkResult hand = psi_N(sieve_primes(13), 2, 3, 1);
  const bool hand_ok = hand.distribution.counts == std::vector<u64>{3, 1, 0} && hand.distribution.total == 4;
  return {"AC9", worst_pattern <= 0.10 && walk.max_discrepancy <= 0.01 && hand_ok, worst_pattern, 0.10,
          "max |fraction * 64 - 1| at N=1e6, k=6; Psi gap = " + format_real(walk.max_discrepancy) +
              " (<= 0.01); N=13 hand case " + (hand_ok ? "ok" : "MISMATCH")};
}

Verdict criterion_weil() {
  const WeilSweepSummary sweep = weil_sweep(97);
  const PrimeModulus p5(5);
  const FpPolynomial x(p5, {0, 1});
  const double gauss = std::abs(twisted_char_sum(TwistedSumSpec(x, x, 0, 5)));
  const double gauss_error = std::abs(gauss - std::sqrt(5.0));
  return {"AC10", sweep.failures == 0 && sweep.min_margin >= 0.0 && gauss_error <= 1e-9, sweep.min_margin, 0.0,
          "min Weil margin over " + std::to_string(sweep.cases) + " cases (>= 0); | |G_5| - sqrt 5 | = " +
              format_real(gauss_error) + " (<= 1e-9)"};
}

Verdict criterion_determinism(unsigned threads) {
  const std::string t = std::to_string(threads);
  int differences = 0;
  const std::array configs{
      make_config("walk-mc", {{"N", "40"}, {"m", "5"}, {"trials", "20000"}, {"seed", "7"}, {"threads", t}}),
      make_config("char-dist", {{"p", "100003"}, {"poly", "1,0,1"}, {"m", "4"}, {"threads", t}}),
      make_config("prime-walk", {{"N", "20000"}, {"k", "4"}, {"m", "3"}, {"threads", t}}),
  };
  for (const ExperimentConfig& config : configs) {
    const ExperimentReport first = run_experiment(config);
    const ExperimentReport second = run_experiment(config);
    if (render(first, OutputFormat::Csv) != render(second, OutputFormat::Csv)) ++differences;
    if (emit_json_payload(first) != emit_json_payload(second)) ++differences;
  }
  return at_most("AC11", differences, 0.0, "byte differences between reruns of identical configs");
}

}  // namespace

ExperimentReport verify_suite(VerifyLevel level, unsigned threads) {
  ExperimentReport report;
  report.inputs = {{"command", "verify"},
                   {"parameters", {{"level", level == VerifyLevel::Fast ? "fast" : "full"}}}};
  report.verdicts.push_back(criterion_psi_enumeration());
  report.verdicts.push_back(criterion_variance_enumeration());
  report.verdicts.push_back(criterion_decay());
  report.verdicts.push_back(criterion_scaling());
  report.verdicts.push_back(criterion_hand_tables());
  if (level == VerifyLevel::Full) {
    report.verdicts.push_back(criterion_signed_equidistribution(threads));
    report.verdicts.push_back(criterion_count_equidistribution(threads));
    report.verdicts.push_back(criterion_census(threads));
    report.verdicts.push_back(criterion_prime_walk(threads));
  }
  report.verdicts.push_back(criterion_weil());
  report.verdicts.push_back(criterion_determinism(threads));
  std::sort(report.verdicts.begin(), report.verdicts.end(), [](const Verdict& a, const Verdict& b) {
    return std::stoi(a.id.substr(2)) < std::stoi(b.id.substr(2));
  });

  Table table{"verdicts", {"criterion", "pass", "measured", "threshold", "detail"}, {}};
  int passed = 0;
  for (Verdict& v : report.verdicts) {
    v.measured = round_sig12(v.measured);
    v.threshold = round_sig12(v.threshold);
    table.rows.push_back({v.id, v.pass, real(v.measured), real(v.threshold), v.detail});
    passed += v.pass ? 1 : 0;
  }
  report.tables.push_back(std::move(table));
  report.summary = {{"level", level == VerifyLevel::Fast ? "fast" : "full"},
                    {"criteria", report.verdicts.size()},
                    {"passed", passed}};
  if (level == VerifyLevel::Fast) report.summary["skipped"] = {"AC6", "AC7", "AC8", "AC9"};
  return report;
}

}  // namespace charwalk
