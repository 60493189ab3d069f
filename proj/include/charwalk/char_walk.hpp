#pragma once

// Character-sum walks n -> chi_p(F(n)): residue-class distributions of the
// prefix statistics S_p(F, k), R_p(F, k), N_p(F, k) for k = 1..p, and the
// census of Legendre-symbol sign patterns over consecutive blocks.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "charwalk/finite_field.hpp"

namespace charwalk {

enum class StatisticKind {
  SignedSum,        // S_p(F, k) = sum_{n <= k} chi_p(F(n))
  ResidueCount,     // R_p(F, k): n <= k with F(n) a nonzero square
  NonResidueCount,  // N_p(F, k): n <= k with F(n) a non-square
};

std::string_view to_string(StatisticKind kind) noexcept;
/// Accepts "signed", "residue", "nonresidue".
StatisticKind parse_statistic_kind(std::string_view name);

struct ResidueDistribution {
  int m = 0;
  std::vector<std::uint64_t> counts;  // counts[a], a in [0, m)
  std::uint64_t total = 0;

  double frequency(int a) const {
    return static_cast<double>(counts.at(static_cast<std::size_t>(a))) / static_cast<double>(total);
  }
};

/// chi_p(F(n)) for n = first, first + 1, ... (n taken mod p), written into out.
void fill_symbols(const FpPolynomial& f, std::uint64_t first, std::span<std::int8_t> out,
                  unsigned threads = 0);

/// Residue classes mod m of the running statistic over k = 1..p. Zeros of F
/// are a 0 step for SignedSum and are counted by neither count statistic.
/// Throws InvalidInput unless F is square-free of degree >= 1 and m >= 2.
ResidueDistribution char_walk_distribution(const FpPolynomial& f, int m, StatisticKind stat,
                                           unsigned threads = 0);

/// sum_a (counts[a]/total - 1/m)^2
double variance_statistic(const ResidueDistribution& dist);
/// max_a |counts[a]/total - 1/m|
double max_deviation(const ResidueDistribution& dist);

// Sign vectors v in {-1, 1}^L are indexed by L-bit integers: bit j - 1 is
// set iff v_j = -1, so index 0 is the all-plus pattern.
std::uint32_t encode_signs(std::span<const int> v);
std::vector<int> decode_signs(std::uint32_t index, int length);
/// "+-+" style label for a pattern index.
std::string pattern_label(std::uint32_t index, int length);

struct PatternCensus {
  std::uint64_t p = 0;
  int L = 0;
  std::vector<std::uint64_t> counts;  // 2^L entries, by pattern index
  std::uint64_t blocks_total = 0;     // floor(p/L), blocks s = 0..floor(p/L) - 1
  std::uint64_t excluded_blocks = 0;  // blocks where F vanishes somewhere
  double model_prediction = 0.0;      // p / (2^L L)
  std::vector<double> relative_deviation;  // counts[v] / prediction - 1
  double admissible_length = 0.0;     // log p / log(4 d_F)
  bool in_admissible_regime = false;  // L <= admissible_length (advisory)

  double max_relative_deviation() const;
};

/// Tally of (chi_p(F(sL+1)), ..., chi_p(F(sL+L))) over s = 0..floor(p/L) - 1.
/// Requires 1 <= L <= 20, 2L <= p and F square-free.
PatternCensus block_pattern_census(const FpPolynomial& f, int L, unsigned threads = 0);

struct EquidistributionRow {
  std::uint64_t p = 0;
  bool skipped = false;
  std::string note;
  double variance = 0.0;
  double max_deviation = 0.0;
  double variance_ratio = 0.0;   // variance * log p / m^2
  double deviation_ratio = 0.0;  // max_deviation * sqrt(log p) / m
  double advisory_m_limit = 0.0; // (log p)^(1/4)
  bool m_in_advisory_range = false;
};

struct EquidistributionCheck {
  int m = 0;
  StatisticKind stat = StatisticKind::SignedSum;
  double variance_budget = 0.0;
  double deviation_budget = 0.0;
  std::vector<EquidistributionRow> rows;
  bool variance_trend_decreasing = false;  // advisory: last evaluated V <= first
  bool pass = false;                       // every evaluated ratio within budget
};

/// Runs the residue-class equidistribution check for the integer polynomial
/// `coefficients` (lowest degree first) reduced mod each prime. Primes where
/// the reduction is not square-free of degree >= 1 are skipped with a note;
/// the check fails if nothing was evaluated.
EquidistributionCheck theorem1_check(std::span<const std::uint64_t> primes,
                                     std::span<const std::int64_t> coefficients, int m,
                                     StatisticKind stat = StatisticKind::SignedSum,
                                     double variance_budget = 10.0,
                                     double deviation_budget = 10.0, unsigned threads = 0);

}  // namespace charwalk
