#include "charwalk/char_walk.hpp"

#include <algorithm>
#include <cmath>

#include "charwalk/errors.hpp"
#include "charwalk/parallel.hpp"

namespace charwalk {

namespace {

using u64 = std::uint64_t;

constexpr std::size_t kSymbolChunk = std::size_t{1} << 16;
constexpr std::size_t kScanBlock = std::size_t{1} << 20;

void require_admissible(const FpPolynomial& f) {
  if (f.degree() < 1) throw InvalidInput("polynomial must have degree >= 1");
  if (!is_squarefree(f)) throw InvalidInput("polynomial is not square-free: " + f.to_string());
}

}  // namespace

std::string_view to_string(StatisticKind kind) noexcept {
  switch (kind) {
    case StatisticKind::SignedSum: return "signed";
    case StatisticKind::ResidueCount: return "residue";
    case StatisticKind::NonResidueCount: return "nonresidue";
  }
  return "signed";
}

StatisticKind parse_statistic_kind(std::string_view name) {
  if (name == "signed") return StatisticKind::SignedSum;
  if (name == "residue") return StatisticKind::ResidueCount;
  if (name == "nonresidue") return StatisticKind::NonResidueCount;
  throw InvalidInput("unknown statistic '" + std::string(name) + "' (signed|residue|nonresidue)");
}

void fill_symbols(const FpPolynomial& f, u64 first, std::span<std::int8_t> out, unsigned threads) {
  const PrimeModulus& mod = f.modulus();
  const u64 p = mod.value();
  const std::size_t chunks = (out.size() + kSymbolChunk - 1) / kSymbolChunk;
  parallel_for_chunks(chunks, threads, [&](std::size_t c) {
    const std::size_t begin = c * kSymbolChunk;
    const std::size_t end = std::min(out.size(), begin + kSymbolChunk);
    u64 n = (first % p + begin % p) % p;
    for (std::size_t i = begin; i < end; ++i) {
      out[i] = static_cast<std::int8_t>(jacobi_symbol(f(n), p));
      if (++n == p) n = 0;
    }
  });
}

ResidueDistribution char_walk_distribution(const FpPolynomial& f, int m, StatisticKind stat,
                                           unsigned threads) {
  if (m < 2) throw InvalidInput("modulus m must be >= 2");
  require_admissible(f);
  const u64 p = f.modulus().value();

  ResidueDistribution dist{m, std::vector<u64>(static_cast<std::size_t>(m), 0), p};
  std::vector<std::int8_t> symbols(static_cast<std::size_t>(std::min<u64>(p, kScanBlock)));
  int value = 0;
  for (u64 start = 1; start <= p; start += symbols.size()) {
    const std::size_t len = static_cast<std::size_t>(std::min<u64>(symbols.size(), p - start + 1));
    std::span<std::int8_t> block(symbols.data(), len);
    fill_symbols(f, start, block, threads);
    for (std::int8_t s : block) {
      switch (stat) {
        case StatisticKind::SignedSum:
          value += s;
          if (value < 0) value += m;
          else if (value >= m) value -= m;
          break;
        case StatisticKind::ResidueCount:
          if (s == 1 && ++value == m) value = 0;
          break;
        case StatisticKind::NonResidueCount:
          if (s == -1 && ++value == m) value = 0;
          break;
      }
      ++dist.counts[static_cast<std::size_t>(value)];
    }
  }
  return dist;
}

double variance_statistic(const ResidueDistribution& dist) {
  const double uniform = 1.0 / dist.m;
  double sum = 0.0;
  for (int a = 0; a < dist.m; ++a) {
    const double d = dist.frequency(a) - uniform;
    sum += d * d;
  }
  return sum;
}

double max_deviation(const ResidueDistribution& dist) {
  const double uniform = 1.0 / dist.m;
  double worst = 0.0;
  for (int a = 0; a < dist.m; ++a) worst = std::max(worst, std::abs(dist.frequency(a) - uniform));
  return worst;
}

std::uint32_t encode_signs(std::span<const int> v) {
  if (v.size() > 31) throw InvalidInput("sign vector too long");
  std::uint32_t index = 0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] == -1) {
      index |= std::uint32_t{1} << j;
    } else if (v[j] != 1) {
      throw InvalidInput("sign vector entries must be -1 or 1");
    }
  }
  return index;
}

std::vector<int> decode_signs(std::uint32_t index, int length) {
  std::vector<int> v(static_cast<std::size_t>(length));
  for (int j = 0; j < length; ++j) v[static_cast<std::size_t>(j)] = (index >> j) & 1 ? -1 : 1;
  return v;
}

std::string pattern_label(std::uint32_t index, int length) {
  std::string s(static_cast<std::size_t>(length), '+');
  for (int j = 0; j < length; ++j) {
    if ((index >> j) & 1) s[static_cast<std::size_t>(j)] = '-';
  }
  return s;
}

double PatternCensus::max_relative_deviation() const {
  double worst = 0.0;
  for (double d : relative_deviation) worst = std::max(worst, std::abs(d));
  return worst;
}

PatternCensus block_pattern_census(const FpPolynomial& f, int L, unsigned threads) {
  if (L < 1 || L > 20) throw InvalidInput("block length L must be in [1, 20]");
  const u64 p = f.modulus().value();
  if (2 * static_cast<u64>(L) > p) throw InvalidInput("block length needs 2L <= p");
  require_admissible(f);

  const auto len = static_cast<std::size_t>(L);
  PatternCensus census;
  census.p = p;
  census.L = L;
  census.counts.assign(std::size_t{1} << len, 0);
  census.blocks_total = p / len;

  const std::size_t blocks_per_segment = std::max<std::size_t>(1, kScanBlock / len);
  std::vector<std::int8_t> symbols(blocks_per_segment * len);
  for (u64 s0 = 0; s0 < census.blocks_total; s0 += blocks_per_segment) {
    const auto blocks = static_cast<std::size_t>(std::min<u64>(blocks_per_segment, census.blocks_total - s0));
    std::span<std::int8_t> seg(symbols.data(), blocks * len);
    fill_symbols(f, s0 * len + 1, seg, threads);
    for (std::size_t b = 0; b < blocks; ++b) {
      std::uint32_t index = 0;
      bool zero = false;
      for (std::size_t j = 0; j < len; ++j) {
        const std::int8_t s = seg[b * len + j];
        if (s == 0) {
          zero = true;
          break;
        }
        if (s < 0) index |= std::uint32_t{1} << j;
      }
      if (zero) ++census.excluded_blocks;
      else ++census.counts[index];
    }
  }

  census.model_prediction = static_cast<double>(p) / (std::ldexp(1.0, L) * L);
  census.relative_deviation.resize(census.counts.size());
  for (std::size_t v = 0; v < census.counts.size(); ++v) {
    census.relative_deviation[v] = static_cast<double>(census.counts[v]) / census.model_prediction - 1.0;
  }
  census.admissible_length = std::log(static_cast<double>(p)) / std::log(4.0 * f.degree());
  census.in_admissible_regime = L <= census.admissible_length;
  return census;
}

EquidistributionCheck theorem1_check(std::span<const u64> primes,
                                     std::span<const std::int64_t> coefficients, int m,
                                     StatisticKind stat, double variance_budget,
                                     double deviation_budget, unsigned threads) {
  if (m < 2) throw InvalidInput("modulus m must be >= 2");
  EquidistributionCheck check;
  check.m = m;
  check.stat = stat;
  check.variance_budget = variance_budget;
  check.deviation_budget = deviation_budget;

  bool all_within = true;
  const EquidistributionRow* first = nullptr;
  const EquidistributionRow* last = nullptr;
  check.rows.reserve(primes.size());
  for (u64 p : primes) {
    PrimeModulus mod(p);
    EquidistributionRow row;
    row.p = p;
    const double log_p = std::log(static_cast<double>(p));
    row.advisory_m_limit = std::pow(log_p, 0.25);
    row.m_in_advisory_range = m <= row.advisory_m_limit;

    FpPolynomial f(mod, coefficients);
    if (f.degree() < 1) {
      row.skipped = true;
      row.note = "reduction mod p has degree < 1";
    } else if (!is_squarefree(f)) {
      row.skipped = true;
      row.note = "not square-free mod p";
    } else {
      const ResidueDistribution dist = char_walk_distribution(f, m, stat, threads);
      row.variance = variance_statistic(dist);
      row.max_deviation = max_deviation(dist);
      row.variance_ratio = row.variance * log_p / (static_cast<double>(m) * m);
      row.deviation_ratio = row.max_deviation * std::sqrt(log_p) / m;
      all_within = all_within && row.variance_ratio <= variance_budget &&
                   row.deviation_ratio <= deviation_budget;
    }
    check.rows.push_back(std::move(row));
  }
  for (const auto& row : check.rows) {
    if (row.skipped) continue;
    if (!first) first = &row;
    last = &row;
  }
  check.pass = first != nullptr && all_within;
  check.variance_trend_decreasing = first != nullptr && last->variance <= first->variance;
  return check;
}

}  // namespace charwalk
