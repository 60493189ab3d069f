#include "charwalk/prime_walk.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "charwalk/errors.hpp"
#include "charwalk/finite_field.hpp"
#include "charwalk/parallel.hpp"

namespace charwalk {

namespace {

using u64 = std::uint64_t;

constexpr std::size_t kSegmentOdds = std::size_t{1} << 18;
constexpr std::size_t kPrimeChunk = std::size_t{1} << 14;

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::size_t estimated_table_bytes(u64 N) {
  // Rosser-Schoenfeld: pi(x) < 1.25506 x / ln x for x > 1.
  const double n = static_cast<double>(std::max<u64>(N, 3));
  const double count = 1.25506 * n / std::log(n) + 16;
  return static_cast<std::size_t>(count * sizeof(std::uint32_t)) + kSegmentOdds;
}

// First index of the table strictly greater than q_k; validates k and N.
std::size_t first_included(const PrimeTable& table, int k) {
  if (k < 1) throw InvalidInput("walk length k must be >= 1");
  if (static_cast<std::size_t>(k) >= table.count() ||
      table.primes[static_cast<std::size_t>(k) - 1] >= table.limit) {
    throw InvalidInput("need q_k < N: the " + std::to_string(k) + "-th prime is not below " +
                       std::to_string(table.limit));
  }
  return static_cast<std::size_t>(k);
}

// Applies body(begin, end) to chunks of the included primes [first, count).
template <typename Body>
void for_prime_chunks(const PrimeTable& table, std::size_t first, unsigned threads, Body&& body) {
  const std::size_t n = table.count() - first;
  const std::size_t chunks = (n + kPrimeChunk - 1) / kPrimeChunk;
  parallel_for_chunks(chunks, threads, [&](std::size_t c) {
    const std::size_t begin = first + c * kPrimeChunk;
    body(begin, std::min(table.count(), begin + kPrimeChunk));
  });
}

}  // namespace

PrimeTable sieve_primes(u64 N, std::size_t memory_budget_bytes) {
  if (N < 2 || N > kMaxSieveLimit) {
    throw InvalidInput("sieve limit must be in [2, 10^9], got " + std::to_string(N));
  }
  if (estimated_table_bytes(N) > memory_budget_bytes) {
    throw ResourceLimit("prime table up to " + std::to_string(N) + " exceeds the memory budget of " +
                        std::to_string(memory_budget_bytes) + " bytes");
  }

  PrimeTable table;
  table.limit = N;
  table.primes.reserve(static_cast<std::size_t>(1.25506 * N / std::log(std::max<double>(N, 3))) + 16);
  table.primes.push_back(2);

  // odd base primes up to sqrt(N)
  const u64 root = isqrt(N);
  std::vector<bool> composite(root + 1, false);
  std::vector<u64> base;
  for (u64 i = 3; i <= root; i += 2) {
    if (composite[i]) continue;
    base.push_back(i);
    for (u64 j = i * i; j <= root; j += 2 * i) composite[j] = true;
  }

  // odd n = 2i + 1 for i in [1, (N - 1) / 2]
  const u64 last_index = (N - 1) / 2;
  std::vector<std::uint8_t> flags(kSegmentOdds);
  for (u64 lo = 1; lo <= last_index; lo += kSegmentOdds) {
    const u64 hi = std::min<u64>(last_index + 1, lo + kSegmentOdds);
    std::fill(flags.begin(), flags.begin() + static_cast<std::ptrdiff_t>(hi - lo), 1);
    const u64 hi_value = 2 * (hi - 1) + 1;
    for (u64 q : base) {
      if (q * q > hi_value) break;
      const u64 lo_value = 2 * lo + 1;
      u64 start = std::max(q * q, (lo_value + q - 1) / q * q);
      if (start % 2 == 0) start += q;
      for (u64 i = (start - 1) / 2; i < hi; i += q) flags[i - lo] = 0;
    }
    for (u64 i = lo; i < hi; ++i) {
      if (flags[i - lo]) table.primes.push_back(static_cast<std::uint32_t>(2 * i + 1));
    }
  }
  return table;
}

PrimeWalkResult psi_N(const PrimeTable& table, int k, int m, unsigned threads) {
  if (m < 2) throw InvalidInput("modulus m must be >= 2");
  const std::size_t first = first_included(table, k);
  const auto steps = std::span(table.primes).first(static_cast<std::size_t>(k));

  PrimeWalkResult result;
  result.N = table.limit;
  result.k = k;
  result.step_prime = steps.back();
  result.included_prime_count = table.count() - first;
  result.excluded_prime_count = first;

  std::vector<int> residue(table.count(), 0);
  for_prime_chunks(table, first, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const u64 p = table.primes[i];
      int sum = 0;
      for (u64 q : steps) sum += jacobi_symbol(q, p);
      residue[i] = ((sum % m) + m) % m;
    }
  });

  result.distribution = {m, std::vector<u64>(static_cast<std::size_t>(m), 0), result.included_prime_count};
  for (std::size_t i = first; i < table.count(); ++i) ++result.distribution.counts[static_cast<std::size_t>(residue[i])];

  result.model = psi_exact(WalkKind::Rademacher, k, m);
  for (int a = 0; a < m; ++a) {
    result.max_discrepancy =
        std::max(result.max_discrepancy,
                 std::abs(result.distribution.frequency(a) - result.model.probabilities[static_cast<std::size_t>(a)]));
  }
  const double log_n = std::log(static_cast<double>(table.limit));
  const double log2_n = log_n > 0 ? std::log(log_n) : 0.0;
  const double log3_n = log2_n > 0 ? std::log(log2_n) : 0.0;
  result.advisory_k_limit = log3_n > 0 ? log2_n / log3_n : 0.0;
  result.k_in_advisory_range = k <= result.advisory_k_limit;
  return result;
}

PrimeWalkResult psi_N(u64 N, int k, int m, unsigned threads) {
  return psi_N(sieve_primes(N), k, m, threads);
}

PrimeSignCensus prime_sign_census(const PrimeTable& table, int k, unsigned threads) {
  if (k > 20) throw InvalidInput("sign pattern length must be <= 20");
  const std::size_t first = first_included(table, k);
  const auto steps = std::span(table.primes).first(static_cast<std::size_t>(k));

  std::vector<std::uint32_t> index(table.count(), 0);
  for_prime_chunks(table, first, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const u64 p = table.primes[i];
      std::uint32_t v = 0;
      for (std::size_t j = 0; j < steps.size(); ++j) {
        if (jacobi_symbol(steps[j], p) < 0) v |= std::uint32_t{1} << j;
      }
      index[i] = v;
    }
  });

  PrimeSignCensus census;
  census.N = table.limit;
  census.k = k;
  census.counts.assign(std::size_t{1} << k, 0);
  census.included_prime_count = table.count() - first;
  for (std::size_t i = first; i < table.count(); ++i) ++census.counts[index[i]];
  return census;
}

double sign_pattern_fraction(const PrimeTable& table, std::span<const int> v, unsigned threads) {
  const std::uint32_t target = encode_signs(v);
  const PrimeSignCensus census = prime_sign_census(table, static_cast<int>(v.size()), threads);
  return static_cast<double>(census.counts[target]) / static_cast<double>(census.included_prime_count);
}

double sign_pattern_fraction(u64 N, std::span<const int> v, unsigned threads) {
  return sign_pattern_fraction(sieve_primes(N), v, threads);
}

}  // namespace charwalk
