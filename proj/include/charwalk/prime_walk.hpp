#pragma once

// Walks indexed by primes: for each prime p the walk steps chi_p(q_1),
// chi_p(q_2), ... where q_j is the j-th prime. Primes p <= q_k are left out
// so that every step is +-1.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "charwalk/char_walk.hpp"
#include "charwalk/walk_model.hpp"

namespace charwalk {

struct PrimeTable {
  std::uint64_t limit = 0;
  std::vector<std::uint32_t> primes;  // all primes <= limit, increasing

  std::size_t count() const noexcept { return primes.size(); }
};

inline constexpr std::uint64_t kMaxSieveLimit = 1'000'000'000;
inline constexpr std::size_t kDefaultSieveMemoryBudget = std::size_t{1} << 30;

/// Segmented odd-only sieve of Eratosthenes for 2 <= N <= 10^9. Throws
/// ResourceLimit when the estimated table size exceeds memory_budget_bytes.
PrimeTable sieve_primes(std::uint64_t N,
                        std::size_t memory_budget_bytes = kDefaultSieveMemoryBudget);

struct PrimeWalkResult {
  std::uint64_t N = 0;
  int k = 0;
  std::uint64_t step_prime = 0;  // q_k
  ResidueDistribution distribution;
  std::uint64_t included_prime_count = 0;  // primes q_k < p <= N
  std::uint64_t excluded_prime_count = 0;  // primes p <= q_k
  WalkLaw model;                           // +-1 walk law for the same k, m
  double max_discrepancy = 0.0;            // max_a |frequency - model|
  double advisory_k_limit = 0.0;            // log log N / log log log N (advisory)
  bool k_in_advisory_range = false;
};

/// Residues mod m of S_k(p) = sum_{j <= k} chi_p(q_j) over primes q_k < p <= N.
/// Throws InvalidInput if k < 1, m < 2 or q_k >= N.
PrimeWalkResult psi_N(const PrimeTable& table, int k, int m, unsigned threads = 0);
PrimeWalkResult psi_N(std::uint64_t N, int k, int m, unsigned threads = 0);

struct PrimeSignCensus {
  std::uint64_t N = 0;
  int k = 0;
  std::vector<std::uint64_t> counts;  // 2^k entries indexed as in encode_signs
  std::uint64_t included_prime_count = 0;
};

/// Tally of (chi_p(q_1), ..., chi_p(q_k)) over primes q_k < p <= N; k <= 20.
PrimeSignCensus prime_sign_census(const PrimeTable& table, int k, unsigned threads = 0);

/// Fraction of primes q_k < p <= N whose symbol vector equals v (k = |v|).
double sign_pattern_fraction(const PrimeTable& table, std::span<const int> v,
                             unsigned threads = 0);
double sign_pattern_fraction(std::uint64_t N, std::span<const int> v, unsigned threads = 0);

}  // namespace charwalk
