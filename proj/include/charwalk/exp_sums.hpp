#pragma once

// Mixed character sums S_I(P1, P2) = sum_{n in I} chi_p(P1(n)) e_p(P2(n))
// over an interval I of {0, ..., p-1}, and the checks against the Weil bound
// D sqrt(p) (complete sums) and the completed bound 2 D sqrt(p) log p
// (incomplete sums), with D = deg P1 + deg P2.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <vector>

#include "charwalk/finite_field.hpp"

namespace charwalk {

inline constexpr std::uint64_t kMaxTwistedSumPrime = 10'000'000;
inline constexpr std::uint64_t kMaxPhaseTablePrime = std::uint64_t{1} << 22;

class TwistedSumSpec {
 public:
  /// P1 square-free of degree >= 1, P2 any polynomial over the same field
  /// (zero allowed), 1 <= length and start + length <= p.
  TwistedSumSpec(FpPolynomial p1, FpPolynomial p2, std::uint64_t start, std::uint64_t length);

  const PrimeModulus& modulus() const noexcept { return p1_.modulus(); }
  const FpPolynomial& p1() const noexcept { return p1_; }
  const FpPolynomial& p2() const noexcept { return p2_; }
  std::uint64_t start() const noexcept { return start_; }
  std::uint64_t length() const noexcept { return length_; }
  /// deg P1 + max(deg P2, 0)
  int degree_sum() const noexcept { return p1_.degree() + std::max(p2_.degree(), 0); }
  bool complete() const noexcept { return length_ == modulus().value(); }

 private:
  FpPolynomial p1_;
  FpPolynomial p2_;
  std::uint64_t start_;
  std::uint64_t length_;
};

/// e_p(r) = exp(2 pi i r / p) for r in [0, p), p <= 2^22.
class PhaseTable {
 public:
  explicit PhaseTable(std::uint64_t p);
  std::uint64_t modulus() const noexcept { return values_.size(); }
  std::complex<double> operator[](std::uint64_t r) const noexcept { return values_[r]; }

 private:
  std::vector<std::complex<double>> values_;
};

/// Direct summation with compensated accumulation. Uses `phases` when given
/// (it must match p), builds a table when p <= 2^22 and falls back to
/// per-term trigonometry above. Throws ResourceLimit for p > 10^7.
std::complex<double> twisted_char_sum(const TwistedSumSpec& spec, const PhaseTable* phases = nullptr);

struct WeilCheck {
  std::complex<double> value;
  double magnitude = 0.0;
  double bound = 0.0;   // D sqrt(p) when complete, else 2 D sqrt(p) log p
  double margin = 0.0;  // bound - magnitude
  bool complete = false;

  bool pass() const noexcept { return margin >= 0.0; }
};

WeilCheck weil_bound_check(const TwistedSumSpec& spec, const PhaseTable* phases = nullptr);

struct WeilSweepSummary {
  std::uint64_t max_prime = 0;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  double min_margin = 0.0;
  double min_complete_margin = 0.0;
  double min_incomplete_margin = 0.0;
};

/// Every odd prime p <= max_prime, every monic square-free P1 of degree 1 or
/// 2, P2 in {0, X, X^2}, and I in {full range, first floor(p/2) residues}.
WeilSweepSummary weil_sweep(std::uint64_t max_prime);

}  // namespace charwalk
