#include "charwalk/exp_sums.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>

#include "charwalk/errors.hpp"

namespace charwalk {

namespace {

using u64 = std::uint64_t;
using cplx = std::complex<double>;

// Neumaier summation on each component.
struct CompensatedComplex {
  double re = 0.0, re_c = 0.0, im = 0.0, im_c = 0.0;

  static void add(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) comp += (sum - t) + x;
    else comp += (x - t) + sum;
    sum = t;
  }
  void add(cplx z) {
    add(re, re_c, z.real());
    add(im, im_c, z.imag());
  }
  cplx value() const { return {re + re_c, im + im_c}; }
};

cplx phase_of(u64 r, u64 p) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(p));
}

}  // namespace

TwistedSumSpec::TwistedSumSpec(FpPolynomial p1, FpPolynomial p2, u64 start, u64 length)
    : p1_(std::move(p1)), p2_(std::move(p2)), start_(start), length_(length) {
  if (!(p1_.modulus() == p2_.modulus())) throw InvalidInput("P1 and P2 must share the modulus");
  if (p1_.degree() < 1) throw InvalidInput("P1 must have degree >= 1");
  if (!is_squarefree(p1_)) throw InvalidInput("P1 must be square-free");
  const u64 p = p1_.modulus().value();
  if (length_ < 1 || start_ >= p || length_ > p - start_) {
    throw InvalidInput("interval must satisfy 1 <= length and start + length <= p");
  }
}

PhaseTable::PhaseTable(u64 p) {
  if (p > kMaxPhaseTablePrime) throw ResourceLimit("phase table capped at 2^22 entries");
  values_.resize(p);
  for (u64 r = 0; r < p; ++r) values_[r] = phase_of(r, p);
}

cplx twisted_char_sum(const TwistedSumSpec& spec, const PhaseTable* phases) {
  const PrimeModulus& mod = spec.modulus();
  const u64 p = mod.value();
  if (p > kMaxTwistedSumPrime) {
    throw ResourceLimit("direct summation capped at p <= 10^7, got " + std::to_string(p));
  }
  const FpPolynomial& p1 = spec.p1();
  const FpPolynomial& p2 = spec.p2();
  const u64 end = spec.start() + spec.length();

  if (p2.is_zero()) {
    std::int64_t sum = 0;
    for (u64 n = spec.start(); n < end; ++n) sum += jacobi_symbol(p1(n), p);
    return {static_cast<double>(sum), 0.0};
  }

  if (phases && phases->modulus() != p) throw InvalidInput("phase table modulus mismatch");
  std::optional<PhaseTable> local;
  if (!phases && p <= kMaxPhaseTablePrime) phases = &local.emplace(p);

  CompensatedComplex acc;
  for (u64 n = spec.start(); n < end; ++n) {
    const int chi = jacobi_symbol(p1(n), p);
    if (chi == 0) continue;
    const u64 r = p2(n);
    const cplx e = phases ? (*phases)[r] : phase_of(r, p);
    acc.add(chi > 0 ? e : -e);
  }
  return acc.value();
}

WeilCheck weil_bound_check(const TwistedSumSpec& spec, const PhaseTable* phases) {
  WeilCheck check;
  check.value = twisted_char_sum(spec, phases);
  check.magnitude = std::abs(check.value);
  check.complete = spec.complete();
  const double p = static_cast<double>(spec.modulus().value());
  const double d = spec.degree_sum();
  check.bound = check.complete ? d * std::sqrt(p) : 2.0 * d * std::sqrt(p) * std::log(p);
  check.margin = check.bound - check.magnitude;
  return check;
}

WeilSweepSummary weil_sweep(u64 max_prime) {
  WeilSweepSummary summary;
  summary.max_prime = max_prime;
  summary.min_margin = std::numeric_limits<double>::infinity();
  summary.min_complete_margin = summary.min_margin;
  summary.min_incomplete_margin = summary.min_margin;

  for (u64 p = 3; p <= max_prime; p += 2) {
    if (!is_prime_u64(p)) continue;
    const PrimeModulus mod(p);
    const PhaseTable phases(p);
    const auto sp = static_cast<std::int64_t>(p);
    const std::vector<FpPolynomial> twists = {FpPolynomial::zero(mod), FpPolynomial::monomial(mod, 1),
                                              FpPolynomial::monomial(mod, 2)};

    std::vector<FpPolynomial> firsts;
    for (std::int64_t b = 0; b < sp; ++b) firsts.emplace_back(mod, std::initializer_list<std::int64_t>{b, 1});
    for (std::int64_t c = 0; c < sp; ++c) {
      for (std::int64_t b = 0; b < sp; ++b) {
        FpPolynomial f(mod, {c, b, 1});
        if (is_squarefree(f)) firsts.push_back(std::move(f));
      }
    }

    for (const FpPolynomial& p1 : firsts) {
      for (const FpPolynomial& p2 : twists) {
        for (u64 length : {p, p / 2}) {
          const WeilCheck check = weil_bound_check(TwistedSumSpec(p1, p2, 0, length), &phases);
          ++summary.cases;
          if (!check.pass()) ++summary.failures;
          summary.min_margin = std::min(summary.min_margin, check.margin);
          double& slot = check.complete ? summary.min_complete_margin : summary.min_incomplete_margin;
          slot = std::min(slot, check.margin);
        }
      }
    }
  }
  return summary;
}

}  // namespace charwalk
