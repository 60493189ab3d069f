#include <cmath>
#include <complex>
#include <numbers>

#include "charwalk/errors.hpp"
#include "charwalk/exp_sums.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace charwalk;
using u64 = std::uint64_t;

namespace {

std::complex<double> naive_sum(u64 p, const std::vector<std::int64_t>& p1, const std::vector<std::int64_t>& p2,
                               u64 start, u64 length) {
  const auto chi = oracle::legendre_table(p);
  std::complex<double> sum = 0.0;
  for (u64 n = start; n < start + length; ++n) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(oracle::eval_mod(p2, n, p)) / static_cast<double>(p);
    sum += static_cast<double>(chi[oracle::eval_mod(p1, n, p)]) * std::polar(1.0, angle);
  }
  return sum;
}

}  // namespace

TEST_CASE("twisted sum hand values") {
  const PrimeModulus p7(7);
  const FpPolynomial x7(p7, {0, 1});
  CHECK(std::abs(twisted_char_sum(TwistedSumSpec(x7, FpPolynomial::zero(p7), 0, 7))) < 1e-12);
  CHECK(std::abs(twisted_char_sum(TwistedSumSpec(x7, FpPolynomial::zero(p7), 1, 3)) - 1.0) < 1e-12);
  const PrimeModulus p5(5);
  const FpPolynomial x5(p5, {0, 1});
  CHECK(std::abs(twisted_char_sum(TwistedSumSpec(x5, x5, 0, 5))) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("weil check examples") {
  const PrimeModulus p7(7);
  const auto w = weil_bound_check(TwistedSumSpec(FpPolynomial(p7, {0, 1}), FpPolynomial::zero(p7), 0, 7));
  CHECK(w.complete);
  CHECK(w.bound == doctest::Approx(std::sqrt(7.0)));
  CHECK(w.margin == doctest::Approx(std::sqrt(7.0)));
  CHECK(w.pass());
  const PrimeModulus p5(5);
  const FpPolynomial x5(p5, {0, 1});
  const auto g = weil_bound_check(TwistedSumSpec(x5, x5, 0, 5));
  CHECK(g.bound == doctest::Approx(2.0 * std::sqrt(5.0)));
  CHECK(g.margin == doctest::Approx(std::sqrt(5.0)));
  const auto inc = weil_bound_check(TwistedSumSpec(x5, x5, 0, 2));
  CHECK_FALSE(inc.complete);
  CHECK(inc.bound == doctest::Approx(4.0 * std::sqrt(5.0) * std::log(5.0)));
}

TEST_CASE("twisted sum argument validation") {
  const PrimeModulus p(11);
  const FpPolynomial x(p, {0, 1});
  CHECK_THROWS_AS(TwistedSumSpec(FpPolynomial(p, {0, 0, 1}), x, 0, 11), InvalidInput);
  CHECK_THROWS_AS(TwistedSumSpec(FpPolynomial(p, {3}), x, 0, 11), InvalidInput);
  CHECK_THROWS_AS(TwistedSumSpec(x, x, 0, 0), InvalidInput);
  CHECK_THROWS_AS(TwistedSumSpec(x, x, 5, 7), InvalidInput);
  CHECK_THROWS_AS(TwistedSumSpec(x, FpPolynomial(PrimeModulus(13), {0, 1}), 0, 11), InvalidInput);
  CHECK(TwistedSumSpec(x, FpPolynomial::zero(p), 0, 11).degree_sum() == 1);
  CHECK(TwistedSumSpec(FpPolynomial(p, {1, 0, 1}), FpPolynomial(p, {0, 0, 1}), 0, 11).degree_sum() == 4);
}

TEST_CASE("twisted sum matches naive summation") {
  for (u64 pv : {3u, 7u, 31u, 101u}) {
    const PrimeModulus p(pv);
    const std::vector<std::vector<std::int64_t>> p1s{{0, 1}, {2, 1}, {1, 0, 1}, {3, 1, 1}};
    const std::vector<std::vector<std::int64_t>> p2s{{}, {0, 1}, {0, 0, 1}, {1, 2, 3}};
    for (const auto& a : p1s) {
      const FpPolynomial f1(p, a);
      if (f1.degree() < 1 || !is_squarefree(f1)) continue;
      for (const auto& b : p2s) {
        for (auto [start, length] : {std::pair<u64, u64>{0, pv}, {1, pv / 2}, {pv / 3, pv - pv / 3}}) {
          if (length == 0) continue;
          const auto got = twisted_char_sum(TwistedSumSpec(f1, FpPolynomial(p, b), start, length));
          REQUIRE(std::abs(got - naive_sum(pv, a, b, start, length)) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("conjugation and interval additivity") {
  const PrimeModulus p(1009);
  const FpPolynomial f1(p, {5, 1, 1});
  const FpPolynomial f2(p, {0, 3, 7});
  const FpPolynomial neg = FpPolynomial::zero(p) - f2;
  const auto s = twisted_char_sum(TwistedSumSpec(f1, f2, 0, 1009));
  const auto c = twisted_char_sum(TwistedSumSpec(f1, neg, 0, 1009));
  CHECK(std::abs(s - std::conj(c)) < 1e-12);
  const auto left = twisted_char_sum(TwistedSumSpec(f1, f2, 0, 400));
  const auto right = twisted_char_sum(TwistedSumSpec(f1, f2, 400, 609));
  CHECK(std::abs(s - (left + right)) < 1e-12);
  std::complex<double> blocks = 0.0;
  for (u64 b = 0; b < 1009; b += 100) blocks += twisted_char_sum(TwistedSumSpec(f1, f2, b, std::min<u64>(100, 1009 - b)));
  CHECK(std::abs(s - blocks) < 1e-12);
}

TEST_CASE("phase table path equals per-term trigonometry") {
  const PrimeModulus p(10007);
  const FpPolynomial f1(p, {1, 0, 1});
  const FpPolynomial f2(p, {0, 1, 1});
  const PhaseTable table(10007);
  CHECK(table.modulus() == 10007);
  const TwistedSumSpec spec(f1, f2, 0, 10007);
  CHECK(std::abs(twisted_char_sum(spec, &table) - naive_sum(10007, {1, 0, 1}, {0, 1, 1}, 0, 10007)) < 1e-9);
  const PhaseTable wrong(5);
  CHECK_THROWS_AS(twisted_char_sum(spec, &wrong), InvalidInput);
}

TEST_CASE("twisted sum size cap") {
  const PrimeModulus p(10'000'019);
  const FpPolynomial x(p, {0, 1});
  CHECK_THROWS_AS(twisted_char_sum(TwistedSumSpec(x, FpPolynomial::zero(p), 0, 10)), ResourceLimit);
}

TEST_CASE("weil sweep has nonnegative margins") {
  const auto sweep = weil_sweep(31);
  CHECK(sweep.failures == 0);
  CHECK(sweep.cases > 0);
  CHECK(sweep.min_margin >= 0.0);
  CHECK(sweep.min_complete_margin >= 0.0);
  CHECK(sweep.min_incomplete_margin >= 0.0);
}
