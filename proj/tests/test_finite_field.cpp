#include <random>
#include <set>
#include <vector>

#include "charwalk/errors.hpp"
#include "charwalk/finite_field.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace charwalk;
using u64 = std::uint64_t;

TEST_CASE("legendre symbol small values") {
  const PrimeModulus p7(7);
  CHECK(legendre_symbol(2, p7) == 1);
  CHECK(legendre_symbol(3, p7) == -1);
  CHECK(legendre_symbol(0, p7) == 0);
  CHECK(legendre_symbol(0, PrimeModulus(5)) == 0);
  for (std::uint64_t p : {3u, 5u, 1000003u}) CHECK(legendre_symbol(1, PrimeModulus(p)) == 1);
  CHECK(legendre_symbol(14, p7) == 0);
  CHECK(legendre_symbol(-1, p7) == -1);
  CHECK(legendre_symbol(-1, PrimeModulus(5)) == 1);
  CHECK(legendre_symbol(2, PrimeModulus(3)) == -1);
}

TEST_CASE("legendre symbol matches the table of squares") {
  for (u64 p : {3u, 5u, 7u, 11u, 13u, 97u, 101u, 1009u}) {
    const PrimeModulus mod(p);
    const auto chi = oracle::legendre_table(p);
    for (std::int64_t n = -3 * static_cast<std::int64_t>(p); n < 3 * static_cast<std::int64_t>(p); ++n) {
      const auto r = static_cast<u64>(((n % static_cast<std::int64_t>(p)) + static_cast<std::int64_t>(p)) %
                                      static_cast<std::int64_t>(p));
      REQUIRE(legendre_symbol(n, mod) == chi[r]);
    }
  }
}

TEST_CASE("legendre symbol agrees with Euler's criterion") {
  std::mt19937_64 rng(12345);
  for (u64 p : {1000003ull, 998244353ull, 2305843009213693951ull}) {
    const PrimeModulus mod(p);
    for (int i = 0; i < 2000; ++i) {
      const auto n = static_cast<std::int64_t>(rng() >> 2) - (std::int64_t{1} << 60);
      REQUIRE(legendre_symbol(n, mod) == legendre_symbol_euler(n, mod));
    }
  }
}

TEST_CASE("legendre symbol is multiplicative and balanced") {
  const PrimeModulus p(10007);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 5000; ++i) {
    const auto a = static_cast<std::int64_t>(rng() % 10007);
    const auto b = static_cast<std::int64_t>(rng() % 10007);
    REQUIRE(legendre_symbol(a * b, p) == legendre_symbol(a, p) * legendre_symbol(b, p));
  }
  int sum = 0;
  for (std::int64_t n = 0; n < 10007; ++n) sum += legendre_symbol(n, p);
  CHECK(sum == 0);
}

TEST_CASE("jacobi symbol") {
  CHECK(jacobi_symbol(1001, 9907) == -1);
  CHECK(jacobi_symbol(19, 45) == 1);
  CHECK(jacobi_symbol(8, 21) == -1);
  CHECK(jacobi_symbol(5, 21) == 1);
  CHECK(jacobi_symbol(3, 9) == 0);
  CHECK(jacobi_symbol(0, 1) == 1);
}

TEST_CASE("primality against trial division") {
  for (u64 n = 0; n < 20000; ++n) REQUIRE(is_prime_u64(n) == oracle::is_prime_trial(n));
  CHECK(is_prime_u64(2305843009213693951ull));
  CHECK_FALSE(is_prime_u64(3215031751ull));
  CHECK_FALSE(is_prime_u64(3825123056546413051ull));
  CHECK(is_prime_u64(18446744073709551557ull));
}

TEST_CASE("prime modulus validation") {
  CHECK_THROWS_AS(PrimeModulus(2), InvalidInput);
  CHECK_THROWS_AS(PrimeModulus(1), InvalidInput);
  CHECK_THROWS_AS(PrimeModulus(0), InvalidInput);
  CHECK_THROWS_AS(PrimeModulus(9), InvalidInput);
  CHECK_THROWS_AS(PrimeModulus(18446744073709551557ull), InvalidInput);
  CHECK_NOTHROW(PrimeModulus(3));
  const PrimeModulus p(17);
  CHECK(p.add(5, 13) == 1);
  CHECK(p.sub(5, 13) == 9);
  CHECK(p.mul(5, 13) == 14);
  CHECK(p.inv(5) == 7);
  CHECK(p.pow(5, 0) == 1);
  CHECK(p.reduce(-1) == 16);
  CHECK_THROWS_AS(p.inv(0), InvalidInput);
}

TEST_CASE("field inverses at a large modulus") {
  const PrimeModulus p(2305843009213693951ull);
  std::mt19937_64 rng(99);
  for (int i = 0; i < 1000; ++i) {
    const u64 a = rng() % p.value();
    if (a == 0) continue;
    REQUIRE(p.mul(a, p.inv(a)) == 1);
  }
}

TEST_CASE("polynomial basics") {
  const PrimeModulus p(7);
  const FpPolynomial f(p, {1, 0, 1});
  CHECK(f.degree() == 2);
  CHECK(f(3) == 3);
  CHECK(poly_eval(f, 2) == 5);
  CHECK(poly_eval(FpPolynomial(p, {0, 1}), 3) == 3);
  CHECK(poly_eval(FpPolynomial::zero(p), 4) == 0);
  CHECK(FpPolynomial(p, {0, 0, 7}).is_zero());
  CHECK(FpPolynomial(p, {0, 0, 7}).degree() == -1);
  CHECK(FpPolynomial(p, {-1, 1}) == FpPolynomial(p, {6, 1}));
  CHECK(f.derivative() == FpPolynomial(p, {0, 2}));
  CHECK(FpPolynomial(p, {1, 0, 0, 0, 0, 0, 0, 0}).degree() == 0);
  CHECK_THROWS_AS(FpPolynomial(p, {0, 0, 0, 0, 0, 0, 0, 1}), InvalidInput);
  CHECK(FpPolynomial(p, {0, 1}).compose_linear(2, 3) == FpPolynomial(p, {3, 2}));
  CHECK(f.to_string().find("X^2") != std::string::npos);
}

TEST_CASE("polynomial ring identities") {
  const PrimeModulus p(101);
  std::mt19937_64 rng(2024);
  auto random_poly = [&](int deg) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(deg + 1));
    for (auto& x : c) x = static_cast<std::int64_t>(rng() % 101);
    return FpPolynomial(p, c);
  };
  for (int i = 0; i < 200; ++i) {
    const FpPolynomial a = random_poly(static_cast<int>(rng() % 8));
    const FpPolynomial b = random_poly(static_cast<int>(rng() % 5));
    if (b.is_zero()) continue;
    const PolyDivision qr = divmod(a, b);
    REQUIRE(qr.quotient * b + qr.remainder == a);
    REQUIRE(qr.remainder.degree() < b.degree());
    const u64 x = rng() % 101;
    REQUIRE((a * b)(x) == p.mul(a(x), b(x)));
    REQUIRE((a + b)(x) == p.add(a(x), b(x)));
    const FpPolynomial g = gcd(a, b);
    REQUIRE(divmod(a, g).remainder.is_zero());
    REQUIRE(divmod(b, g).remainder.is_zero());
    REQUIRE(g.leading() == 1);
  }
  CHECK_THROWS_AS(divmod(FpPolynomial(p, {1, 1}), FpPolynomial::zero(p)), InvalidInput);
}

TEST_CASE("square-free decomposition reconstructs the polynomial") {
  const PrimeModulus p(13);
  const FpPolynomial a(p, {1, 1});     // X + 1
  const FpPolynomial b(p, {2, 0, 1});  // X^2 + 2
  const FpPolynomial f = a * a * a * b.scaled(5);
  const auto parts = squarefree_decomposition(f);
  FpPolynomial rebuilt = FpPolynomial::constant(p, f.leading());
  for (const auto& part : parts) {
    for (unsigned i = 0; i < part.multiplicity; ++i) rebuilt = rebuilt * part.factor;
  }
  CHECK(rebuilt == f);
  CHECK_FALSE(is_squarefree(f));
  CHECK(is_squarefree(a * b));
  CHECK_THROWS_AS(is_squarefree(FpPolynomial::constant(p, 3)), InvalidInput);
  CHECK_THROWS_AS(squarefree_decomposition(FpPolynomial::zero(p)), InvalidInput);
}

TEST_CASE("squarefree examples") {
  CHECK(is_squarefree(FpPolynomial(PrimeModulus(7), {1, 0, 1})));
  CHECK_FALSE(is_squarefree(FpPolynomial(PrimeModulus(7), {1, 2, 1})));
  CHECK(is_squarefree(FpPolynomial(PrimeModulus(5), {0, 1})));
  CHECK(is_squarefree(FpPolynomial(PrimeModulus(101), {0, 1, 1})));
  for (std::uint64_t p : {3u, 7u, 101u}) CHECK_FALSE(is_squarefree(FpPolynomial(PrimeModulus(p), {0, 0, 1})));
  CHECK(is_perfect_square(FpPolynomial(PrimeModulus(11), {1, 2, 1})));
  CHECK_FALSE(is_squarefree(FpPolynomial(PrimeModulus(3), {0, 0, 1})));
}

TEST_CASE("perfect square test against exhaustive squaring") {
  for (u64 pv : {3u, 5u, 7u}) {
    const PrimeModulus p(pv);
    // every square G^2 with deg G <= 2
    std::set<std::vector<u64>> squares;
    const u64 total = pv * pv * pv;
    for (u64 code = 0; code < total; ++code) {
      std::vector<u64> g{code % pv, code / pv % pv, code / (pv * pv)};
      std::vector<u64> sq(5, 0);
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) sq[i + j] = (sq[i + j] + g[i] * g[j]) % pv;
      }
      while (!sq.empty() && sq.back() == 0) sq.pop_back();
      squares.insert(sq);
    }
    const u64 all = pv * pv * pv * pv * pv;
    for (u64 code = 1; code < all; ++code) {
      std::vector<std::int64_t> h;
      for (u64 c = code, i = 0; i < 5; ++i, c /= pv) h.push_back(static_cast<std::int64_t>(c % pv));
      while (!h.empty() && h.back() == 0) h.pop_back();
      if (h.empty() || h.size() > pv) continue;  // zero, or degree >= p
      const FpPolynomial poly(p, h);
      const auto coeffs = poly.coefficients();
      const bool expected = squares.contains(std::vector<u64>(coeffs.begin(), coeffs.end()));
      REQUIRE(is_perfect_square(poly) == expected);
    }
  }
}

TEST_CASE("perfect square examples") {
  const PrimeModulus p7(7);
  CHECK(is_perfect_square(FpPolynomial(p7, {1, 2, 1})));
  CHECK(is_perfect_square(FpPolynomial(p7, {2})));
  CHECK_FALSE(is_perfect_square(FpPolynomial(p7, {3})));
  CHECK_FALSE(is_perfect_square(FpPolynomial(p7, {0, 1})));
  CHECK_FALSE(is_perfect_square(FpPolynomial(p7, {3, 6, 3})));
  CHECK_THROWS_AS(is_perfect_square(FpPolynomial::zero(p7)), InvalidInput);
}
