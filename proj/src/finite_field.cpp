#include "charwalk/finite_field.hpp"

#include <bit>
#include <string>
#include <utility>

#include "charwalk/errors.hpp"

namespace charwalk {

namespace {

using u64 = std::uint64_t;
using u128 = uint128;

u64 mulmod(u64 a, u64 b, u64 n) { return static_cast<u64>(static_cast<u128>(a) * b % n); }

u64 powmod(u64 base, u64 exp, u64 n) {
  u64 result = 1 % n;
  base %= n;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, n);
    base = mulmod(base, base, n);
    exp >>= 1;
  }
  return result;
}

bool strong_probable_prime(u64 n, u64 a, u64 d, int r) {
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < r; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime_u64(u64 n) noexcept {
  if (n < 2) return false;
  for (u64 small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % small == 0) return n == small;
  }
  u64 d = n - 1;
  int r = std::countr_zero(d);
  d >>= r;
  // The first twelve prime bases are a deterministic witness set below 3.3e24.
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (!strong_probable_prime(n, a, d, r)) return false;
  }
  return true;
}

int jacobi_symbol(u64 a, u64 n) noexcept {
  a %= n;
  int sign = 1;
  while (a != 0) {
    int twos = std::countr_zero(a);
    a >>= twos;
    // (2/n) = -1 iff n = 3, 5 mod 8
    if ((twos & 1) && ((n & 7) == 3 || (n & 7) == 5)) sign = -sign;
    // reciprocity: flip when both are 3 mod 4
    if ((a & 3) == 3 && (n & 3) == 3) sign = -sign;
    std::swap(a, n);
    a %= n;
  }
  return n == 1 ? sign : 0;
}

PrimeModulus::PrimeModulus(u64 p) : p_(p), bits_(static_cast<unsigned>(std::bit_width(p))) {
  if (p == 2 || p % 2 == 0) {
    throw InvalidInput("modulus must be an odd prime, got " + std::to_string(p));
  }
  if (p >= kMaxExclusive) {
    throw InvalidInput("modulus must be below 2^62, got " + std::to_string(p));
  }
  if (!is_prime_u64(p)) {
    throw InvalidInput("modulus is not prime: " + std::to_string(p));
  }
}

u64 PrimeModulus::reduce(std::int64_t n) const noexcept {
  if (n >= 0) return static_cast<u64>(n) % p_;
  u64 r = static_cast<u64>(-(n + 1)) % p_;  // avoids overflow at INT64_MIN
  return p_ - 1 - r;
}

u64 PrimeModulus::pow(u64 base, u64 exp) const noexcept { return powmod(base, exp, p_); }

u64 PrimeModulus::inv(u64 a) const {
  a %= p_;
  if (a == 0) throw InvalidInput("zero has no inverse mod p");
  return powmod(a, p_ - 2, p_);
}

int legendre_symbol(std::int64_t n, const PrimeModulus& p) noexcept {
  return jacobi_symbol(p.reduce(n), p.value());
}

int legendre_symbol_euler(std::int64_t n, const PrimeModulus& p) noexcept {
  u64 r = p.reduce(n);
  if (r == 0) return 0;
  u64 e = p.pow(r, p.half_exponent());
  return e == 1 ? 1 : -1;
}

}  // namespace charwalk
