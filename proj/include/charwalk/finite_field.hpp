#pragma once

// Arithmetic in Z/pZ for odd primes p < 2^62, the Legendre symbol, and
// dense univariate polynomials over F_p with the gcd-based square-free and
// perfect-square tests.

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace charwalk {

__extension__ using uint128 = unsigned __int128;

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime_u64(std::uint64_t n) noexcept;

/// Jacobi symbol (a/n) for odd n >= 1, by the reciprocity-driven
/// remainder loop. Returns 0 when gcd(a, n) > 1.
int jacobi_symbol(std::uint64_t a, std::uint64_t n) noexcept;

/// An odd prime modulus 3 <= p < 2^62.
class PrimeModulus {
 public:
  static constexpr std::uint64_t kMaxExclusive = std::uint64_t{1} << 62;

  /// Throws InvalidInput unless p is an odd prime below 2^62.
  explicit PrimeModulus(std::uint64_t p);

  std::uint64_t value() const noexcept { return p_; }
  std::uint64_t half_exponent() const noexcept { return (p_ - 1) / 2; }
  unsigned bit_length() const noexcept { return bits_; }

  /// Canonical representative of n in [0, p).
  std::uint64_t reduce(std::int64_t n) const noexcept;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint64_t neg(std::uint64_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept {
    return static_cast<std::uint64_t>(static_cast<uint128>(a) * b % p_);
  }
  std::uint64_t pow(std::uint64_t base, std::uint64_t exp) const noexcept;
  /// Inverse of a nonzero residue; throws InvalidInput on zero.
  std::uint64_t inv(std::uint64_t a) const;

  friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

 private:
  std::uint64_t p_;
  unsigned bits_;
};

/// Legendre symbol of n modulo p via the Jacobi reduction; n is reduced
/// mod p first, so negative and composite n are fine.
int legendre_symbol(std::int64_t n, const PrimeModulus& p) noexcept;

/// Euler's criterion n^((p-1)/2) mod p mapped to {-1, 0, 1}. Slow path kept
/// as an independent check of legendre_symbol.
int legendre_symbol_euler(std::int64_t n, const PrimeModulus& p) noexcept;

/// Dense polynomial over F_p, coefficients lowest degree first with
/// trailing zeros trimmed. The zero polynomial has no coefficients and
/// degree -1. Degree is kept below p.
class FpPolynomial {
 public:
  /// Coefficients are reduced mod p (negatives allowed). Throws InvalidInput
  /// if the trimmed degree is >= p.
  FpPolynomial(PrimeModulus p, std::span<const std::int64_t> coefficients);
  FpPolynomial(PrimeModulus p, std::initializer_list<std::int64_t> coefficients);

  static FpPolynomial zero(PrimeModulus p);
  static FpPolynomial constant(PrimeModulus p, std::uint64_t c);
  /// X^k.
  static FpPolynomial monomial(PrimeModulus p, unsigned k);

  const PrimeModulus& modulus() const noexcept { return p_; }
  std::span<const std::uint64_t> coefficients() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Leading coefficient; 0 for the zero polynomial.
  std::uint64_t leading() const noexcept { return coeffs_.empty() ? 0 : coeffs_.back(); }

  /// Horner evaluation at x in [0, p).
  std::uint64_t operator()(std::uint64_t x) const noexcept;

  FpPolynomial derivative() const;
  /// Scaled so the leading coefficient is 1; the zero polynomial is returned unchanged.
  FpPolynomial monic() const;
  FpPolynomial scaled(std::uint64_t c) const;
  /// F(aX + b).
  FpPolynomial compose_linear(std::uint64_t a, std::uint64_t b) const;

  FpPolynomial operator+(const FpPolynomial& rhs) const;
  FpPolynomial operator-(const FpPolynomial& rhs) const;
  FpPolynomial operator*(const FpPolynomial& rhs) const;

  friend bool operator==(const FpPolynomial&, const FpPolynomial&) = default;

  std::string to_string() const;

 private:
  struct Residues {};
  FpPolynomial(PrimeModulus p, std::vector<std::uint64_t> residues, Residues);
  void trim_and_check();
  void require_same_field(const FpPolynomial& other) const;

  PrimeModulus p_;
  std::vector<std::uint64_t> coeffs_;
};

/// F(x) mod p.
std::uint64_t poly_eval(const FpPolynomial& f, std::uint64_t x) noexcept;

struct PolyDivision {
  FpPolynomial quotient;
  FpPolynomial remainder;
};

/// Euclidean division; throws InvalidInput when the divisor is zero.
PolyDivision divmod(const FpPolynomial& a, const FpPolynomial& b);

/// Monic gcd (zero only when both inputs are zero).
FpPolynomial gcd(const FpPolynomial& a, const FpPolynomial& b);

struct SquareFreeFactor {
  FpPolynomial factor;  // monic, square-free, degree >= 1
  unsigned multiplicity;
};

/// Yun's decomposition F = lc * prod factor_i^i. Valid because every
/// multiplicity is below p (degree < p). Throws InvalidInput on zero.
std::vector<SquareFreeFactor> squarefree_decomposition(const FpPolynomial& f);

/// gcd(F, F') is constant. Throws InvalidInput for the zero polynomial and
/// for constants.
bool is_squarefree(const FpPolynomial& f);

/// H = c * G^2 with c a square in F_p. Throws InvalidInput on zero.
bool is_perfect_square(const FpPolynomial& h);

}  // namespace charwalk
