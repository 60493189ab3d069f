#include <algorithm>
#include <string>
#include <utility>

#include "charwalk/errors.hpp"
#include "charwalk/finite_field.hpp"

namespace charwalk {

using u64 = std::uint64_t;

FpPolynomial::FpPolynomial(PrimeModulus p, std::span<const std::int64_t> coefficients) : p_(p) {
  coeffs_.reserve(coefficients.size());
  for (std::int64_t c : coefficients) coeffs_.push_back(p_.reduce(c));
  trim_and_check();
}

FpPolynomial::FpPolynomial(PrimeModulus p, std::initializer_list<std::int64_t> coefficients)
    : FpPolynomial(p, std::span<const std::int64_t>(coefficients.begin(), coefficients.size())) {}

FpPolynomial::FpPolynomial(PrimeModulus p, std::vector<u64> residues, Residues)
    : p_(p), coeffs_(std::move(residues)) {
  trim_and_check();
}

void FpPolynomial::trim_and_check() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  if (!coeffs_.empty() && coeffs_.size() - 1 >= p_.value()) {
    throw InvalidInput("polynomial degree must be below p");
  }
}

void FpPolynomial::require_same_field(const FpPolynomial& other) const {
  if (!(p_ == other.p_)) throw InvalidInput("polynomials over different fields");
}

FpPolynomial FpPolynomial::zero(PrimeModulus p) { return FpPolynomial(p, std::vector<u64>{}, Residues{}); }

FpPolynomial FpPolynomial::constant(PrimeModulus p, u64 c) {
  return FpPolynomial(p, std::vector<u64>{c % p.value()}, Residues{});
}

FpPolynomial FpPolynomial::monomial(PrimeModulus p, unsigned k) {
  std::vector<u64> c(k + 1, 0);
  c[k] = 1;
  return FpPolynomial(p, std::move(c), Residues{});
}

u64 FpPolynomial::operator()(u64 x) const noexcept {
  u64 acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = p_.add(p_.mul(acc, x), *it);
  }
  return acc;
}

u64 poly_eval(const FpPolynomial& f, u64 x) noexcept { return f(x); }

FpPolynomial FpPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return zero(p_);
  std::vector<u64> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = p_.mul(coeffs_[i], i % p_.value());
  return FpPolynomial(p_, std::move(d), Residues{});
}

FpPolynomial FpPolynomial::scaled(u64 c) const {
  std::vector<u64> out(coeffs_.size());
  c %= p_.value();
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = p_.mul(coeffs_[i], c);
  return FpPolynomial(p_, std::move(out), Residues{});
}

FpPolynomial FpPolynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(p_.inv(leading()));
}

FpPolynomial FpPolynomial::compose_linear(u64 a, u64 b) const {
  a %= p_.value();
  b %= p_.value();
  // Horner in the polynomial ring: acc = acc * (aX + b) + c_i
  const FpPolynomial linear(p_, std::vector<u64>{b, a}, Residues{});
  FpPolynomial acc = zero(p_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * linear + constant(p_, *it);
  }
  return acc;
}

FpPolynomial FpPolynomial::operator+(const FpPolynomial& rhs) const {
  require_same_field(rhs);
  std::vector<u64> out(std::max(coeffs_.size(), rhs.coeffs_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    u64 a = i < coeffs_.size() ? coeffs_[i] : 0;
    u64 b = i < rhs.coeffs_.size() ? rhs.coeffs_[i] : 0;
    out[i] = p_.add(a, b);
  }
  return FpPolynomial(p_, std::move(out), Residues{});
}

FpPolynomial FpPolynomial::operator-(const FpPolynomial& rhs) const {
  require_same_field(rhs);
  std::vector<u64> out(std::max(coeffs_.size(), rhs.coeffs_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    u64 a = i < coeffs_.size() ? coeffs_[i] : 0;
    u64 b = i < rhs.coeffs_.size() ? rhs.coeffs_[i] : 0;
    out[i] = p_.sub(a, b);
  }
  return FpPolynomial(p_, std::move(out), Residues{});
}

FpPolynomial FpPolynomial::operator*(const FpPolynomial& rhs) const {
  require_same_field(rhs);
  if (is_zero() || rhs.is_zero()) return zero(p_);
  std::vector<u64> out(coeffs_.size() + rhs.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
      out[i + j] = p_.add(out[i + j], p_.mul(coeffs_[i], rhs.coeffs_[j]));
    }
  }
  return FpPolynomial(p_, std::move(out), Residues{});
}

std::string FpPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    u64 c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!s.empty()) s += " + ";
    if (i == 0 || c != 1) s += std::to_string(c);
    if (i >= 1) s += "X";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

PolyDivision divmod(const FpPolynomial& a, const FpPolynomial& b) {
  if (b.is_zero()) throw InvalidInput("polynomial division by zero");
  if (!(a.modulus() == b.modulus())) throw InvalidInput("polynomials over different fields");
  const PrimeModulus& p = a.modulus();
  if (a.degree() < b.degree()) return {FpPolynomial::zero(p), a};

  std::vector<u64> rem(a.coefficients().begin(), a.coefficients().end());
  auto divisor = b.coefficients();
  const std::size_t db = divisor.size() - 1;
  const u64 lead_inv = p.inv(divisor[db]);
  std::vector<std::int64_t> quot(rem.size() - db, 0);

  for (std::size_t k = rem.size(); k-- > db;) {
    u64 q = p.mul(rem[k], lead_inv);
    quot[k - db] = static_cast<std::int64_t>(q);
    if (q == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) {
      rem[k - db + j] = p.sub(rem[k - db + j], p.mul(q, divisor[j]));
    }
  }
  rem.resize(db);
  std::vector<std::int64_t> rem_signed(rem.begin(), rem.end());
  return {FpPolynomial(p, quot), FpPolynomial(p, rem_signed)};
}

FpPolynomial gcd(const FpPolynomial& a, const FpPolynomial& b) {
  FpPolynomial x = a;
  FpPolynomial y = b;
  while (!y.is_zero()) {
    FpPolynomial r = divmod(x, y).remainder;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

namespace {

FpPolynomial exact_quotient(const FpPolynomial& a, const FpPolynomial& b) {
  return divmod(a, b).quotient;
}

}  // namespace

std::vector<SquareFreeFactor> squarefree_decomposition(const FpPolynomial& f) {
  if (f.is_zero()) throw InvalidInput("square-free decomposition of the zero polynomial");
  std::vector<SquareFreeFactor> out;
  const FpPolynomial g = f.monic();
  if (g.degree() == 0) return out;

  // Yun: with a0 = gcd(g, g'), b1 = g/a0, d1 = g'/a0 - b1', each step
  // a_i = gcd(b_i, d_i) peels off the product of factors of multiplicity i.
  const FpPolynomial dg = g.derivative();
  const FpPolynomial a0 = gcd(g, dg);
  FpPolynomial b = exact_quotient(g, a0);
  FpPolynomial d = exact_quotient(dg, a0) - b.derivative();
  unsigned i = 1;
  while (b.degree() > 0) {
    FpPolynomial a = gcd(b, d);
    FpPolynomial next_b = exact_quotient(b, a);
    FpPolynomial c = exact_quotient(d, a);
    if (a.degree() > 0) out.push_back({a, i});
    b = std::move(next_b);
    d = c - b.derivative();
    ++i;
  }
  return out;
}

bool is_squarefree(const FpPolynomial& f) {
  if (f.degree() < 1) throw InvalidInput("square-free test needs a polynomial of degree >= 1");
  return gcd(f, f.derivative()).degree() == 0;
}

bool is_perfect_square(const FpPolynomial& h) {
  if (h.is_zero()) throw InvalidInput("perfect-square test of the zero polynomial");
  for (const auto& part : squarefree_decomposition(h)) {
    if (part.multiplicity % 2 == 1) return false;
  }
  return legendre_symbol(static_cast<std::int64_t>(h.leading()), h.modulus()) == 1;
}

}  // namespace charwalk
