#pragma once

// The probabilistic model: the +-1 walk and the 0/1 walk reduced mod m.
//
// psi_exact gives the k-step law through the finite Fourier transform on
// Z/mZ. variance_sum_exact gives
//   sum_a E[(Phi(N; m, a) - 1/m)^2]
//     = (m-1)/(mN) + 2/(mN^2) * sum_{t=1}^{m-1} sum_{d=1}^{N-1} (N-d) Re w_t^d
// with w_t = cos(2 pi t/m) for the +-1 walk and (1 + e_m(t))/2 for the 0/1
// walk. walk_enumerate and psi_enumerate are brute-force oracles over all
// 2^N step sequences.

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace charwalk {

enum class WalkKind {
  Rademacher,   // steps -1, +1
  Bernoulli01,  // steps 0, 1
};

std::string_view to_string(WalkKind kind) noexcept;
/// Accepts "rademacher" and "bernoulli01"; throws InvalidInput otherwise.
WalkKind parse_walk_kind(std::string_view name);

struct WalkLaw {
  WalkKind kind;
  int m;
  int k;
  std::vector<double> probabilities;  // indexed by residue a in [0, m)
};

/// e_m(t) = exp(2 pi i t / m) for t in [0, m).
class RootOfUnityCache {
 public:
  explicit RootOfUnityCache(int m);

  int modulus() const noexcept { return static_cast<int>(values_.size()); }
  /// e_m(t) for any integer t (reduced mod m).
  std::complex<double> operator()(std::int64_t t) const noexcept;
  std::span<const std::complex<double>> values() const noexcept { return values_; }

 private:
  std::vector<std::complex<double>> values_;
};

/// Law of S_k mod m. Throws InvalidInput if k < 1 or m < 2.
WalkLaw psi_exact(WalkKind kind, int k, int m);

/// Same law by enumerating all 2^k step sequences (k <= 24).
WalkLaw psi_enumerate(WalkKind kind, int k, int m);

/// ((m-1)/m) (1 - pi^2/(3m^2))^k, an upper bound on |Psi(k; m, a) - 1/m|
/// for the +-1 walk. Requires odd m >= 3 and k >= 1.
double psi_decay_bound(int m, int k);

/// Closed form of sum_a E[(Phi(N; m, a) - 1/m)^2]. Throws InvalidInput if
/// m < 2 or N < 1.
double variance_sum_exact(WalkKind kind, int N, int m);

struct VarianceEnumeration {
  std::vector<double> per_residue;  // E[(Phi(N; m, a) - 1/m)^2]
  double total;
};

/// Exhaustive expectation over all 2^N walks; 1 <= N <= 24.
VarianceEnumeration walk_enumerate(WalkKind kind, int N, int m);

struct MonteCarloEstimate {
  double mean;
  double standard_error;
  std::uint64_t trials;
};

/// Seed of the generator used for trial `trial`: seed XOR splitmix64(trial).
/// Each trial draws from std::mt19937_64 seeded with this value, so the
/// estimate does not depend on thread count or scheduling.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) noexcept;

/// Sample mean (and its standard error) of sum_a (Phi(N; m, a) - 1/m)^2
/// over independent simulated walks. Requires trials >= 100.
MonteCarloEstimate walk_monte_carlo(WalkKind kind, int N, int m, std::uint64_t trials,
                                    std::uint64_t seed, unsigned threads = 0);

}  // namespace charwalk
