#include "charwalk/walk_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "charwalk/errors.hpp"
#include "charwalk/finite_field.hpp"
#include "charwalk/parallel.hpp"

namespace charwalk {

namespace {

using cplx = std::complex<double>;

void require_modulus(int m) {
  if (m < 2) throw InvalidInput("walk modulus m must be >= 2, got " + std::to_string(m));
}

void require_steps(int k, const char* what) {
  if (k < 1) throw InvalidInput(std::string(what) + " must be >= 1, got " + std::to_string(k));
}

// Keeps |z| <= 1 for step factors of modulus at most one.
cplx renormalized(cplx z) {
  double r = std::abs(z);
  return r > 1.0 ? z / r : z;
}

// z^n by square-and-multiply with the magnitude guard applied after every product.
cplx bounded_power(cplx z, std::uint64_t n) {
  cplx result = 1.0;
  while (n > 0) {
    if (n & 1) result = renormalized(result * z);
    z = renormalized(z * z);
    n >>= 1;
  }
  return result;
}

// The 0/1 walk's characteristic factor E[e_m(t X)] = (1 + e_m(t))/2.
cplx bernoulli_factor(const RootOfUnityCache& roots, int t) { return (1.0 + roots(t)) / 2.0; }

// sum_{d=1}^{N-1} (N - d) w^d
cplx weighted_geometric_sum(cplx w, int N) {
  if (N < 2) return 0.0;
  if (std::abs(w) < 1.0 - 1e-9) {
    const cplx w_n = bounded_power(w, static_cast<std::uint64_t>(N));
    const cplx one_minus = 1.0 - w;
    return w * (static_cast<double>(N) * one_minus - (1.0 - w_n)) / (one_minus * one_minus);
  }
  cplx sum = 0.0;
  cplx power = 1.0;
  for (int d = 1; d < N; ++d) {
    power = renormalized(power * w);
    sum += static_cast<double>(N - d) * power;
  }
  return sum;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

std::string_view to_string(WalkKind kind) noexcept {
  return kind == WalkKind::Rademacher ? "rademacher" : "bernoulli01";
}

WalkKind parse_walk_kind(std::string_view name) {
  if (name == "rademacher") return WalkKind::Rademacher;
  if (name == "bernoulli01") return WalkKind::Bernoulli01;
  throw InvalidInput("unknown walk kind '" + std::string(name) + "' (rademacher|bernoulli01)");
}

RootOfUnityCache::RootOfUnityCache(int m) {
  require_modulus(m);
  values_.resize(static_cast<std::size_t>(m));
  values_[0] = 1.0;
  for (int t = 1; t < m; ++t) {
    values_[static_cast<std::size_t>(t)] =
        std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(t) / m);
  }
}

cplx RootOfUnityCache::operator()(std::int64_t t) const noexcept {
  const auto m = static_cast<std::int64_t>(values_.size());
  std::int64_t r = t % m;
  if (r < 0) r += m;
  return values_[static_cast<std::size_t>(r)];
}

WalkLaw psi_exact(WalkKind kind, int k, int m) {
  require_steps(k, "step count k");
  require_modulus(m);
  const RootOfUnityCache roots(m);

  std::vector<cplx> step_power(static_cast<std::size_t>(m));
  for (int t = 1; t < m; ++t) {
    if (kind == WalkKind::Rademacher) {
      step_power[static_cast<std::size_t>(t)] = std::pow(roots(t).real(), k);
    } else {
      cplx z = bernoulli_factor(roots, t);
      cplx acc = 1.0;
      for (int j = 0; j < k; ++j) acc = renormalized(acc * z);
      step_power[static_cast<std::size_t>(t)] = acc;
    }
  }

  WalkLaw law{kind, m, k, std::vector<double>(static_cast<std::size_t>(m))};
  for (int a = 0; a < m; ++a) {
    // t = 0 contributes exactly 1; the rest is the deviation from uniform.
    double deviation = 0.0;
    for (int t = 1; t < m; ++t) {
      const cplx phase = roots(-static_cast<std::int64_t>(a) * t);
      deviation += (phase * step_power[static_cast<std::size_t>(t)]).real();
    }
    double prob = (1.0 + deviation) / m;
    if (prob < 0.0 && prob > -1e-12) prob = 0.0;
    law.probabilities[static_cast<std::size_t>(a)] = prob;
  }
  if (kind == WalkKind::Rademacher && m % 2 == 0) {
    for (int a = 0; a < m; ++a) {
      if ((a - k) % 2 != 0) law.probabilities[static_cast<std::size_t>(a)] = 0.0;
    }
  }
  return law;
}

WalkLaw psi_enumerate(WalkKind kind, int k, int m) {
  require_steps(k, "step count k");
  require_modulus(m);
  if (k > 24) throw InvalidInput("enumeration limited to k <= 24");
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(m), 0);
  const std::uint64_t walks = std::uint64_t{1} << k;
  for (std::uint64_t mask = 0; mask < walks; ++mask) {
    // bit j set: step j is -1 (Rademacher) or 1 (Bernoulli01)
    const int ones = std::popcount(mask);
    const int sum = kind == WalkKind::Rademacher ? k - 2 * ones : ones;
    counts[static_cast<std::size_t>(((sum % m) + m) % m)]++;
  }
  WalkLaw law{kind, m, k, std::vector<double>(static_cast<std::size_t>(m))};
  for (int a = 0; a < m; ++a) {
    law.probabilities[static_cast<std::size_t>(a)] =
        static_cast<double>(counts[static_cast<std::size_t>(a)]) / static_cast<double>(walks);
  }
  return law;
}

double psi_decay_bound(int m, int k) {
  if (m < 3 || m % 2 == 0) {
    throw InvalidInput("decay bound needs odd m >= 3, got " + std::to_string(m));
  }
  require_steps(k, "step count k");
  const double md = m;
  const double contraction = 1.0 - std::numbers::pi * std::numbers::pi / (3.0 * md * md);
  return ((md - 1.0) / md) * std::pow(contraction, k);
}

double variance_sum_exact(WalkKind kind, int N, int m) {
  require_steps(N, "walk length N");
  require_modulus(m);
  const RootOfUnityCache roots(m);
  double cross = 0.0;
  for (int t = 1; t < m; ++t) {
    const cplx w = kind == WalkKind::Rademacher ? cplx(roots(t).real(), 0.0)
                                                 : bernoulli_factor(roots, t);
    cross += weighted_geometric_sum(w, N).real();
  }
  const double md = m;
  const double nd = N;
  double total = (md - 1.0) / (md * nd) + 2.0 / (md * nd * nd) * cross;
  if (total < 0.0 && total > -1e-12) total = 0.0;
  return total;
}

VarianceEnumeration walk_enumerate(WalkKind kind, int N, int m) {
  require_steps(N, "walk length N");
  require_modulus(m);
  if (N > 24) throw InvalidInput("enumeration limited to N <= 24");

  const auto mm = static_cast<std::size_t>(m);
  std::vector<std::int64_t> visits(mm, 0);
  // per residue: sum over walks of (m * visits - N)^2, an exact integer
  std::vector<uint128> acc(mm, 0);
  const int steps_rademacher[2] = {1, m - 1};
  const int steps_bernoulli[2] = {0, 1};
  const int* steps = kind == WalkKind::Rademacher ? steps_rademacher : steps_bernoulli;

  auto visit = [&](auto&& self, int depth, int pos) -> void {
    if (depth == N) {
      for (std::size_t a = 0; a < mm; ++a) {
        const std::int64_t dev = static_cast<std::int64_t>(m) * visits[a] - N;
        acc[a] += static_cast<uint128>(dev * dev);
      }
      return;
    }
    for (int s = 0; s < 2; ++s) {
      const int next = (pos + steps[s]) % m;
      ++visits[static_cast<std::size_t>(next)];
      self(self, depth + 1, next);
      --visits[static_cast<std::size_t>(next)];
    }
  };
  visit(visit, 0, 0);

  const long double denom = std::ldexp(static_cast<long double>(m) * m * N * N, N);
  VarianceEnumeration out{std::vector<double>(mm), 0.0};
  uint128 all = 0;
  for (std::size_t a = 0; a < mm; ++a) {
    out.per_residue[a] = static_cast<double>(static_cast<long double>(acc[a]) / denom);
    all += acc[a];
  }
  out.total = static_cast<double>(static_cast<long double>(all) / denom);
  return out;
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) noexcept {
  return seed ^ splitmix64(trial);
}

MonteCarloEstimate walk_monte_carlo(WalkKind kind, int N, int m, std::uint64_t trials,
                                    std::uint64_t seed, unsigned threads) {
  require_steps(N, "walk length N");
  require_modulus(m);
  if (trials < 100) throw InvalidInput("Monte Carlo needs at least 100 trials");

  constexpr std::uint64_t kChunk = 4096;
  const std::size_t chunks = static_cast<std::size_t>((trials + kChunk - 1) / kChunk);
  std::vector<KahanSum> sums(chunks);
  std::vector<KahanSum> squares(chunks);
  const double scale = 1.0 / (static_cast<double>(m) * m * static_cast<double>(N) * N);

  parallel_for_chunks(chunks, threads, [&](std::size_t c) {
    std::vector<std::int64_t> visits(static_cast<std::size_t>(m));
    const std::uint64_t first = c * kChunk;
    const std::uint64_t last = std::min(trials, first + kChunk);
    for (std::uint64_t trial = first; trial < last; ++trial) {
      std::mt19937_64 gen(trial_seed(seed, trial));
      std::fill(visits.begin(), visits.end(), 0);
      int pos = 0;
      std::uint64_t bits = 0;
      int available = 0;
      for (int j = 0; j < N; ++j) {
        if (available == 0) {
          bits = gen();
          available = 64;
        }
        const bool up = bits & 1;
        bits >>= 1;
        --available;
        if (kind == WalkKind::Rademacher) {
          pos = up ? (pos + 1 == m ? 0 : pos + 1) : (pos == 0 ? m - 1 : pos - 1);
        } else if (up) {
          pos = pos + 1 == m ? 0 : pos + 1;
        }
        ++visits[static_cast<std::size_t>(pos)];
      }
      std::int64_t sq = 0;
      for (std::int64_t v : visits) {
        const std::int64_t dev = static_cast<std::int64_t>(m) * v - N;
        sq += dev * dev;
      }
      const double stat = static_cast<double>(sq) * scale;
      sums[c].add(stat);
      squares[c].add(stat * stat);
    }
  });

  KahanSum total;
  KahanSum total_sq;
  for (std::size_t c = 0; c < chunks; ++c) {
    total.add(sums[c].sum);
    total_sq.add(squares[c].sum);
  }
  const double t = static_cast<double>(trials);
  const double mean = total.sum / t;
  const double var = std::max(0.0, (total_sq.sum - t * mean * mean) / (t - 1.0));
  return {mean, std::sqrt(var / t), trials};
}

}  // namespace charwalk
