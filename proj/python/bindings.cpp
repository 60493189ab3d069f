#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

#include "charwalk/char_walk.hpp"
#include "charwalk/errors.hpp"
#include "charwalk/exp_sums.hpp"
#include "charwalk/experiment.hpp"
#include "charwalk/finite_field.hpp"
#include "charwalk/prime_walk.hpp"
#include "charwalk/walk_model.hpp"

namespace py = pybind11;
using namespace charwalk;
using Coeffs = std::vector<std::int64_t>;

namespace {

FpPolynomial poly(std::uint64_t p, const Coeffs& c) { return FpPolynomial(PrimeModulus(p), c); }

py::dict distribution_dict(const ResidueDistribution& d) {
  py::dict out;
  out["m"] = d.m;
  out["counts"] = d.counts;
  out["total"] = d.total;
  return out;
}

}  // namespace

PYBIND11_MODULE(_charwalk, m) {
  m.doc() = "Character-sum walks modulo m and their random-walk model";

  static py::exception<InvalidInput> invalid(m, "InvalidInput", PyExc_ValueError);
  static py::exception<ResourceLimit> resource(m, "ResourceLimit", PyExc_MemoryError);
  py::register_exception_translator([](std::exception_ptr ep) {
    try {
      if (ep) std::rethrow_exception(ep);
    } catch (const InvalidInput& e) {
      PyErr_SetString(invalid.ptr(), e.what());
    } catch (const ResourceLimit& e) {
      PyErr_SetString(resource.ptr(), e.what());
    }
  });

  py::enum_<WalkKind>(m, "WalkKind")
      .value("Rademacher", WalkKind::Rademacher)
      .value("Bernoulli01", WalkKind::Bernoulli01);
  py::enum_<StatisticKind>(m, "StatisticKind")
      .value("SignedSum", StatisticKind::SignedSum)
      .value("ResidueCount", StatisticKind::ResidueCount)
      .value("NonResidueCount", StatisticKind::NonResidueCount);

  // finite fields
  m.def("is_prime", &is_prime_u64, py::arg("n"));
  m.def(
      "legendre_symbol", [](std::int64_t n, std::uint64_t p) { return legendre_symbol(n, PrimeModulus(p)); },
      py::arg("n"), py::arg("p"));
  m.def(
      "poly_eval", [](const Coeffs& c, std::uint64_t p, std::uint64_t x) { return poly_eval(poly(p, c), x % p); },
      py::arg("coefficients"), py::arg("p"), py::arg("x"), "F(x) mod p, coefficients lowest degree first");
  m.def(
      "is_squarefree", [](const Coeffs& c, std::uint64_t p) { return is_squarefree(poly(p, c)); },
      py::arg("coefficients"), py::arg("p"));
  m.def(
      "is_perfect_square", [](const Coeffs& c, std::uint64_t p) { return is_perfect_square(poly(p, c)); },
      py::arg("coefficients"), py::arg("p"));

  // walk model
  m.def(
      "psi_exact", [](WalkKind kind, int k, int mod) { return psi_exact(kind, k, mod).probabilities; },
      py::arg("kind"), py::arg("k"), py::arg("m"));
  m.def("psi_decay_bound", &psi_decay_bound, py::arg("m"), py::arg("k"));
  m.def("variance_sum_exact", &variance_sum_exact, py::arg("kind"), py::arg("N"), py::arg("m"));
  m.def(
      "walk_enumerate",
      [](WalkKind kind, int N, int mod) {
        const auto r = walk_enumerate(kind, N, mod);
        return py::make_tuple(r.per_residue, r.total);
      },
      py::arg("kind"), py::arg("N"), py::arg("m"), "(per-residue expectations, total)");
  m.def(
      "walk_monte_carlo",
      [](WalkKind kind, int N, int mod, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
        MonteCarloEstimate est;
        {
          py::gil_scoped_release release;
          est = walk_monte_carlo(kind, N, mod, trials, seed, threads);
        }
        return py::make_tuple(est.mean, est.standard_error);
      },
      py::arg("kind"), py::arg("N"), py::arg("m"), py::arg("trials"), py::arg("seed") = kDefaultSeed,
      py::arg("threads") = 0, "(mean, standard error)");

  // character-sum walks
  m.def(
      "char_walk_distribution",
      [](std::uint64_t p, const Coeffs& c, int mod, StatisticKind stat, unsigned threads) {
        const FpPolynomial f = poly(p, c);
        ResidueDistribution d;
        {
          py::gil_scoped_release release;
          d = char_walk_distribution(f, mod, stat, threads);
        }
        return distribution_dict(d);
      },
      py::arg("p"), py::arg("coefficients"), py::arg("m"), py::arg("stat") = StatisticKind::SignedSum,
      py::arg("threads") = 0);
  m.def(
      "variance_statistic",
      [](const std::vector<std::uint64_t>& counts) {
        ResidueDistribution d{static_cast<int>(counts.size()), counts, 0};
        for (auto c : counts) d.total += c;
        if (d.total == 0 || d.m < 1) throw InvalidInput("counts must be nonempty with a positive total");
        return variance_statistic(d);
      },
      py::arg("counts"));
  m.def(
      "block_pattern_census",
      [](std::uint64_t p, const Coeffs& c, int L, unsigned threads) {
        const FpPolynomial f = poly(p, c);
        PatternCensus census;
        {
          py::gil_scoped_release release;
          census = block_pattern_census(f, L, threads);
        }
        py::dict counts;
        for (std::uint32_t v = 0; v < census.counts.size(); ++v) counts[py::str(pattern_label(v, L))] = census.counts[v];
        py::dict out;
        out["counts"] = counts;
        out["blocks_total"] = census.blocks_total;
        out["excluded_blocks"] = census.excluded_blocks;
        out["model_prediction"] = census.model_prediction;
        out["max_relative_deviation"] = census.max_relative_deviation();
        out["admissible_length"] = census.admissible_length;
        out["in_admissible_regime"] = census.in_admissible_regime;
        return out;
      },
      py::arg("p"), py::arg("coefficients"), py::arg("L"), py::arg("threads") = 0,
      "counts keyed by '+-' labels, position j is the sign at sL + j");
  m.def(
      "theorem1_check",
      [](const std::vector<std::uint64_t>& primes, const Coeffs& c, int mod, StatisticKind stat, double budget,
         double deviation_budget, unsigned threads) {
        EquidistributionCheck check;
        {
          py::gil_scoped_release release;
          check = theorem1_check(primes, c, mod, stat, budget, deviation_budget, threads);
        }
        py::list rows;
        for (const auto& r : check.rows) {
          py::dict row;
          row["p"] = r.p;
          row["skipped"] = r.skipped;
          row["note"] = r.note;
          row["variance"] = r.variance;
          row["max_deviation"] = r.max_deviation;
          row["variance_ratio"] = r.variance_ratio;
          row["deviation_ratio"] = r.deviation_ratio;
          row["m_in_advisory_range"] = r.m_in_advisory_range;
          rows.append(row);
        }
        py::dict out;
        out["rows"] = rows;
        out["pass"] = check.pass;
        out["variance_trend_decreasing"] = check.variance_trend_decreasing;
        return out;
      },
      py::arg("primes"), py::arg("coefficients"), py::arg("m"), py::arg("stat") = StatisticKind::SignedSum,
      py::arg("budget") = 10.0, py::arg("deviation_budget") = 10.0, py::arg("threads") = 0);

  // prime-indexed walks
  m.def(
      "sieve_primes",
      [](std::uint64_t N) {
        PrimeTable t;
        {
          py::gil_scoped_release release;
          t = sieve_primes(N);
        }
        return t.primes;
      },
      py::arg("N"));
  m.def(
      "psi_N",
      [](std::uint64_t N, int k, int mod, unsigned threads) {
        PrimeWalkResult r;
        {
          py::gil_scoped_release release;
          r = psi_N(N, k, mod, threads);
        }
        py::dict out = distribution_dict(r.distribution);
        out["step_prime"] = r.step_prime;
        out["included_prime_count"] = r.included_prime_count;
        out["excluded_prime_count"] = r.excluded_prime_count;
        out["model"] = r.model.probabilities;
        out["max_discrepancy"] = r.max_discrepancy;
        out["k_in_advisory_range"] = r.k_in_advisory_range;
        return out;
      },
      py::arg("N"), py::arg("k"), py::arg("m"), py::arg("threads") = 0);
  m.def(
      "sign_pattern_fraction",
      [](std::uint64_t N, const std::vector<int>& v, unsigned threads) {
        py::gil_scoped_release release;
        return sign_pattern_fraction(N, v, threads);
      },
      py::arg("N"), py::arg("v"), py::arg("threads") = 0);

  // twisted sums
  m.def(
      "twisted_char_sum",
      [](std::uint64_t p, const Coeffs& p1, const Coeffs& p2, std::uint64_t start, std::int64_t length) {
        const std::uint64_t len = length < 0 ? p - start : static_cast<std::uint64_t>(length);
        return twisted_char_sum(TwistedSumSpec(poly(p, p1), poly(p, p2), start, len));
      },
      py::arg("p"), py::arg("p1"), py::arg("p2") = Coeffs{}, py::arg("start") = 0, py::arg("length") = -1,
      "sum over n in [start, start + length) of chi_p(P1(n)) e_p(P2(n)); length -1 runs to p - 1");
  m.def(
      "weil_bound_check",
      [](std::uint64_t p, const Coeffs& p1, const Coeffs& p2, std::uint64_t start, std::int64_t length) {
        const std::uint64_t len = length < 0 ? p - start : static_cast<std::uint64_t>(length);
        const WeilCheck c = weil_bound_check(TwistedSumSpec(poly(p, p1), poly(p, p2), start, len));
        py::dict out;
        out["value"] = c.value;
        out["magnitude"] = c.magnitude;
        out["bound"] = c.bound;
        out["margin"] = c.margin;
        out["complete"] = c.complete;
        out["pass"] = c.pass();
        return out;
      },
      py::arg("p"), py::arg("p1"), py::arg("p2") = Coeffs{}, py::arg("start") = 0, py::arg("length") = -1);

  // experiments
  m.def(
      "run_experiment_json",
      [](const std::string& command, const std::map<std::string, std::string>& params) {
        const ExperimentConfig config = make_config(command, params);
        ExperimentReport report;
        {
          py::gil_scoped_release release;
          report = run_experiment(config);
        }
        return py::make_tuple(emit_json(report), render(report, OutputFormat::Csv), verdict_exit_code(report));
      },
      py::arg("command"), py::arg("parameters"), "(json text, csv text, exit status)");
  m.attr("__version__") = std::string(kSpecVersion);
}
