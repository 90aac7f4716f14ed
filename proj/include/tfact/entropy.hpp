#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tfact/colored_graph.hpp"
#include "tfact/moments.hpp"
#include "tfact/pairing_search.hpp"
#include "tfact/sampler.hpp"

namespace tfact {

/// |Tr| below this floor counts as zero.
inline constexpr double kTraceFloor = 1e-300;

/// -ln |Tr_G(S, conj S)|, +infinity when |Tr_G| < kTraceFloor.
double renyi_entropy(const ColoredGraph& G, const DenseTensor& S);
double renyi_from_trace(cplx trace);

/// (D k(H) / 2) ln N + ln Lambda.
double entropy_cap(const ColoredGraph& H, int N, double lambda);

/// min(R_H, cap). Throws std::invalid_argument when lambda <= 0.
double regularized_entropy(const ColoredGraph& H, const DenseTensor& S, double lambda, int N);

struct QuenchedReport {
  /// -1/2 ln <Tr_{H u Hbar}> when the moment is exactly computable.
  std::optional<double> value;
  /// Leading slope against ln N: D k(H) - F0(H u Hbar) / 2, which is
  /// D k(H) / 2 for a non-factorizing pair.
  double slope = 0;
  /// "exact" or "asymptotic".
  std::string method;
  std::optional<LaurentPoly> moment;
};

/// Throws BudgetExceeded when H u Hbar is too large and H is not
/// maximally single-trace.
QuenchedReport quenched_entropy(const ColoredGraph& H, int N, const SearchOptions& opts = {});

struct CoverageRow {
  int N = 0;
  double coverage = 0;
  /// Binomial standard error of the coverage.
  double stderr_ = 0;
  std::uint64_t samples = 0;
};

struct ConcentrationReport {
  int s = 0;
  mpz_class mu;
  double epsilon = 0;
  std::vector<CoverageRow> rows;
  /// Least-squares a in (1 - coverage) ~ a / N.
  double miss_fit = 0;
  /// Coverage never drops by more than two binomial sigmas as N grows.
  bool monotone = false;
};

ConcentrationReport concentration_experiment(const ColoredGraph& G, const std::vector<int>& Ns, double epsilon, std::uint64_t samples,
                                             std::uint64_t seed, const MCOptions& mc = {}, const SearchOptions& search = {});

struct EntropyRow {
  int N = 0;
  double mean = 0;
  double stderr_ = 0;
  /// Samples whose trace fell below the floor.
  std::uint64_t infinite = 0;
};

struct EntropyReport {
  std::vector<EntropyRow> rows;
  double slope = 0;
  double intercept = 0;
  /// D k - F0 and -ln mu from the exact expansion.
  double expected_slope = 0;
  double expected_intercept = 0;
};

/// Mean R_G at each N and a least-squares line against ln N. Needs at
/// least three values of N.
EntropyReport entropy_slope_experiment(const ColoredGraph& G, const std::vector<int>& Ns, std::uint64_t samples, std::uint64_t seed,
                                       const MCOptions& mc = {}, const SearchOptions& search = {});

enum class DensityConvention {
  /// The literal density: exponential of mean mu, or
  /// x -> exp(-x/mu) / sqrt(pi mu x) for the Gamma regime.
  literal,
  /// Gamma of shape 1/2 and scale 2 mu, matching the limiting moments
  /// (2p-1)!! mu^p. Same as literal in the exponential regime.
  moment_matched,
};

struct AnnealedCoefficients {
  double alpha = 0;
  double beta = 0;
  double alpha_inf = 0;
  double beta_inf = 0;
  /// Closed form of beta_inf for the chosen density.
  double beta_inf_closed = 0;
};

/// Coefficients of <R_H regularized> ~ alpha ln N + beta by quadrature
/// over the limiting density of N^{Dk} Tr_{H u Hbar}. dk is D k(H).
AnnealedCoefficients annealed_coefficients(LimitRegime regime, double mu_c, double lambda, int dk,
                                           DensityConvention convention = DensityConvention::literal);

struct GapReport {
  double quenched_slope = 0;
  double quenched_constant = 0;
  double annealed_slope = 0;
  double annealed_constant = 0;
  /// annealed_constant - quenched_constant.
  double gap = 0;
};

/// Juxtaposes the quenched line (Dk/2) ln N - 1/2 ln mu_c with the
/// annealed one (Dk/2) ln N + beta_inf.
GapReport quenched_annealed_gap(LimitRegime regime, double mu_c, int dk, DensityConvention convention = DensityConvention::literal);

struct MinTraceDiagnostic {
  double min_abs_trace = std::numeric_limits<double>::infinity();
  std::uint64_t draws = 0;
};

/// Smallest |Tr_G| over random Haar draws. A sampled upper estimate of the
/// sphere minimum, not a bound.
MinTraceDiagnostic sampled_min_trace(const ColoredGraph& G, int N, std::uint64_t draws, std::uint64_t seed, const MCOptions& mc = {});

/// Ordinary least squares y = slope x + intercept.
std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace tfact
