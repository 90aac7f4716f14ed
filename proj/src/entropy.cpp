#include "tfact/entropy.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <tuple>

namespace tfact {

namespace {

double log_of(const mpz_class& z) {
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

double log_of(const mpq_class& q) {
  if (q <= 0) throw std::domain_error("logarithm of a non-positive rational");
  return log_of(mpz_class(q.get_num())) - log_of(mpz_class(q.get_den()));
}

struct Density {
  LimitRegime regime;
  double mu;
  DensityConvention convention;

  double operator()(double x) const {
    if (x <= 0) return 0;
    if (regime == LimitRegime::exponential) return std::exp(-x / mu) / mu;
    const double scale = convention == DensityConvention::literal ? mu : 2 * mu;
    return std::exp(-x / scale) / std::sqrt(boost::math::constants::pi<double>() * scale * x);
  }
};

double integrate_finite(const std::function<double(double)>& f, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  double error = 0;
  double l1 = 0;
  const double value = integrator.integrate(f, a, b, std::sqrt(std::numeric_limits<double>::epsilon()) * 1e-4, &error, &l1);
  if (!std::isfinite(value) || error > 1e-8 * std::max(1.0, l1)) {
    throw std::runtime_error("quadrature on [" + std::to_string(a) + ", " + std::to_string(b) + "] did not converge");
  }
  return value;
}

double integrate_tail(const std::function<double(double)>& f, double a) {
  boost::math::quadrature::exp_sinh<double> integrator;
  double error = 0;
  double l1 = 0;
  const double value = integrator.integrate(f, a, std::numeric_limits<double>::infinity(), std::sqrt(std::numeric_limits<double>::epsilon()) * 1e-4, &error, &l1);
  if (!std::isfinite(value) || error > 1e-8 * std::max(1.0, l1)) {
    throw std::runtime_error("quadrature on [" + std::to_string(a) + ", inf) did not converge");
  }
  return value;
}

}  // namespace

double renyi_from_trace(cplx trace) {
  const double a = std::abs(trace);
  if (a < kTraceFloor) return std::numeric_limits<double>::infinity();
  return -std::log(a);
}

double renyi_entropy(const ColoredGraph& G, const DenseTensor& S) { return renyi_from_trace(evaluate_trace(G, S)); }

double entropy_cap(const ColoredGraph& H, int N, double lambda) {
  if (lambda <= 0) throw std::invalid_argument("regularization cutoff must be positive");
  return 0.5 * H.D() * H.k() * std::log(static_cast<double>(N)) + std::log(lambda);
}

double regularized_entropy(const ColoredGraph& H, const DenseTensor& S, double lambda, int N) {
  const double cap = entropy_cap(H, N, lambda);
  return std::min(renyi_entropy(H, S), cap);
}

QuenchedReport quenched_entropy(const ColoredGraph& H, int N, const SearchOptions& opts) {
  QuenchedReport rep;
  const ColoredGraph G = disjoint_union({H, conjugate(H)});
  if (G.k() <= opts.k_max) {
    rep.moment = gaussian_moment(G, opts);
    rep.value = -0.5 * log_of(rep.moment->evaluate(N));
    rep.slope = -0.5 * leading_order(*rep.moment).s;
    rep.method = "exact";
    return rep;
  }
  if (!graph_stats(H).is_mst) throw BudgetExceeded(G.k(), opts.k_max);
  const auto pair = mst_pair_f0(H, opts);
  rep.slope = G.D() * H.k() - 0.5 * pair.f0_union;
  rep.method = "asymptotic";
  return rep;
}

std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line needs two or more points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

ConcentrationReport concentration_experiment(const ColoredGraph& G, const std::vector<int>& Ns, double epsilon, std::uint64_t samples,
                                             std::uint64_t seed, const MCOptions& mc, const SearchOptions& search) {
  if (Ns.empty()) throw std::invalid_argument("concentration experiment needs at least one N");
  const auto lead = leading_order(gaussian_moment(G, search));
  ConcentrationReport rep;
  rep.s = lead.s;
  rep.mu = lead.mu;
  rep.epsilon = epsilon;
  const double mu = lead.mu.get_d();
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    const int N = Ns[i];
    const ContractionPlan plan(G, N, mc.memory_cap);
    const double scale = mu * std::pow(static_cast<double>(N), lead.s);
    const int workers = std::max(1, mc.threads);
    std::vector<std::uint64_t> hits(static_cast<std::size_t>(workers), 0);
    // Distinct stream per N: the run seed is offset by the row index.
    for_each_sample(G.D(), N, samples, seed + 0x9E3779B97F4A7C15ULL * i, mc, [&](int w, const DenseTensor& S) {
      const double ratio = std::abs(plan.evaluate(S)) / scale;
      if (std::abs(ratio - 1) < epsilon) ++hits[static_cast<std::size_t>(w)];
    });
    std::uint64_t total = 0;
    for (auto h : hits) total += h;
    CoverageRow row;
    row.N = N;
    row.samples = samples;
    row.coverage = static_cast<double>(total) / static_cast<double>(samples);
    row.stderr_ = std::sqrt(std::max(row.coverage * (1 - row.coverage), 1.0 / static_cast<double>(samples)) / static_cast<double>(samples));
    rep.rows.push_back(row);
  }
  double num = 0, den = 0;
  for (const auto& r : rep.rows) {
    num += (1 - r.coverage) / r.N;
    den += 1.0 / (static_cast<double>(r.N) * r.N);
  }
  rep.miss_fit = num / den;
  rep.monotone = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    const auto& a = rep.rows[i - 1];
    const auto& b = rep.rows[i];
    const double sigma = std::sqrt(a.stderr_ * a.stderr_ + b.stderr_ * b.stderr_);
    if (b.coverage < a.coverage - 2 * sigma) rep.monotone = false;
  }
  return rep;
}

EntropyReport entropy_slope_experiment(const ColoredGraph& G, const std::vector<int>& Ns, std::uint64_t samples, std::uint64_t seed,
                                       const MCOptions& mc, const SearchOptions& search) {
  if (Ns.size() < 3) throw std::invalid_argument("entropy slope fit needs at least three values of N");
  SearchOptions light = search;
  light.max_optima = 1;
  const auto best = search_f0(G, light);
  EntropyReport rep;
  rep.expected_slope = G.D() * G.k() - best.f0_max;
  rep.expected_intercept = -std::log(static_cast<double>(best.multiplicity));

  std::vector<double> x, y;
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    const int N = Ns[i];
    const ContractionPlan plan(G, N, mc.memory_cap);
    const int workers = std::max(1, mc.threads);
    struct Acc {
      CompensatedSum sum, sum2;
      std::uint64_t infinite = 0;
    };
    std::vector<Acc> acc(static_cast<std::size_t>(workers));
    for_each_sample(G.D(), N, samples, seed + 0x9E3779B97F4A7C15ULL * i, mc, [&](int w, const DenseTensor& S) {
      const double r = renyi_from_trace(plan.evaluate(S));
      auto& a = acc[static_cast<std::size_t>(w)];
      if (!std::isfinite(r)) {
        ++a.infinite;
        return;
      }
      a.sum.add(r);
      a.sum2.add(r * r);
    });
    CompensatedSum sum, sum2;
    EntropyRow row;
    row.N = N;
    for (const auto& a : acc) {
      sum.add(a.sum.value());
      sum2.add(a.sum2.value());
      row.infinite += a.infinite;
    }
    const double n = static_cast<double>(samples - row.infinite);
    if (row.infinite > 0) {
      row.mean = std::numeric_limits<double>::infinity();
    } else {
      row.mean = sum.value() / n;
      const double var = std::max(0.0, (sum2.value() - n * row.mean * row.mean) / (n - 1));
      row.stderr_ = std::sqrt(var / n);
    }
    rep.rows.push_back(row);
    x.push_back(std::log(static_cast<double>(N)));
    y.push_back(row.mean);
  }
  std::tie(rep.slope, rep.intercept) = fit_line(x, y);
  return rep;
}

AnnealedCoefficients annealed_coefficients(LimitRegime regime, double mu_c, double lambda, int dk, DensityConvention convention) {
  if (mu_c <= 0) throw std::invalid_argument("annealed coefficients need mu_c > 0");
  if (lambda <= 0) throw std::invalid_argument("annealed coefficients need Lambda > 0");
  const Density rho{regime, mu_c, convention};
  const double cut = 1.0 / (lambda * lambda);
  const std::function<double(double)> f = [&](double x) { return rho(x); };
  const std::function<double(double)> g = [&](double x) { return x <= 0 ? 0.0 : rho(x) * std::log(x); };

  const double mass_below = integrate_finite(f, 0.0, cut);
  const double log_above = integrate_tail(g, cut);
  AnnealedCoefficients out;
  out.alpha = 0.5 * dk * (1 + mass_below);
  out.beta = -0.5 * log_above + std::log(lambda) * mass_below;
  out.alpha_inf = 0.5 * dk;
  out.beta_inf = -0.5 * (integrate_finite(g, 0.0, 1.0) + integrate_tail(g, 1.0));

  const double gamma = boost::math::constants::euler<double>();
  const double ln2 = std::log(2.0);
  if (regime == LimitRegime::exponential) {
    out.beta_inf_closed = -0.5 * (std::log(mu_c) - gamma);
  } else if (convention == DensityConvention::literal) {
    out.beta_inf_closed = -0.5 * (std::log(mu_c) - gamma - 2 * ln2);
  } else {
    out.beta_inf_closed = -0.5 * (std::log(mu_c) - gamma - ln2);
  }
  return out;
}

GapReport quenched_annealed_gap(LimitRegime regime, double mu_c, int dk, DensityConvention convention) {
  const auto coeffs = annealed_coefficients(regime, mu_c, 1.0, dk, convention);
  GapReport rep;
  rep.quenched_slope = 0.5 * dk;
  rep.quenched_constant = -0.5 * std::log(mu_c);
  rep.annealed_slope = coeffs.alpha_inf;
  rep.annealed_constant = coeffs.beta_inf;
  rep.gap = rep.annealed_constant - rep.quenched_constant;
  return rep;
}

MinTraceDiagnostic sampled_min_trace(const ColoredGraph& G, int N, std::uint64_t draws, std::uint64_t seed, const MCOptions& mc) {
  MCOptions haar = mc;
  haar.kind = TensorKind::haar;
  const ContractionPlan plan(G, N, mc.memory_cap);
  const int workers = std::max(1, mc.threads);
  std::vector<double> best(static_cast<std::size_t>(workers), std::numeric_limits<double>::infinity());
  for_each_sample(G.D(), N, draws, seed, haar, [&](int w, const DenseTensor& S) {
    best[static_cast<std::size_t>(w)] = std::min(best[static_cast<std::size_t>(w)], std::abs(plan.evaluate(S)));
  });
  MinTraceDiagnostic out;
  out.draws = draws;
  for (double b : best) out.min_abs_trace = std::min(out.min_abs_trace, b);
  return out;
}

}  // namespace tfact
