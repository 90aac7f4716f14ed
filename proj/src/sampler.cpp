#include "tfact/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace tfact {

double z_score(const MCEstimate& est, cplx target) {
  const double floor = 1e-12 * std::max(1.0, std::abs(target));
  return std::abs(est.mean - target) / std::max(est.stderr_, floor);
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

void for_each_sample(int D, int N, std::uint64_t samples, std::uint64_t seed, const MCOptions& opts,
                     const std::function<void(int, const DenseTensor&)>& per_sample) {
  const int workers = std::max(1, opts.threads);
  auto work = [&](int w) {
    auto rng = worker_rng(seed, static_cast<std::uint64_t>(w));
    for (std::uint64_t i = static_cast<std::uint64_t>(w); i < samples; i += static_cast<std::uint64_t>(workers)) {
      const DenseTensor S = sample_tensor(opts.kind, D, N, rng);
      per_sample(w, S);
    }
  };
  if (workers == 1) {
    work(0);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        work(w);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

MCEstimate mc_moment(const GraphFamily& F, int N, std::uint64_t samples, std::uint64_t seed, const MCOptions& opts) {
  if (samples < 2) throw std::invalid_argument("mc_moment needs at least two samples");
  std::vector<ContractionPlan> plans;
  for (const auto& m : F.members()) plans.emplace_back(m.graph, N, opts.memory_cap);

  // Welford per worker, merged in worker order.
  struct Moments {
    double n = 0;
    double mean = 0;
    double m2 = 0;
    void add(double x) {
      n += 1;
      const double d = x - mean;
      mean += d / n;
      m2 += d * (x - mean);
    }
    void merge(const Moments& o) {
      if (o.n == 0) return;
      const double total = n + o.n;
      const double d = o.mean - mean;
      mean += d * o.n / total;
      m2 += o.m2 + d * d * n * o.n / total;
      n = total;
    }
  };
  struct Acc {
    Moments re, im;
  };
  const int workers = std::max(1, opts.threads);
  std::vector<Acc> acc(static_cast<std::size_t>(workers));
  for_each_sample(F.D(), N, samples, seed, opts, [&](int w, const DenseTensor& S) {
    cplx value = 1;
    for (const auto& plan : plans) value *= plan.evaluate(S);
    auto& a = acc[static_cast<std::size_t>(w)];
    a.re.add(value.real());
    a.im.add(value.imag());
  });

  Acc total;
  for (const auto& a : acc) {
    total.re.merge(a.re);
    total.im.merge(a.im);
  }
  const double n = static_cast<double>(samples);
  MCEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.mean = cplx(total.re.mean, total.im.mean);
  const double var_re = total.re.m2 / (n - 1);
  const double var_im = total.im.m2 / (n - 1);
  est.stderr_real = std::sqrt(var_re / n);
  est.stderr_imag = std::sqrt(var_im / n);
  est.stderr_ = std::sqrt((var_re + var_im) / n);
  return est;
}

}  // namespace tfact
