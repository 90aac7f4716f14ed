#pragma once

#include <cstdint>
#include <functional>

#include "tfact/colored_graph.hpp"
#include "tfact/contraction.hpp"
#include "tfact/tensor.hpp"

namespace tfact {

struct MCOptions {
  TensorKind kind = TensorKind::gaussian;
  int threads = 1;
  std::size_t memory_cap = kDefaultMemoryCap;
};

struct MCEstimate {
  cplx mean;
  /// sqrt(E|x - mean|^2 / n).
  double stderr_ = 0;
  double stderr_real = 0;
  double stderr_imag = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Sample mean of prod_i Tr_{G_i}(S, conj S) over fresh tensor draws.
/// Worker w draws samples w, w + W, ... from worker_rng(seed, w).
MCEstimate mc_moment(const GraphFamily& F, int N, std::uint64_t samples, std::uint64_t seed, const MCOptions& opts = {});

/// Runs `per_sample(worker, S)` on `samples` draws split across workers as
/// in mc_moment. Each worker sees its own stream and its own samples.
void for_each_sample(int D, int N, std::uint64_t samples, std::uint64_t seed, const MCOptions& opts,
                     const std::function<void(int, const DenseTensor&)>& per_sample);

/// |mean - target| in standard errors. The error is floored at a few ulps of
/// the target so draws that are all equal up to rounding (the Haar
/// two-vertex trace) do not divide rounding noise by rounding noise.
double z_score(const MCEstimate& est, cplx target);

/// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0;
  double comp_ = 0;
};

}  // namespace tfact
