#include "tfact/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace tfact {

TensorKind parse_tensor_kind(const std::string& name) {
  if (name == "gaussian") return TensorKind::gaussian;
  if (name == "haar") return TensorKind::haar;
  throw std::invalid_argument("tensor kind must be \"gaussian\" or \"haar\", got \"" + name + "\"");
}

std::string to_string(TensorKind kind) { return kind == TensorKind::gaussian ? "gaussian" : "haar"; }

double DenseTensor::norm_squared() const {
  double total = 0;
  for (const auto& z : entries) total += std::norm(z);
  return total;
}

std::size_t tensor_size(int D, int N, std::size_t cap) {
  std::size_t size = 1;
  for (int c = 0; c < D; ++c) {
    if (size > cap / static_cast<std::size_t>(N)) throw std::overflow_error("tensor of shape " + std::to_string(N) + "^" + std::to_string(D) + " is too large");
    size *= static_cast<std::size_t>(N);
  }
  return size;
}

DenseTensor sample_tensor(TensorKind kind, int D, int N, std::mt19937_64& rng) {
  if (N < 2) throw std::invalid_argument("sample_tensor needs N >= 2");
  if (D < 2) throw std::invalid_argument("sample_tensor needs D >= 2");
  DenseTensor T{D, N, {}};
  const std::size_t n = tensor_size(D, N);
  T.entries.resize(n);
  const double sd = std::sqrt(0.5 / static_cast<double>(n));
  std::normal_distribution<double> normal(0.0, sd);
  for (auto& z : T.entries) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = cplx(re, im);
  }
  if (kind == TensorKind::haar) {
    const double scale = 1.0 / std::sqrt(T.norm_squared());
    for (auto& z : T.entries) z *= scale;
  }
  return T;
}

std::mt19937_64 worker_rng(std::uint64_t seed, std::uint64_t worker) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(worker),
                    static_cast<std::uint32_t>(worker >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace tfact
