#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace tfact {

using cplx = std::complex<double>;

enum class TensorKind { gaussian, haar };

TensorKind parse_tensor_kind(const std::string& name);
std::string to_string(TensorKind kind);

/// N^D complex entries, index (i_1, ..., i_D) stored row-major with i_1
/// most significant.
struct DenseTensor {
  int D = 0;
  int N = 0;
  std::vector<cplx> entries;

  std::size_t size() const { return entries.size(); }
  double norm_squared() const;
};

/// N^D as a size, throwing std::overflow_error past `cap`.
std::size_t tensor_size(int D, int N, std::size_t cap = std::size_t(1) << 40);

/// Gaussian: i.i.d. centered complex normals with E|T_i|^2 = 1/N^D, real
/// and imaginary parts each of variance 1/(2 N^D). Haar: a Gaussian draw
/// scaled to unit norm. Throws std::invalid_argument when N < 2.
DenseTensor sample_tensor(TensorKind kind, int D, int N, std::mt19937_64& rng);

/// Per-worker stream for a run seed.
std::mt19937_64 worker_rng(std::uint64_t seed, std::uint64_t worker);

}  // namespace tfact
