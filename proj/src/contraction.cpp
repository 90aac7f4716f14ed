#include "tfact/contraction.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <stdexcept>
#include <string>

namespace tfact {

namespace {

using RowMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::size_t power(int N, std::size_t r) {
  std::size_t v = 1;
  for (std::size_t i = 0; i < r; ++i) v *= static_cast<std::size_t>(N);
  return v;
}

bool is_identity(const std::vector<int>& perm) {
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<int>(i)) return false;
  return true;
}

// out axis i is input axis perm[i]; every axis has extent N.
std::vector<cplx> permute(const std::vector<cplx>& in, int N, const std::vector<int>& perm) {
  const std::size_t r = perm.size();
  std::vector<std::size_t> in_stride(r);
  for (std::size_t a = 0; a < r; ++a) in_stride[a] = power(N, r - 1 - a);
  std::vector<std::size_t> stride(r);
  for (std::size_t i = 0; i < r; ++i) stride[i] = in_stride[static_cast<std::size_t>(perm[i])];

  std::vector<cplx> out(in.size());
  std::vector<int> counter(r, 0);
  std::size_t offset = 0;
  for (std::size_t pos = 0; pos < out.size(); ++pos) {
    out[pos] = in[offset];
    for (std::size_t i = r; i-- > 0;) {
      if (++counter[i] < N) {
        offset += stride[i];
        break;
      }
      counter[i] = 0;
      offset -= stride[i] * static_cast<std::size_t>(N - 1);
    }
  }
  return out;
}

}  // namespace

ContractionPlan::ContractionPlan(const ColoredGraph& G, int N, std::size_t memory_cap) : D_(G.D()), N_(N), k_(G.k()) {
  if (N < 1) throw std::invalid_argument("contraction needs N >= 1");
  const int k = k_;
  // Edge id c*k + s joins white s and black sigma_c(s).
  white_axes_.assign(static_cast<std::size_t>(k), {});
  black_axes_.assign(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(D_)));
  for (int s = 0; s < k; ++s) {
    for (int c = 0; c < D_; ++c) {
      white_axes_[static_cast<std::size_t>(s)].push_back(c * k + s);
      black_axes_[static_cast<std::size_t>(G.sigma(c)(s))][static_cast<std::size_t>(c)] = c * k + s;
    }
  }

  std::vector<std::vector<int>> axes;
  for (const auto& a : white_axes_) axes.push_back(a);
  for (const auto& a : black_axes_) axes.push_back(a);
  std::vector<char> live(axes.size(), 1);
  peak_ = power(N, static_cast<std::size_t>(D_));
  if (peak_ > memory_cap) throw std::length_error("input tensor exceeds the contraction memory cap");

  auto shares = [](const std::vector<int>& a, const std::vector<int>& b) {
    for (int x : a)
      if (std::find(b.begin(), b.end(), x) != b.end()) return true;
    return false;
  };
  auto merged_rank = [](const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t shared = 0;
    for (int x : a)
      if (std::find(b.begin(), b.end(), x) != b.end()) ++shared;
    return a.size() + b.size() - 2 * shared;
  };

  for (;;) {
    int bi = -1;
    int bj = -1;
    std::size_t best = 0;
    for (std::size_t i = 0; i < axes.size(); ++i) {
      if (!live[i]) continue;
      for (std::size_t j = i + 1; j < axes.size(); ++j) {
        if (!live[j] || !shares(axes[i], axes[j])) continue;
        const std::size_t r = merged_rank(axes[i], axes[j]);
        if (bi < 0 || r < best) {
          bi = static_cast<int>(i);
          bj = static_cast<int>(j);
          best = r;
        }
      }
    }
    if (bi < 0) break;

    const auto& La = axes[static_cast<std::size_t>(bi)];
    const auto& Lb = axes[static_cast<std::size_t>(bj)];
    std::vector<int> shared, free_left, free_right;
    for (int x : La) (std::find(Lb.begin(), Lb.end(), x) != Lb.end() ? shared : free_left).push_back(x);
    for (int x : Lb)
      if (std::find(shared.begin(), shared.end(), x) == shared.end()) free_right.push_back(x);

    Step step;
    step.left = bi;
    step.right = bj;
    auto position = [](const std::vector<int>& list, int x) {
      return static_cast<int>(std::find(list.begin(), list.end(), x) - list.begin());
    };
    for (int x : free_left) step.perm_left.push_back(position(La, x));
    for (int x : shared) step.perm_left.push_back(position(La, x));
    for (int x : shared) step.perm_right.push_back(position(Lb, x));
    for (int x : free_right) step.perm_right.push_back(position(Lb, x));
    step.rows = power(N, free_left.size());
    step.inner = power(N, shared.size());
    step.cols = power(N, free_right.size());
    const std::size_t result = step.rows * step.cols;
    if (free_left.size() + free_right.size() > 40 || result > memory_cap) {
      throw std::length_error("contraction intermediate of " + std::to_string(free_left.size() + free_right.size()) +
                              " indices at N = " + std::to_string(N) + " exceeds the memory cap of " + std::to_string(memory_cap) + " entries");
    }
    peak_ = std::max(peak_, result);
    steps_.push_back(std::move(step));

    std::vector<int> merged = free_left;
    merged.insert(merged.end(), free_right.begin(), free_right.end());
    axes[static_cast<std::size_t>(bi)] = std::move(merged);
    axes[static_cast<std::size_t>(bj)].clear();
    live[static_cast<std::size_t>(bj)] = 0;
  }
  for (std::size_t i = 0; i < axes.size(); ++i)
    if (live[i]) final_slots_.push_back(static_cast<int>(i));
}

cplx ContractionPlan::evaluate(const DenseTensor& S) const {
  if (S.D != D_ || S.N != N_) {
    throw std::invalid_argument("tensor shape " + std::to_string(S.N) + "^" + std::to_string(S.D) + " does not match the plan (" +
                                std::to_string(N_) + "^" + std::to_string(D_) + ")");
  }
  std::vector<std::vector<cplx>> slot(static_cast<std::size_t>(2 * k_));
  std::vector<cplx> conj_entries(S.entries.size());
  for (std::size_t i = 0; i < S.entries.size(); ++i) conj_entries[i] = std::conj(S.entries[i]);
  for (int s = 0; s < k_; ++s) slot[static_cast<std::size_t>(s)] = S.entries;
  for (int b = 0; b < k_; ++b) slot[static_cast<std::size_t>(k_ + b)] = conj_entries;

  for (const auto& step : steps_) {
    auto& left = slot[static_cast<std::size_t>(step.left)];
    auto& right = slot[static_cast<std::size_t>(step.right)];
    const std::vector<cplx> a = is_identity(step.perm_left) ? std::move(left) : permute(left, N_, step.perm_left);
    const std::vector<cplx> b = is_identity(step.perm_right) ? std::move(right) : permute(right, N_, step.perm_right);
    const auto rows = static_cast<Eigen::Index>(step.rows);
    const auto inner = static_cast<Eigen::Index>(step.inner);
    const auto cols = static_cast<Eigen::Index>(step.cols);
    std::vector<cplx> out(step.rows * step.cols);
    Eigen::Map<const RowMatrix> A(a.data(), rows, inner);
    Eigen::Map<const RowMatrix> B(b.data(), inner, cols);
    Eigen::Map<RowMatrix> C(out.data(), rows, cols);
    C.noalias() = A * B;
    left = std::move(out);
    right.clear();
    right.shrink_to_fit();
  }
  cplx value = 1;
  for (int i : final_slots_) value *= slot[static_cast<std::size_t>(i)].at(0);
  return value;
}

cplx evaluate_trace(const ColoredGraph& G, const DenseTensor& S, std::size_t memory_cap) {
  if (S.D != G.D()) throw std::invalid_argument("tensor has D = " + std::to_string(S.D) + " but the graph has D = " + std::to_string(G.D()));
  return ContractionPlan(G, S.N, memory_cap).evaluate(S);
}

}  // namespace tfact
