#pragma once

#include <cstddef>
#include <vector>

#include "tfact/colored_graph.hpp"
#include "tfact/tensor.hpp"

namespace tfact {

inline constexpr std::size_t kDefaultMemoryCap = std::size_t(1) << 26;

/// Pairwise contraction order for Tr_G(S, conj S): a copy of S per white
/// vertex, of conj S per black vertex, and one summed index per edge.
///
/// The order is greedy: among clusters sharing an index, merge the pair
/// whose result has the fewest open indices, earliest pair first on ties.
/// Construction throws std::length_error if any intermediate would exceed
/// `memory_cap` entries.
class ContractionPlan {
 public:
  ContractionPlan(const ColoredGraph& G, int N, std::size_t memory_cap = kDefaultMemoryCap);

  cplx evaluate(const DenseTensor& S) const;

  int D() const { return D_; }
  int N() const { return N_; }
  std::size_t peak_entries() const { return peak_; }

 private:
  struct Step {
    int left = 0;
    int right = 0;
    std::vector<int> perm_left;
    std::vector<int> perm_right;
    std::size_t rows = 1;
    std::size_t inner = 1;
    std::size_t cols = 1;
  };

  int D_;
  int N_;
  int k_;
  std::vector<std::vector<int>> black_axes_;  // edge id at each leg of each black
  std::vector<std::vector<int>> white_axes_;
  std::vector<Step> steps_;
  std::vector<int> final_slots_;
  std::size_t peak_ = 0;
};

/// One-shot plan and evaluation.
cplx evaluate_trace(const ColoredGraph& G, const DenseTensor& S, std::size_t memory_cap = kDefaultMemoryCap);

}  // namespace tfact
