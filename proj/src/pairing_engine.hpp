#pragma once

// Depth-first enumeration of S_k with incremental face counting.
//
// Whites are assigned in order 0..k-1 and each takes the smallest free
// black first, so leaves come out in lexicographic order. For every color
// the partial 0c-faces form paths on the whites (arc t -> s when nu(s) =
// sigma_c(t)); other_end_ links the two endpoints of each open path, and a
// new arc either closes a face or splices two paths.

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

#include "tfact/colored_graph.hpp"

namespace tfact::detail {

class PairingEngine {
 public:
  explicit PairingEngine(const ColoredGraph& G) : k_(G.k()), D_(G.D()) {
    sigma_inv_.resize(static_cast<std::size_t>(k_ * D_));
    for (int c = 0; c < D_; ++c)
      for (int s = 0; s < k_; ++s) sigma_inv_[idx(c, G.sigma(c)(s))] = s;
    reset();
  }

  /// Visits every pairing with nu(0) = first (all pairings when first < 0).
  /// leaf(nu, f0) is called at every leaf; bound(upper, assigned) returning
  /// true cuts the subtree whose leaves cannot exceed `upper`.
  template <class Leaf, class Bound>
  void run(int first, Leaf&& leaf, Bound&& bound) {
    reset();
    if (first < 0) {
      recurse(0, leaf, bound);
      return;
    }
    place(0, first);
    if (!bound(closed_ + D_ * (k_ - 1), 1)) recurse(1, leaf, bound);
    unplace(0, first);
  }

  int k() const { return k_; }
  int D() const { return D_; }

 private:
  std::size_t idx(int c, int x) const { return static_cast<std::size_t>(c * k_ + x); }

  void reset() {
    other_end_.resize(static_cast<std::size_t>(k_ * D_));
    for (int c = 0; c < D_; ++c)
      for (int s = 0; s < k_; ++s) other_end_[idx(c, s)] = s;
    undo_a_.assign(static_cast<std::size_t>(k_ * D_), -1);
    undo_e_.assign(static_cast<std::size_t>(k_ * D_), -1);
    nu_.assign(static_cast<std::size_t>(k_), -1);
    used_.assign(static_cast<std::size_t>(k_), 0);
    closed_ = 0;
  }

  void place(int s, int b) {
    nu_[static_cast<std::size_t>(s)] = b;
    used_[static_cast<std::size_t>(b)] = 1;
    for (int c = 0; c < D_; ++c) {
      const int t = sigma_inv_[idx(c, b)];
      const int a = other_end_[idx(c, t)];
      const std::size_t slot = idx(c, s);
      if (a == s) {
        ++closed_;
        undo_a_[slot] = -1;
      } else {
        const int e = other_end_[idx(c, s)];
        other_end_[idx(c, a)] = e;
        other_end_[idx(c, e)] = a;
        undo_a_[slot] = a;
        undo_e_[slot] = e;
      }
    }
  }

  void unplace(int s, int b) {
    for (int c = D_ - 1; c >= 0; --c) {
      const std::size_t slot = idx(c, s);
      const int a = undo_a_[slot];
      if (a < 0) {
        --closed_;
      } else {
        other_end_[idx(c, a)] = sigma_inv_[idx(c, b)];
        other_end_[idx(c, undo_e_[slot])] = s;
      }
    }
    used_[static_cast<std::size_t>(b)] = 0;
    nu_[static_cast<std::size_t>(s)] = -1;
  }

  template <class Leaf, class Bound>
  void recurse(int s, Leaf& leaf, Bound& bound) {
    if (s == k_) {
      leaf(nu_, closed_);
      return;
    }
    const int remaining_after = k_ - s - 1;
    for (int b = 0; b < k_; ++b) {
      if (used_[static_cast<std::size_t>(b)]) continue;
      place(s, b);
      if (!bound(closed_ + D_ * remaining_after, s + 1)) recurse(s + 1, leaf, bound);
      unplace(s, b);
    }
  }

  int k_;
  int D_;
  std::vector<int> sigma_inv_;
  std::vector<int> other_end_;
  std::vector<int> undo_a_;
  std::vector<int> undo_e_;
  std::vector<int> nu_;
  std::vector<char> used_;
  int closed_ = 0;
};

/// Runs task(i) for i in [0, n) on up to `threads` workers. Each task
/// writes only its own output slot, so merging by index is deterministic.
inline void run_tasks(int n, int threads, const std::function<void(int)>& task) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  const int workers = std::min(threads, n);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = next++; i < n; i = next++) task(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace tfact::detail
