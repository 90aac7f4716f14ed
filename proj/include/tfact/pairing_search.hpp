#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tfact/colored_graph.hpp"

namespace tfact {

/// A pairing nu sends white s to black nu(s): the color-0 edges of a
/// (D+1)-colored completion.
using Pairing = Permutation;

struct SearchOptions {
  int k_max = 11;
  bool prune = true;
  int threads = 1;
  /// Cap on the number of stored optima; the report is marked truncated.
  std::optional<std::size_t> max_optima;
};

/// Refusal to enumerate S_k beyond the configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(int k, int k_max);
  int k() const { return k_; }
  int k_max() const { return k_max_; }

 private:
  int k_;
  int k_max_;
};

void check_budget(int k, const SearchOptions& opts);

struct SearchReport {
  int f0_max = 0;
  std::uint64_t multiplicity = 0;
  /// Maximizers in lexicographic order of their image arrays.
  std::vector<Pairing> optima;
  std::uint64_t explored = 0;
  bool truncated = false;
};

/// sum_c #(sigma_c nu^{-1}).
int pairing_f0(const ColoredGraph& G, const Pairing& nu);

SearchReport search_f0(const ColoredGraph& G, const SearchOptions& opts = {});

/// Maximum over pairings whose member graph K is connected.
SearchReport search_f0_connected(const GraphFamily& F, const SearchOptions& opts = {});

/// Number of pairings with each value of pairing_f0 (index = f0, 0..Dk).
/// With `connected_only`, only pairings connecting the family are counted.
std::vector<std::uint64_t> f0_histogram(const GraphFamily& F, bool connected_only, const SearchOptions& opts = {});

struct KConnectivity {
  bool connected = false;
  /// Member blocks (0-based member indices), ordered by smallest member.
  std::vector<std::vector<int>> blocks;
};

KConnectivity k_connectivity(const GraphFamily& F, const Pairing& nu);

/// Connected components of the completed (D+1)-colored graph.
int completed_component_count(const ColoredGraph& G, const Pairing& nu);

struct GammaTreeReport {
  bool is_tree = false;
  int kappa_hat = 0;
  /// kappa(G) - p + 1, the saturation value.
  int tree_value = 0;
};

GammaTreeReport gamma_tree_check(const GraphFamily& F, const Pairing& nu);

struct DegreeReport {
  int D = 0;
  int omega2 = 0;
  /// 2(D-1) * Delta, an exact integer.
  long long delta_scaled = 0;
  bool compatible = false;
  int f0 = 0;
  std::uint64_t mu = 0;
  mpq_class delta() const {
    mpq_class q(static_cast<long>(delta_scaled), static_cast<long>(2 * (D - 1)));
    q.canonicalize();
    return q;
  }
};

/// (D-1) kappa + (D-1)(D-2) k / 2 - F.
int reduced_gurau_degree(const ColoredGraph& G);

/// 2(D-1) Delta for a given maximal F0.
long long delta_scaled_from(const ColoredGraph& G, int f0);

DegreeReport degree_report(const ColoredGraph& G, const SearchOptions& opts = {});

/// floor((D/2) k + F/(D-1) - D (kappa - kappa_hat)).
int gurau_bound(const ColoredGraph& G, int kappa_hat);

struct TreelikeReport {
  bool has_treelike = false;
  bool only_treelike = false;
  int f0_connected = 0;
  /// D + sum_i (F0(G_i) - D).
  int treelike_value = 0;
  std::vector<std::pair<Pairing, bool>> classified;
};

/// Per-pairing test: nu connects F and every member has a dominant pairing
/// whose pairs are each matched by nu or carried by a two-cut of K.
bool is_treelike_pairing(const GraphFamily& F, const Pairing& nu, const std::vector<SearchReport>& member_searches);

TreelikeReport treelike_report(const GraphFamily& F, const SearchOptions& opts = {});

struct MstPairReport {
  int f0_member = 0;
  int f0_union = 0;
  int dk = 0;
  bool nonfactorizing = false;
};

/// F0 of H union its conjugate for maximally single-trace H, without
/// enumerating S_{2k}. Throws std::invalid_argument if H is not MST.
MstPairReport mst_pair_f0(const ColoredGraph& H, const SearchOptions& opts = {});

/// Delta written with Cayley distances around a dominant pairing. Throws
/// std::invalid_argument if nu is not dominant.
mpq_class cayley_delta(const ColoredGraph& G, const Pairing& nu, const SearchOptions& opts = {});

}  // namespace tfact
