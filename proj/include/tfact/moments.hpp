#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "tfact/colored_graph.hpp"
#include "tfact/laurent_poly.hpp"
#include "tfact/pairing_search.hpp"
#include "tfact/set_partitions.hpp"

namespace tfact {

/// <prod_i Tr_{G_i}> for the complex Gaussian tensor of variance 1/N^D:
/// sum over all pairings of the union of N^(F0 - Dk).
LaurentPoly gaussian_moment(const GraphFamily& F, const SearchOptions& opts = {});
LaurentPoly gaussian_moment(const ColoredGraph& G, const SearchOptions& opts = {});

/// Same sum restricted to pairings that connect the family.
LaurentPoly connected_cumulant(const GraphFamily& F, const SearchOptions& opts = {});

/// Moment minus the sum over set partitions of products of block cumulants.
/// Identically zero when the expansion is consistent.
LaurentPoly cumulant_consistency(const GraphFamily& F, const SearchOptions& opts = {}, int p_max = 5);

/// N^{Dk} / prod_{j<k} (N^D + j): ratio of the Haar to the Gaussian
/// expectation of a single invariant with k white vertices.
mpq_class haar_factor(int k, int D, long N);

struct PartitionMargin {
  SetPartition partition;
  /// sum over blocks of the connected maximum.
  int connected_sum = 0;
  /// sum over members of F0(G_i).
  int reference = 0;
  /// connected_sum - reference; factorization needs this < 0 off the
  /// singleton partition.
  int margin = 0;
  /// "search", "mst-pair", "mirror-witness" or "flip-chain-witness" per
  /// block.
  std::vector<std::string> block_methods;
  /// Some block value is only a witnessed lower bound, so a negative margin
  /// is inconclusive while a non-negative one still certifies a violation.
  bool lower_bound = false;
};

struct FactorizationVerdict {
  bool factorizes = false;
  std::vector<PartitionMargin> per_partition;
  /// Index into per_partition of the violating partition with the largest
  /// margin, or of the tightest one when everything factorizes.
  std::optional<std::size_t> worst;
  bool used_mst_shortcut = false;
};

/// Exhaustive comparison over all non-singleton partitions of the members.
/// Blocks over budget get an exact value only for a single-trace graph with
/// its conjugate; otherwise an attained witness value stands in as a lower
/// bound. A violation certified that way is final; BudgetExceeded is thrown
/// when the outcome stays open.
FactorizationVerdict factorization_verdict(const GraphFamily& F, const SearchOptions& opts = {}, int p_max = 5);

struct ComponentBoundReport {
  bool passes = false;
  /// sum over connected components of the union of their maximal F0.
  mpq_class lhs;
  /// (D/2) k + F/(D-1) - D.
  mpq_class rhs;
  /// 2(D-1) sum of component Deltas, compared with D(D-1)^2.
  long long delta_sum_scaled = 0;
};

/// Sufficient bound for factorization over the connected components.
ComponentBoundReport component_bound_check(const GraphFamily& F, const SearchOptions& opts = {});

enum class LimitRegime { exponential, gamma };

struct LimitMoments {
  mpq_class cumulant;
  mpq_class moment;
};

/// Limiting cumulant and moment of order p for the rescaled pair invariant.
LimitMoments pair_limit_moments(const mpq_class& mu_c, int p, LimitRegime regime);

/// Moments m_1..m_n from cumulants k_1..k_n via the partition lattice.
std::vector<mpq_class> moments_from_cumulants(const std::vector<mpq_class>& cumulants, int p_max = 5);

struct ScalingCheck {
  /// Predicted leading exponent of <(Tr_{H u Hbar})^p>: -(D/2) k(H u Hbar) p.
  int exponent = 0;
  bool verified = false;
  /// "enumeration", "single-trace pair shortcut" or
  /// "asymptotic (not desk-verifiable)".
  std::string status;
  std::optional<int> observed;
};

/// Requires H maximally single-trace with {H, Hbar} non-factorizing.
ScalingCheck pair_scaling_check(const ColoredGraph& H, int p, const SearchOptions& opts = {});

}  // namespace tfact
