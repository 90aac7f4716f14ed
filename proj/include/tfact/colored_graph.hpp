#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tfact/permutation.hpp"

namespace tfact {

/// Bipartite D-edge-colored graph with k white and k black vertices.
///
/// White vertex s is joined to black vertex sigma(c)(s) by its unique edge
/// of color c. Colors are 0-based here (color c stands for color c+1 in
/// the external convention where 0 is reserved for pairings).
class ColoredGraph {
 public:
  ColoredGraph() = default;
  /// Throws std::invalid_argument on D < 2, k < 1 or mismatched lengths.
  ColoredGraph(int D, std::vector<Permutation> sigmas);

  int D() const { return static_cast<int>(sigma_.size()); }
  int k() const { return sigma_.empty() ? 0 : sigma_.front().size(); }
  const Permutation& sigma(int c) const { return sigma_[static_cast<std::size_t>(c)]; }
  const std::vector<Permutation>& sigmas() const { return sigma_; }

  friend bool operator==(const ColoredGraph&, const ColoredGraph&) = default;

 private:
  std::vector<Permutation> sigma_;
};

struct GraphStats {
  int k = 0;
  int kappa = 0;
  /// faces[i][j] = #(sigma_i sigma_j^{-1}) for i != j, 0 on the diagonal.
  std::vector<std::vector<int>> faces;
  int F_total = 0;
  bool is_mst = false;
  /// Meaningful only for D = 3.
  bool is_planar3 = false;
};

GraphStats graph_stats(const ColoredGraph& G);

/// Number of connected components of the bipartite graph.
int component_count(const ColoredGraph& G);

/// Component id of each white vertex (black vertex sigma_c(s) shares it).
/// Ids are assigned in order of first appearance.
std::vector<int> component_labels(const ColoredGraph& G);

/// The sub-graph induced on a union of components, relabeled in
/// increasing order of the original white labels.
ColoredGraph induced_subgraph(const ColoredGraph& G, const std::vector<int>& whites);

/// Connected components as separate graphs, in order of component id.
std::vector<ColoredGraph> split_components(const ColoredGraph& G);

struct FamilyMember {
  std::string name;
  ColoredGraph graph;
};

/// Ordered family G_1..G_p together with its disjoint union.
class GraphFamily {
 public:
  GraphFamily() = default;
  /// Throws on an empty list or mixed D.
  explicit GraphFamily(std::vector<FamilyMember> members);
  static GraphFamily of(const std::vector<ColoredGraph>& graphs);

  int size() const { return static_cast<int>(members_.size()); }
  int D() const { return union_.D(); }
  int total_k() const { return union_.k(); }
  const std::vector<FamilyMember>& members() const { return members_; }
  const ColoredGraph& member(int i) const { return members_[static_cast<std::size_t>(i)].graph; }
  const std::vector<int>& offsets() const { return offsets_; }
  const ColoredGraph& union_graph() const { return union_; }
  /// Member index owning each white (equivalently black) label of the union.
  const std::vector<int>& owner() const { return owner_; }

  /// Members selected by index, in the given order.
  GraphFamily subfamily(const std::vector<int>& indices) const;

 private:
  std::vector<FamilyMember> members_;
  std::vector<int> offsets_;
  std::vector<int> owner_;
  ColoredGraph union_;
};

/// Block-diagonal union; throws on mixed D or an empty list.
ColoredGraph disjoint_union(const std::vector<ColoredGraph>& parts);

/// Swap vertex colors: every sigma_c is replaced by its inverse.
ColoredGraph conjugate(const ColoredGraph& G);

/// Exchange the color-c edges at whites s1 and s2 (0-based). Throws if
/// s1 == s2 or either label is out of range.
ColoredGraph flip_edges(const ColoredGraph& G, int c, int s1, int s2);

/// Partial injective white -> black map; -1 marks an unmatched white.
class PartialPairing {
 public:
  PartialPairing() = default;
  /// Throws on non-injective input or out-of-range images.
  PartialPairing(int k, std::vector<int> image);
  static PartialPairing empty(int k) { return PartialPairing(k, std::vector<int>(static_cast<std::size_t>(k), -1)); }
  static PartialPairing full(const Permutation& nu) {
    return PartialPairing(nu.size(), std::vector<int>(nu.images().begin(), nu.images().end()));
  }

  int k() const { return static_cast<int>(image_.size()); }
  int matched() const;
  int operator()(int s) const { return image_[static_cast<std::size_t>(s)]; }
  const std::vector<int>& images() const { return image_; }

 private:
  std::vector<int> image_;
};

struct BoundaryReport {
  int internal_f0 = 0;
  int boundary_k = 0;
  /// Absent when every vertex is matched.
  std::optional<ColoredGraph> boundary;
  /// Original label of each boundary white / black, in increasing order.
  std::vector<int> white_labels;
  std::vector<int> black_labels;
};

/// Boundary graph of G completed by a partial set of color-0 edges.
BoundaryReport boundary_graph(const ColoredGraph& G, const PartialPairing& mu);

}  // namespace tfact
