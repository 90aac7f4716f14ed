#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tfact/colored_graph.hpp"
#include "tfact/pairing_search.hpp"

namespace tfact {

// Color sets use the external 1-based colors {1..D}.
using ColorSet = std::set<int>;

/// D colors, k = 1, every sigma the identity.
ColoredGraph two_vertex(int D);

struct MelonicStep {
  int color;  // 1-based
  int white;  // 1-based
};

/// Starts from the 2-vertex graph; each step inserts a fresh white/black
/// pair on the color edge leaving the given white.
ColoredGraph melonic(int D, const std::vector<MelonicStep>& script);

/// Identity on colors in M, the k-cycle (1 2 ... k) on the others.
/// Requires 1 <= |M| <= D/2.
ColoredGraph cyclic(int D, const ColorSet& M, int k);

/// Pairs P_1..P_k on a cycle: M3 inside each pair, M1 on links leaving
/// odd pairs and M2 on links leaving even pairs. k must be even.
ColoredGraph realignment(int D, const ColorSet& M1, const ColorSet& M2, const ColorSet& M3, int k);

/// Same skeleton with an explicit color set on every link P_i -- P_{i+1};
/// accepted only if each vertex ends with exactly one edge per color.
ColoredGraph joint_realignment(int D, const ColorSet& M3, const std::vector<ColorSet>& links);

/// The D = 6, k = 9 maximally single-trace graph with F0 = 26.
ColoredGraph counterexample_graph();

/// D independent uniform permutations of S_k.
ColoredGraph random_graph(int D, int k, std::uint64_t seed);

struct DeltaConstruction {
  ColoredGraph graph;
  int blocks = 0;
  /// True when Delta was confirmed by exhaustive search.
  bool verified = false;
  /// Delta found by the search when verified.
  std::optional<mpq_class> delta;
};

/// delta copies of a realignment block with |M1| = |M2| = 1 chained by
/// color-1 flips at the first white of consecutive blocks.
DeltaConstruction build_with_delta(int D, int delta, const SearchOptions& opts = {});

/// The realignment block used by build_with_delta.
ColoredGraph delta_block(int D);

/// Builds a graph from a generator recipe ({"kind": ..., params}).
ColoredGraph generate_from_json(const nlohmann::json& recipe);

}  // namespace tfact
