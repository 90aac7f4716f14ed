#pragma once

// Deterministic stream of small test families for the property harness.

#include <random>
#include <string>
#include <vector>

#include "tfact/colored_graph.hpp"
#include "tfact/families.hpp"
#include "tfact/pairing_search.hpp"

namespace gen {

struct Case {
  std::string label;
  tfact::GraphFamily family;
};

inline tfact::ColoredGraph mst3() {
  using tfact::Permutation;
  return tfact::ColoredGraph(3, {Permutation::identity(3), Permutation::parse_cycles("(123)", 3), Permutation::parse_cycles("(132)", 3)});
}

// Random graph of the requested kind, found by rejection from random_graph.
inline tfact::ColoredGraph draw(int D, int k, std::uint64_t& seed, bool (*accept)(const tfact::ColoredGraph&)) {
  for (;;) {
    auto G = tfact::random_graph(D, k, seed++);
    if (!accept || accept(G)) return G;
  }
}

inline bool is_compatible(const tfact::ColoredGraph& G) { return tfact::degree_report(G).compatible; }
inline bool is_planar(const tfact::ColoredGraph& G) { return tfact::graph_stats(G).is_planar3; }
inline bool is_connected(const tfact::ColoredGraph& G) { return tfact::component_count(G) == 1; }

// At least `count` families with total k <= 8, cycling through catalog,
// compatible, planar and unconstrained random members.
inline std::vector<Case> families(int count, std::uint64_t seed) {
  using namespace tfact;
  std::vector<Case> out;
  std::mt19937_64 rng(seed);
  std::uint64_t draw_seed = seed * 1000003;

  const std::vector<std::pair<std::string, ColoredGraph>> catalog{
      {"two_vertex", two_vertex(3)},
      {"melonic", melonic(3, {{1, 1}})},
      {"mst3", mst3()},
      {"cyclic(3,{1},2)", cyclic(3, {1}, 2)},
      {"cyclic(4,{1,2},2)", cyclic(4, {1, 2}, 2)},
      {"realignment(4)", realignment(4, {1}, {2}, {3, 4}, 2)},
      {"melonic2", melonic(3, {{1, 1}, {2, 2}})},
  };

  for (int i = 0; static_cast<int>(out.size()) < count; ++i) {
    const int kind = i % 5;
    const int p = 1 + static_cast<int>(rng() % 3);
    std::vector<ColoredGraph> members;
    std::string label;
    int budget = 8;
    for (int m = 0; m < p && budget > 0; ++m) {
      const int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::min(budget, 8 / p + 1)));
      ColoredGraph G;
      switch (kind) {
        case 0: {
          // Catalog members of the same D.
          std::vector<const std::pair<std::string, ColoredGraph>*> fits;
          const int D = members.empty() ? (rng() % 4 == 0 ? 4 : 3) : members.front().D();
          for (const auto& c : catalog)
            if (c.second.D() == D && c.second.k() <= budget) fits.push_back(&c);
          if (fits.empty()) break;
          const auto* pick = fits[rng() % fits.size()];
          G = pick->second;
          label += pick->first + " ";
          break;
        }
        case 1:
          G = draw(3, k, draw_seed, is_compatible);
          label += "compatible ";
          break;
        case 2:
          G = draw(3, k, draw_seed, is_planar);
          label += "planar ";
          break;
        case 3:
          G = draw(4, std::min(k, 4), draw_seed, is_connected);
          label += "random4 ";
          break;
        default:
          G = draw(3, k, draw_seed, nullptr);
          label += "random3 ";
          break;
      }
      if (G.D() == 0 || G.k() > budget) break;
      budget -= G.k();
      members.push_back(G);
    }
    if (members.empty()) continue;
    out.push_back({label, GraphFamily::of(members)});
  }
  return out;
}

}  // namespace gen
