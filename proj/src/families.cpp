#include "tfact/families.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "tfact/graph_io.hpp"

namespace tfact {

namespace {

void check_colors(int D, const ColorSet& M, const char* name) {
  for (int c : M) {
    if (c < 1 || c > D) throw std::invalid_argument(std::string(name) + " contains color " + std::to_string(c) + " outside {1.." + std::to_string(D) + "}");
  }
}

}  // namespace

ColoredGraph two_vertex(int D) {
  return ColoredGraph(D, std::vector<Permutation>(static_cast<std::size_t>(std::max(D, 0)), Permutation::identity(1)));
}

ColoredGraph melonic(int D, const std::vector<MelonicStep>& script) {
  std::vector<std::vector<int>> sig(static_cast<std::size_t>(D), std::vector<int>{0});
  for (const auto& step : script) {
    const int k = static_cast<int>(sig[0].size());
    if (step.color < 1 || step.color > D) throw std::invalid_argument("melonic step color " + std::to_string(step.color) + " outside {1.." + std::to_string(D) + "}");
    if (step.white < 1 || step.white > k) throw std::invalid_argument("melonic step white " + std::to_string(step.white) + " outside {1.." + std::to_string(k) + "}");
    const int c = step.color - 1;
    const int s = step.white - 1;
    const int fresh = k;
    for (int cc = 0; cc < D; ++cc) {
      auto& row = sig[static_cast<std::size_t>(cc)];
      if (cc == c) {
        row.push_back(row[static_cast<std::size_t>(s)]);
        row[static_cast<std::size_t>(s)] = fresh;
      } else {
        row.push_back(fresh);
      }
    }
  }
  std::vector<Permutation> perms;
  for (auto& row : sig) perms.emplace_back(std::move(row));
  return ColoredGraph(D, std::move(perms));
}

ColoredGraph cyclic(int D, const ColorSet& M, int k) {
  check_colors(D, M, "M");
  if (M.empty()) throw std::invalid_argument("cyclic graph needs a nonempty color set M");
  if (static_cast<int>(M.size()) > D / 2) {
    throw std::invalid_argument("cyclic graph needs |M| <= D/2, got |M| = " + std::to_string(M.size()) + " for D = " + std::to_string(D));
  }
  if (k < 1) throw std::invalid_argument("cyclic graph needs k >= 1");
  std::vector<Permutation> sig;
  for (int c = 1; c <= D; ++c) sig.push_back(M.count(c) ? Permutation::identity(k) : Permutation::long_cycle(k));
  return ColoredGraph(D, std::move(sig));
}

ColoredGraph joint_realignment(int D, const ColorSet& M3, const std::vector<ColorSet>& links) {
  check_colors(D, M3, "M3");
  const int k = static_cast<int>(links.size());
  if (k < 2) throw std::invalid_argument("joint realignment needs at least two pairs");
  std::vector<std::vector<int>> sig(static_cast<std::size_t>(D), std::vector<int>(static_cast<std::size_t>(k), -1));
  auto assign = [&](int c, int w, int b) {
    int& slot = sig[static_cast<std::size_t>(c - 1)][static_cast<std::size_t>(w)];
    if (slot >= 0) {
      throw std::invalid_argument("joint realignment: white " + std::to_string(w + 1) + " receives two edges of color " + std::to_string(c));
    }
    slot = b;
  };
  for (int c : M3)
    for (int i = 0; i < k; ++i) assign(c, i, i);
  for (int i = 0; i < k; ++i) {
    const auto& L = links[static_cast<std::size_t>(i)];
    check_colors(D, L, ("link " + std::to_string(i + 1)).c_str());
    const int j = (i + 1) % k;
    for (int c : L) {
      assign(c, i, j);
      assign(c, j, i);
    }
  }
  std::vector<Permutation> perms;
  for (int c = 0; c < D; ++c) {
    for (int w = 0; w < k; ++w) {
      if (sig[static_cast<std::size_t>(c)][static_cast<std::size_t>(w)] < 0) {
        throw std::invalid_argument("joint realignment: white " + std::to_string(w + 1) + " has no edge of color " + std::to_string(c + 1));
      }
    }
    try {
      perms.emplace_back(sig[static_cast<std::size_t>(c)]);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("joint realignment: color " + std::to_string(c + 1) + " does not give every black exactly one edge");
    }
  }
  return ColoredGraph(D, std::move(perms));
}

ColoredGraph realignment(int D, const ColorSet& M1, const ColorSet& M2, const ColorSet& M3, int k) {
  check_colors(D, M1, "M1");
  check_colors(D, M2, "M2");
  check_colors(D, M3, "M3");
  if (M1.empty() || M2.empty() || M3.empty()) throw std::invalid_argument("realignment needs nonempty M1, M2, M3");
  ColorSet all;
  for (const auto* M : {&M1, &M2, &M3}) {
    for (int c : *M) {
      if (!all.insert(c).second) throw std::invalid_argument("realignment: color " + std::to_string(c) + " appears in two of M1, M2, M3");
    }
  }
  if (static_cast<int>(all.size()) != D) throw std::invalid_argument("realignment: M1, M2, M3 must partition {1.." + std::to_string(D) + "}");
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("realignment needs an even k >= 2, got " + std::to_string(k));
  std::vector<ColorSet> links;
  // Link i joins P_i and P_{i+1}; 1-based odd i carry M1.
  for (int i = 0; i < k; ++i) links.push_back(i % 2 == 0 ? M1 : M2);
  if (k == 2) {
    // Both links join the same two pairs; each color appears once.
    std::vector<Permutation> sig;
    for (int c = 1; c <= D; ++c) sig.push_back(M3.count(c) ? Permutation::identity(2) : Permutation::long_cycle(2));
    return ColoredGraph(D, std::move(sig));
  }
  return joint_realignment(D, M3, links);
}

ColoredGraph counterexample_graph() {
  const int k = 9;
  const char* cycles[] = {"", "(123456789)", "(154927683)", "(174395286)", "(182975364)", "(159762483)"};
  std::vector<Permutation> sig;
  for (const char* c : cycles) sig.push_back(Permutation::parse_cycles(c, k));
  return ColoredGraph(6, std::move(sig));
}

ColoredGraph random_graph(int D, int k, std::uint64_t seed) {
  if (D < 2 || k < 1) throw std::invalid_argument("random_graph needs D >= 2 and k >= 1");
  std::mt19937_64 rng(seed);
  std::vector<Permutation> sig;
  for (int c = 0; c < D; ++c) {
    std::vector<int> images(static_cast<std::size_t>(k));
    std::iota(images.begin(), images.end(), 0);
    std::shuffle(images.begin(), images.end(), rng);
    sig.emplace_back(std::move(images));
  }
  return ColoredGraph(D, std::move(sig));
}

ColoredGraph delta_block(int D) {
  if (D < 3) throw std::invalid_argument("prescribed-Delta construction needs D >= 3");
  ColorSet M3;
  for (int c = 3; c <= D; ++c) M3.insert(c);
  // With D = 3 the k = 2 block is compatible, so the first block with
  // Delta = 1 has four pairs.
  return realignment(D, {1}, {2}, M3, D == 3 ? 4 : 2);
}

DeltaConstruction build_with_delta(int D, int delta, const SearchOptions& opts) {
  if (D < 3) throw std::invalid_argument("build_with_delta needs D >= 3");
  if (delta < 1) throw std::invalid_argument("build_with_delta needs delta >= 1");
  const ColoredGraph block = delta_block(D);
  const int kb = block.k();
  ColoredGraph G = disjoint_union(std::vector<ColoredGraph>(static_cast<std::size_t>(delta), block));
  for (int j = 0; j + 1 < delta; ++j) G = flip_edges(G, 0, j * kb, (j + 1) * kb);

  DeltaConstruction out{G, delta, false, std::nullopt};
  if (G.k() <= opts.k_max) {
    const auto rep = degree_report(G, opts);
    out.delta = rep.delta();
    if (*out.delta != delta) {
      throw std::runtime_error("build_with_delta: exhaustive search gives Delta = " + out.delta->get_str() + ", expected " +
                               std::to_string(delta));
    }
    out.verified = true;
  }
  return out;
}

ColoredGraph generate_from_json(const nlohmann::json& recipe) {
  auto get_int = [&](const char* field) {
    if (!recipe.contains(field) || !recipe.at(field).is_number_integer()) throw ParseError(std::string("missing integer field \"") + field + "\"");
    return recipe.at(field).get<int>();
  };
  auto get_set = [&](const nlohmann::json& v, const std::string& field) {
    if (!v.is_array()) throw ParseError("field \"" + field + "\" must be a list of colors");
    ColorSet M;
    for (const auto& c : v) {
      if (!c.is_number_integer()) throw ParseError("field \"" + field + "\" must be a list of colors");
      M.insert(c.get<int>());
    }
    return M;
  };
  auto field_set = [&](const char* field) {
    if (!recipe.contains(field)) throw ParseError(std::string("missing field \"") + field + "\"");
    return get_set(recipe.at(field), field);
  };
  if (!recipe.contains("kind") || !recipe.at("kind").is_string()) throw ParseError("missing field \"kind\"");
  const std::string kind = recipe.at("kind").get<std::string>();
  try {
    if (kind == "two_vertex") return two_vertex(get_int("D"));
    if (kind == "counterexample") return counterexample_graph();
    if (kind == "cyclic") return cyclic(get_int("D"), field_set("M"), get_int("k"));
    if (kind == "realignment") return realignment(get_int("D"), field_set("M1"), field_set("M2"), field_set("M3"), get_int("k"));
    if (kind == "random") return random_graph(get_int("D"), get_int("k"), static_cast<std::uint64_t>(get_int("seed")));
    if (kind == "joint_realignment") {
      if (!recipe.contains("links") || !recipe.at("links").is_array()) throw ParseError("missing field \"links\"");
      std::vector<ColorSet> links;
      for (std::size_t i = 0; i < recipe.at("links").size(); ++i) links.push_back(get_set(recipe.at("links")[i], "links[" + std::to_string(i) + "]"));
      return joint_realignment(get_int("D"), field_set("M3"), links);
    }
    if (kind == "melonic") {
      std::vector<MelonicStep> script;
      if (recipe.contains("script")) {
        for (const auto& st : recipe.at("script")) {
          if (st.is_array() && st.size() == 2) {
            script.push_back({st[0].get<int>(), st[1].get<int>()});
          } else if (st.is_object()) {
            script.push_back({st.at("color").get<int>(), st.at("white").get<int>()});
          } else {
            throw ParseError("field \"script\" entries must be [color, white] or {\"color\", \"white\"}");
          }
        }
      }
      return melonic(get_int("D"), script);
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(kind + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(kind + ": " + e.what());
  }
  throw ParseError("unknown family kind \"" + kind + "\"");
}

}  // namespace tfact
