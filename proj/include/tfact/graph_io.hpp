#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "tfact/colored_graph.hpp"

namespace tfact {

/// Thrown on malformed graph/family JSON; the message names the field.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// {"D", "k", "sigma": [[...], ...]} with 1-based images, or "sigma_cycles"
/// holding one cycle string (or list of strings) per color.
ColoredGraph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const ColoredGraph& G);

/// {"members": [{"name", "graph"}]}. A bare graph is accepted as a
/// one-member family.
GraphFamily family_from_json(const nlohmann::json& j);
nlohmann::json family_to_json(const GraphFamily& F);

nlohmann::json permutation_to_json(const Permutation& p);

nlohmann::json read_json_file(const std::string& path);

}  // namespace tfact
