#include "tfact/graph_io.hpp"

#include <fstream>
#include <sstream>

namespace tfact {

using nlohmann::json;

namespace {

int require_int(const json& j, const char* field) {
  if (!j.contains(field)) throw ParseError(std::string("missing field \"") + field + "\"");
  const auto& v = j.at(field);
  if (!v.is_number_integer()) throw ParseError(std::string("field \"") + field + "\" must be an integer");
  return v.get<int>();
}

Permutation permutation_from_cycles(const json& entry, int k, const std::string& where) {
  std::string text;
  if (entry.is_string()) {
    text = entry.get<std::string>();
  } else if (entry.is_array()) {
    for (const auto& part : entry) {
      if (!part.is_string()) throw ParseError("field \"" + where + "\" must hold cycle strings");
      text += part.get<std::string>();
    }
  } else {
    throw ParseError("field \"" + where + "\" must be a cycle string or a list of them");
  }
  try {
    return Permutation::parse_cycles(text, k);
  } catch (const std::invalid_argument& e) {
    throw ParseError("field \"" + where + "\": " + e.what());
  }
}

}  // namespace

ColoredGraph graph_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("graph must be a JSON object");
  const int D = require_int(j, "D");
  const int k = require_int(j, "k");
  if (D < 2) throw ParseError("field \"D\" must be >= 2");
  if (k < 1) throw ParseError("field \"k\" must be >= 1");

  std::vector<Permutation> sig;
  if (j.contains("sigma")) {
    const auto& arr = j.at("sigma");
    if (!arr.is_array() || static_cast<int>(arr.size()) != D) {
      throw ParseError("field \"sigma\" must be a list of " + std::to_string(D) + " permutations");
    }
    for (std::size_t c = 0; c < arr.size(); ++c) {
      const std::string where = "sigma[" + std::to_string(c) + "]";
      if (!arr[c].is_array()) throw ParseError("field \"" + where + "\" must be an array of integers");
      std::vector<int> images;
      for (const auto& v : arr[c]) {
        if (!v.is_number_integer()) throw ParseError("field \"" + where + "\" must be an array of integers");
        images.push_back(v.get<int>());
      }
      if (static_cast<int>(images.size()) != k) {
        throw ParseError("field \"" + where + "\" has length " + std::to_string(images.size()) + ", expected k=" + std::to_string(k));
      }
      try {
        sig.push_back(Permutation::from_one_based(images));
      } catch (const std::invalid_argument& e) {
        throw ParseError("field \"" + where + "\": " + e.what());
      }
    }
  } else if (j.contains("sigma_cycles")) {
    const auto& arr = j.at("sigma_cycles");
    if (!arr.is_array() || static_cast<int>(arr.size()) != D) {
      throw ParseError("field \"sigma_cycles\" must be a list of " + std::to_string(D) + " entries");
    }
    for (std::size_t c = 0; c < arr.size(); ++c) {
      sig.push_back(permutation_from_cycles(arr[c], k, "sigma_cycles[" + std::to_string(c) + "]"));
    }
  } else {
    throw ParseError("missing field \"sigma\" (or \"sigma_cycles\")");
  }
  return ColoredGraph(D, std::move(sig));
}

json permutation_to_json(const Permutation& p) { return json(p.one_based()); }

json graph_to_json(const ColoredGraph& G) {
  json sig = json::array();
  for (const auto& s : G.sigmas()) sig.push_back(permutation_to_json(s));
  return json{{"D", G.D()}, {"k", G.k()}, {"sigma", sig}};
}

GraphFamily family_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("family must be a JSON object");
  if (!j.contains("members")) {
    if (j.contains("D")) return GraphFamily({{"G1", graph_from_json(j)}});
    throw ParseError("missing field \"members\"");
  }
  const auto& arr = j.at("members");
  if (!arr.is_array() || arr.empty()) throw ParseError("field \"members\" must be a nonempty list");
  std::vector<FamilyMember> members;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& m = arr[i];
    const std::string where = "members[" + std::to_string(i) + "]";
    if (!m.is_object() || !m.contains("graph")) throw ParseError("missing field \"" + where + ".graph\"");
    std::string name = "G" + std::to_string(i + 1);
    if (m.contains("name")) {
      if (!m.at("name").is_string()) throw ParseError("field \"" + where + ".name\" must be a string");
      name = m.at("name").get<std::string>();
    }
    try {
      members.push_back({name, graph_from_json(m.at("graph"))});
    } catch (const ParseError& e) {
      throw ParseError(where + ".graph: " + e.what());
    }
  }
  try {
    return GraphFamily(std::move(members));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("field \"members\": ") + e.what());
  }
}

json family_to_json(const GraphFamily& F) {
  json arr = json::array();
  for (const auto& m : F.members()) arr.push_back({{"name", m.name}, {"graph", graph_to_json(m.graph)}});
  return json{{"members", arr}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace tfact
