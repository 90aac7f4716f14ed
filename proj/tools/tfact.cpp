// Command-line front end: one subcommand per library operation. Reports go
// out as JSON, CSV or indented text and always carry a "status" field.

#include <CLI11.hpp>
#include <gmpxx.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tfact/colored_graph.hpp"
#include "tfact/entropy.hpp"
#include "tfact/families.hpp"
#include "tfact/graph_io.hpp"
#include "tfact/moments.hpp"
#include "tfact/pairing_search.hpp"
#include "tfact/sampler.hpp"

namespace {

using nlohmann::json;
using namespace tfact;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitOpen = 2;

struct Globals {
  int k_max = 11;
  int threads = 1;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::string out;
  bool no_timestamp = false;
};

struct Report {
  json body = json::object();
  // CSV layout: the columns and the body field holding one object per row.
  // An empty rows_key makes the body itself the single row.
  std::vector<std::string> columns;
  std::string rows_key;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// JSON config files: top-level keys set global flags, an object named after
// a subcommand sets that subcommand's options.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    return collect(app, default_also).dump(2) + "\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw CLI::ConversionError("config", e.what());
    }
    std::vector<CLI::ConfigItem> items;
    flatten(j, {}, "", items);
    return items;
  }

 private:
  static json collect(const CLI::App* app, bool default_also) {
    json j = json::object();
    for (const CLI::Option* opt : app->get_options({})) {
      if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
      const std::string name = opt->get_lnames().front();
      if (opt->count() > 0) {
        const auto& res = opt->results();
        j[name] = res.size() == 1 ? json(res.front()) : json(res);
      } else if (default_also && !opt->get_default_str().empty()) {
        j[name] = opt->get_default_str();
      }
    }
    for (const CLI::App* sub : app->get_subcommands({})) {
      json s = collect(sub, default_also);
      if (!s.empty()) j[sub->get_name()] = s;
    }
    return j;
  }

  static void flatten(const json& j, std::vector<std::string> parents, const std::string& name, std::vector<CLI::ConfigItem>& items) {
    if (j.is_object()) {
      if (!name.empty()) parents.push_back(name);
      for (const auto& [key, value] : j.items()) flatten(value, parents, key, items);
      return;
    }
    CLI::ConfigItem item;
    item.parents = parents;
    item.name = name;
    if (j.is_array()) {
      for (const auto& v : j) item.inputs.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    } else {
      item.inputs.push_back(j.is_string() ? j.get<std::string>() : j.dump());
    }
    items.push_back(std::move(item));
  }
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  if (v.is_array()) {
    std::string joined;
    for (const auto& x : v) joined += (joined.empty() ? "" : ";") + scalar_text(x);
    return joined;
  }
  return v.dump();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_csv(const Report& r, std::ostream& os) {
  for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << r.columns[i];
  os << "\n";
  const auto emit = [&](const json& row) {
    for (std::size_t i = 0; i < r.columns.size(); ++i) {
      const auto it = row.find(r.columns[i]);
      const auto fallback = r.body.find(r.columns[i]);
      std::string text;
      if (it != row.end()) {
        text = scalar_text(*it);
      } else if (fallback != r.body.end()) {
        text = scalar_text(*fallback);
      }
      os << (i ? "," : "") << csv_field(text);
    }
    os << "\n";
  };
  if (r.rows_key.empty()) {
    emit(r.body);
  } else {
    for (const auto& row : r.body.at(r.rows_key)) emit(row);
  }
}

void write_pretty(const json& j, std::ostream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, value] : j.items()) {
    const bool flat_array = value.is_array() && std::none_of(value.begin(), value.end(), [](const json& v) { return v.is_structured(); });
    if (value.is_object()) {
      os << pad << key << ":\n";
      write_pretty(value, os, indent + 2);
    } else if (value.is_array() && !flat_array) {
      os << pad << key << ":\n";
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (value[i].is_object()) {
          os << pad << "  [" << i << "]\n";
          write_pretty(value[i], os, indent + 4);
        } else {
          os << pad << "  [" << i << "] " << value[i].dump() << "\n";
        }
      }
    } else {
      os << pad << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
  }
}

int exit_code_for(const std::string& status) {
  if (status == "ok") return kExitOk;
  if (status == "failed" || status == "undecidable") return kExitOpen;
  return kExitError;
}

int emit(Report r, const Globals& g) {
  if (!g.no_timestamp) r.body["timestamp"] = utc_timestamp();
  std::ofstream file;
  if (!g.out.empty()) {
    file.open(g.out);
    if (!file) {
      std::cerr << "error: cannot write " << g.out << "\n";
      return kExitError;
    }
  }
  std::ostream& os = g.out.empty() ? std::cout : file;
  if (g.format == "csv") {
    write_csv(r, os);
  } else if (g.format == "pretty") {
    write_pretty(r.body, os, 0);
  } else {
    os << r.body.dump(2) << "\n";
  }
  return exit_code_for(r.body.value("status", "error"));
}

SearchOptions search_options(const Globals& g) {
  SearchOptions o;
  o.k_max = g.k_max;
  o.threads = g.threads;
  return o;
}

MCOptions mc_options(const Globals& g, const std::string& kind) {
  MCOptions o;
  o.kind = parse_tensor_kind(kind);
  o.threads = g.threads;
  return o;
}

std::uint64_t require_seed(const Globals& g, const std::string& command) {
  if (!g.seed) throw UsageError(command + " is stochastic and needs --seed");
  return *g.seed;
}

// A member graph is either explicit permutations or a generator recipe with
// "kind"; members may also ask for the conjugate.
json normalize_graph(const json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + " must be a JSON object");
  if (!j.contains("kind")) return j;
  try {
    return graph_to_json(generate_from_json(j));
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + ": " + e.what());
  }
}

GraphFamily load_family(const std::string& path) {
  const json j = read_json_file(path);
  if (!j.is_object()) throw ParseError(path + ": top level must be a JSON object");
  if (!j.contains("members")) return family_from_json(normalize_graph(j, path));
  json norm = j;
  auto& members = norm.at("members");
  if (!members.is_array()) throw ParseError("field \"members\" must be a nonempty list");
  for (std::size_t i = 0; i < members.size(); ++i) {
    auto& m = members[i];
    const std::string where = "members[" + std::to_string(i) + "]";
    if (!m.is_object() || !m.contains("graph")) throw ParseError("missing field \"" + where + ".graph\"");
    m["graph"] = normalize_graph(m.at("graph"), where + ".graph");
    if (m.contains("conjugate")) {
      if (!m.at("conjugate").is_boolean()) throw ParseError("field \"" + where + ".conjugate\" must be a boolean");
      if (m.at("conjugate").get<bool>()) m["graph"] = graph_to_json(conjugate(graph_from_json(m.at("graph"))));
      m.erase("conjugate");
    }
  }
  return family_from_json(norm);
}

ColoredGraph load_graph(const std::string& path) {
  const GraphFamily F = load_family(path);
  if (F.size() != 1) throw ParseError(path + ": expected a single graph, got " + std::to_string(F.size()) + " members");
  return F.member(0);
}

json poly_json(const LaurentPoly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"exponent", e}, {"coefficient", c.get_str()}});
  json out = {{"text", p.to_string()}, {"terms", terms}};
  if (!p.is_zero()) {
    const auto lead = leading_order(p);
    out["leading_exponent"] = lead.s;
    out["leading_coefficient"] = lead.mu.get_str();
  }
  return out;
}

std::string rational_text(const mpq_class& q) { return q.get_str(); }

std::string partition_text(const SetPartition& P, const GraphFamily& F) {
  std::string s;
  for (const auto& block : P) {
    s += "{";
    for (std::size_t i = 0; i < block.size(); ++i) s += (i ? " " : "") + F.members()[static_cast<std::size_t>(block[i])].name;
    s += "}";
  }
  return s;
}

Report cmd_analyze(const Globals& g, const std::string& path) {
  const ColoredGraph G = load_graph(path);
  const auto st = graph_stats(G);
  const auto deg = degree_report(G, search_options(g));
  Report r;
  r.body = {{"command", "analyze"},
            {"status", "ok"},
            {"D", G.D()},
            {"k", st.k},
            {"kappa", st.kappa},
            {"faces", st.faces},
            {"F", st.F_total},
            {"omega2", deg.omega2},
            {"delta", rational_text(deg.delta())},
            {"compatible", deg.compatible},
            {"F0", deg.f0},
            {"mu", deg.mu},
            {"is_mst", st.is_mst},
            {"is_planar3", G.D() == 3 ? json(st.is_planar3) : json(nullptr)}};
  r.columns = {"D", "k", "kappa", "F", "omega2", "delta", "compatible", "F0", "mu", "is_mst", "is_planar3"};
  return r;
}

Report cmd_factorize(const Globals& g, const std::string& path) {
  const GraphFamily F = load_family(path);
  const SearchOptions opts = search_options(g);
  Report r;
  r.columns = {"partition", "connected_sum", "reference", "margin", "methods", "lower_bound"};
  r.rows_key = "partitions";
  json tiers = json::array();
  std::optional<bool> factorizes;
  int tier = 0;
  json partitions = json::array();

  if (F.size() == 1) {
    factorizes = true;
    tiers.push_back({{"tier", 0}, {"name", "single member"}, {"outcome", "factorizes trivially"}});
  }
  if (!factorizes) {
    try {
      const auto t = component_bound_check(F, opts);
      tiers.push_back({{"tier", 1}, {"name", "component bound"}, {"outcome", t.passes ? "factorizes" : "inconclusive"},
                       {"lhs", rational_text(t.lhs)}, {"rhs", rational_text(t.rhs)}});
      if (t.passes) {
        factorizes = true;
        tier = 1;
      }
    } catch (const BudgetExceeded& e) {
      tiers.push_back({{"tier", 1}, {"name", "component bound"}, {"outcome", "over budget"}, {"detail", e.what()}});
    }
  }
  if (!factorizes) {
    try {
      const auto t = treelike_report(F, opts);
      tiers.push_back({{"tier", 2}, {"name", "tree-like dominant pairings"}, {"outcome", t.has_treelike ? "factorizes" : "inconclusive"},
                       {"f0_connected", t.f0_connected}, {"treelike_value", t.treelike_value}});
      if (t.has_treelike) {
        factorizes = true;
        tier = 2;
      }
    } catch (const BudgetExceeded& e) {
      tiers.push_back({{"tier", 2}, {"name", "tree-like dominant pairings"}, {"outcome", "over budget"}, {"detail", e.what()}});
    }
  }
  if (!factorizes) {
    try {
      const auto v = factorization_verdict(F, opts);
      bool shortcut = v.used_mst_shortcut;
      bool mirror = false;
      for (const auto& m : v.per_partition) {
        partitions.push_back({{"partition", partition_text(m.partition, F)},
                              {"connected_sum", m.connected_sum},
                              {"reference", m.reference},
                              {"margin", m.margin},
                              {"methods", m.block_methods},
                              {"lower_bound", m.lower_bound}});
        for (const auto& method : m.block_methods) {
          shortcut = shortcut || method == "mst-pair";
          mirror = mirror || method == "mirror-witness";
        }
      }
      factorizes = v.factorizes;
      tier = shortcut || mirror ? 4 : 3;
      std::string name = "exhaustive partition comparison";
      if (shortcut && mirror) {
        name = "conjugate-pair shortcut and mirror witness";
      } else if (shortcut) {
        name = "single-trace pair shortcut";
      } else if (mirror) {
        name = "conjugate-pair mirror witness";
      }
      tiers.push_back({{"tier", tier},
                       {"name", name},
                       {"outcome", v.factorizes ? "factorizes" : "does not factorize"}});
    } catch (const BudgetExceeded& e) {
      tiers.push_back({{"tier", 3}, {"name", "exhaustive partition comparison"}, {"outcome", "over budget"}, {"detail", e.what()}});
    }
  }

  r.body = {{"command", "factorize"}, {"members", F.size()}, {"total_k", F.total_k()}, {"tiers", tiers}, {"partitions", partitions}};
  if (factorizes) {
    r.body["status"] = "ok";
    r.body["factorizes"] = *factorizes;
    r.body["decided_by_tier"] = tier;
  } else {
    r.body["status"] = "undecidable";
    r.body["factorizes"] = nullptr;
    r.body["message"] = "undecidable at this budget (k_max = " + std::to_string(opts.k_max) + ")";
  }
  return r;
}

std::string cycles_text(const ColoredGraph& G) {
  std::string s;
  for (int c = 0; c < G.D(); ++c) s += (c ? " " : "") + G.sigma(c).to_cycle_string();
  return s;
}

Report cmd_generate(const Globals& g, const std::string& recipe, const std::vector<int>& with_delta) {
  Report r;
  r.columns = {"D", "k", "cycles"};
  ColoredGraph G;
  if (!with_delta.empty()) {
    const auto built = build_with_delta(with_delta[0], with_delta[1], search_options(g));
    G = built.graph;
    r.body["blocks"] = built.blocks;
    r.body["verified"] = built.verified;
    r.body["delta"] = built.delta ? json(rational_text(*built.delta)) : json(nullptr);
  } else {
    json j;
    if (!recipe.empty() && recipe.front() == '{') {
      try {
        j = json::parse(recipe);
      } catch (const json::parse_error& e) {
        throw ParseError(std::string("inline recipe: ") + e.what());
      }
    } else {
      j = read_json_file(recipe);
    }
    G = graph_from_json(normalize_graph(j, "recipe"));
  }
  r.body["command"] = "generate";
  r.body["status"] = "ok";
  r.body["D"] = G.D();
  r.body["k"] = G.k();
  r.body["cycles"] = cycles_text(G);
  r.body["graph"] = graph_to_json(G);
  return r;
}

Report cmd_moment(const Globals& g, const std::string& path, const std::vector<long>& Ns) {
  const GraphFamily F = load_family(path);
  const LaurentPoly m = gaussian_moment(F, search_options(g));
  Report r;
  json rows = json::array();
  for (long N : Ns) {
    if (N < 1) throw UsageError("--at values must be >= 1");
    const mpq_class value = m.evaluate(N);
    const mpq_class haar = value * haar_factor(F.total_k(), F.union_graph().D(), N);
    rows.push_back({{"N", N}, {"gaussian", value.get_d()}, {"haar", haar.get_d()}, {"gaussian_exact", value.get_str()}, {"haar_exact", haar.get_str()}});
  }
  r.body = {{"command", "moment"}, {"status", "ok"}, {"moment", poly_json(m)}, {"text", m.to_string()}, {"evaluations", rows}};
  if (Ns.empty()) {
    r.columns = {"text"};
  } else {
    r.columns = {"N", "text", "gaussian", "haar"};
    r.rows_key = "evaluations";
  }
  return r;
}

Report cmd_cumulant(const Globals& g, const std::string& path, bool residual) {
  const GraphFamily F = load_family(path);
  const SearchOptions opts = search_options(g);
  const LaurentPoly c = connected_cumulant(F, opts);
  Report r;
  r.body = {{"command", "cumulant"}, {"status", "ok"}, {"cumulant", poly_json(c)}, {"text", c.to_string()}};
  r.columns = {"text"};
  if (residual) {
    const LaurentPoly res = cumulant_consistency(F, opts);
    r.body["residual"] = res.to_string();
    r.body["residual_zero"] = res.is_zero();
    if (!res.is_zero()) r.body["status"] = "failed";
    r.columns.push_back("residual");
  }
  return r;
}

Report cmd_mc_moment(const Globals& g, const std::string& path, const std::vector<int>& Ns, std::uint64_t samples, const std::string& kind,
                     bool check) {
  const std::uint64_t seed = require_seed(g, "mc-moment");
  const GraphFamily F = load_family(path);
  const MCOptions mc = mc_options(g, kind);
  std::optional<LaurentPoly> exact;
  try {
    exact = gaussian_moment(F, search_options(g));
  } catch (const BudgetExceeded&) {
  }
  Report r;
  json rows = json::array();
  bool all_within = true;
  for (int N : Ns) {
    const auto est = mc_moment(F, N, samples, seed, mc);
    json row = {{"N", N}, {"kind", kind}, {"samples", est.samples}, {"mean_re", est.mean.real()}, {"mean_im", est.mean.imag()},
                {"stderr", est.stderr_}};
    if (exact) {
      mpq_class value = exact->evaluate(N);
      if (mc.kind == TensorKind::haar) value *= haar_factor(F.total_k(), F.union_graph().D(), N);
      const double z = z_score(est, cplx(value.get_d(), 0));
      row["exact"] = value.get_d();
      row["z"] = z;
      all_within = all_within && z <= 3;
    }
    rows.push_back(row);
  }
  r.body = {{"command", "mc-moment"}, {"status", "ok"}, {"seed", seed}, {"rows", rows}};
  if (check) {
    if (!exact) throw UsageError("--check needs the exact moment, which is over the enumeration budget");
    r.body["within_3_stderr"] = all_within;
    if (!all_within) r.body["status"] = "failed";
  }
  r.columns = {"N", "kind", "samples", "mean_re", "mean_im", "stderr", "exact", "z"};
  r.rows_key = "rows";
  return r;
}

Report cmd_concentration(const Globals& g, const std::string& path, const std::vector<int>& Ns, double epsilon, std::uint64_t samples,
                         const std::string& kind, bool check) {
  const std::uint64_t seed = require_seed(g, "concentration");
  const ColoredGraph G = load_graph(path);
  const auto rep = concentration_experiment(G, Ns, epsilon, samples, seed, mc_options(g, kind), search_options(g));
  Report r;
  json rows = json::array();
  for (const auto& row : rep.rows) rows.push_back({{"N", row.N}, {"coverage", row.coverage}, {"stderr", row.stderr_}, {"samples", row.samples}});
  r.body = {{"command", "concentration"}, {"status", "ok"}, {"seed", seed}, {"s", rep.s}, {"mu", rep.mu.get_str()}, {"epsilon", rep.epsilon},
            {"miss_fit", rep.miss_fit}, {"monotone", rep.monotone}, {"rows", rows}};
  if (check && !rep.monotone) r.body["status"] = "failed";
  r.columns = {"N", "coverage", "stderr", "samples"};
  r.rows_key = "rows";
  return r;
}

Report cmd_entropy_slope(const Globals& g, const std::string& path, const std::vector<int>& Ns, std::uint64_t samples, const std::string& kind,
                         bool check) {
  const std::uint64_t seed = require_seed(g, "entropy-slope");
  const ColoredGraph G = load_graph(path);
  const auto rep = entropy_slope_experiment(G, Ns, samples, seed, mc_options(g, kind), search_options(g));
  Report r;
  json rows = json::array();
  for (const auto& row : rep.rows) rows.push_back({{"N", row.N}, {"mean", row.mean}, {"stderr", row.stderr_}, {"infinite", row.infinite}});
  const bool slope_ok = std::abs(rep.slope - rep.expected_slope) <= 0.1 * std::abs(rep.expected_slope);
  const bool intercept_ok = std::abs(rep.intercept - rep.expected_intercept) <= 0.3;
  r.body = {{"command", "entropy-slope"},
            {"status", "ok"},
            {"seed", seed},
            {"slope", rep.slope},
            {"intercept", rep.intercept},
            {"expected_slope", rep.expected_slope},
            {"expected_intercept", rep.expected_intercept},
            {"slope_within_10_percent", slope_ok},
            {"intercept_within_0_3", intercept_ok},
            {"rows", rows}};
  if (check && !(slope_ok && intercept_ok)) r.body["status"] = "failed";
  r.columns = {"N", "mean", "stderr", "infinite"};
  r.rows_key = "rows";
  return r;
}

Report cmd_annealed(const std::string& regime_name, double mu, const std::vector<double>& lambdas, int dk, const std::string& convention_name) {
  LimitRegime regime;
  if (regime_name == "exponential") {
    regime = LimitRegime::exponential;
  } else if (regime_name == "gamma") {
    regime = LimitRegime::gamma;
  } else {
    throw UsageError("--regime must be exponential or gamma");
  }
  const DensityConvention convention = convention_name == "moment-matched" ? DensityConvention::moment_matched : DensityConvention::literal;
  Report r;
  json rows = json::array();
  for (double lambda : lambdas) {
    const auto a = annealed_coefficients(regime, mu, lambda, dk, convention);
    rows.push_back({{"lambda", lambda}, {"alpha", a.alpha}, {"beta", a.beta}, {"alpha_inf", a.alpha_inf}, {"beta_inf", a.beta_inf},
                    {"beta_inf_closed", a.beta_inf_closed}});
  }
  const auto gap = quenched_annealed_gap(regime, mu, dk, convention);
  r.body = {{"command", "annealed"},
            {"status", "ok"},
            {"regime", regime_name},
            {"convention", convention_name},
            {"mu", mu},
            {"dk", dk},
            {"rows", rows},
            {"gap",
             {{"quenched_slope", gap.quenched_slope},
              {"quenched_constant", gap.quenched_constant},
              {"annealed_slope", gap.annealed_slope},
              {"annealed_constant", gap.annealed_constant},
              {"gap", gap.gap}}}};
  r.columns = {"lambda", "alpha", "beta", "alpha_inf", "beta_inf", "beta_inf_closed"};
  r.rows_key = "rows";
  return r;
}

Report cmd_quenched(const Globals& g, const std::string& path, const std::vector<int>& Ns) {
  const ColoredGraph H = load_graph(path);
  Report r;
  json rows = json::array();
  for (int N : Ns) {
    const auto q = quenched_entropy(H, N, search_options(g));
    rows.push_back({{"N", N}, {"method", q.method}, {"value", q.value ? json(*q.value) : json(nullptr)}, {"slope", q.slope},
                    {"moment", q.moment ? json(q.moment->to_string()) : json(nullptr)}});
  }
  r.body = {{"command", "quenched"}, {"status", "ok"}, {"rows", rows}};
  r.columns = {"N", "method", "value", "slope"};
  r.rows_key = "rows";
  return r;
}

// The reference counterexample, or its single-trace completion with the last
// color replaced (same F0 = 26).
ColoredGraph counterexample_variant(const std::string& variant) {
  ColoredGraph H = tfact::counterexample_graph();
  if (variant == "reference") return H;
  if (variant != "completed") throw UsageError("--variant must be reference or completed");
  auto sigmas = H.sigmas();
  sigmas[5] = Permutation::parse_cycles("(135962487)", 9);
  return ColoredGraph(6, sigmas);
}

Report cmd_counterexample(const Globals& g, const std::string& variant) {
  const ColoredGraph H = counterexample_variant(variant);
  const SearchOptions opts = search_options(g);
  json checks = json::array();
  bool all = true;
  const auto add = [&](const std::string& name, const json& expected, const json& observed, const std::string& detail) {
    const bool pass = expected == observed;
    all = all && pass;
    checks.push_back({{"check", name}, {"expected", expected}, {"observed", observed}, {"pass", pass}, {"detail", detail}});
  };

  const auto deg = degree_report(H, opts);
  add("F0", 26, deg.f0, "multiplicity " + std::to_string(deg.mu));
  add("Delta", "10", rational_text(deg.delta()), "F = " + std::to_string(graph_stats(H).F_total));
  try {
    const auto pair = mst_pair_f0(H, opts);
    add("single-trace pair F0", 54, pair.f0_union, "reference " + std::to_string(2 * pair.f0_member));
  } catch (const std::invalid_argument& e) {
    add("single-trace pair F0", 54, nullptr, e.what());
  }
  const auto v = factorization_verdict(GraphFamily::of({H, conjugate(H)}), opts);
  std::string detail;
  if (v.worst) {
    const auto& w = v.per_partition[*v.worst];
    detail = (w.block_methods.empty() ? std::string("search") : w.block_methods.front()) + " " + std::to_string(w.connected_sum) +
             (w.lower_bound ? " (lower bound)" : "") + " vs " + std::to_string(w.reference);
  }
  add("pair factorizes", false, v.factorizes, detail);

  Report r;
  r.body = {{"command", "counterexample"}, {"status", all ? "ok" : "failed"}, {"variant", variant}, {"cycles", cycles_text(H)}, {"checks", checks}};
  r.columns = {"check", "expected", "observed", "pass", "detail"};
  r.rows_key = "checks";
  return r;
}

constexpr const char* kCsvHelp =
    "CSV columns:\n"
    "  analyze         D,k,kappa,F,omega2,delta,compatible,F0,mu,is_mst,is_planar3\n"
    "  factorize       partition,connected_sum,reference,margin,methods,lower_bound (one row per partition)\n"
    "  generate        D,k,cycles\n"
    "  moment          text, or N,text,gaussian,haar with --at\n"
    "  cumulant        text[,residual]\n"
    "  mc-moment       N,kind,samples,mean_re,mean_im,stderr,exact,z\n"
    "  concentration   N,coverage,stderr,samples\n"
    "  entropy-slope   N,mean,stderr,infinite\n"
    "  annealed        lambda,alpha,beta,alpha_inf,beta_inf,beta_inf_closed\n"
    "  quenched        N,method,value,slope\n"
    "  counterexample  check,expected,observed,pass,detail\n"
    "Exit codes: 0 ok, 1 error, 2 undecidable or failed check.";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Factorization and entropy tools for colored-graph tensor invariants"};
  app.footer(kCsvHelp);
  app.require_subcommand(1);
  app.fallthrough();
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file of option values; subcommand options nest under the subcommand name");

  Globals g;
  app.add_option("--kmax", g.k_max, "Largest k enumerated exhaustively")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--threads", g.threads, "Worker cap for search and sampling")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--seed", g.seed, "Seed; required by stochastic commands");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "pretty"}))->capture_default_str();
  app.add_option("--out", g.out, "Write the report to this file");
  app.add_flag("--no-timestamp", g.no_timestamp, "Omit the timestamp field");

  std::function<Report()> run;
  std::string input;
  const auto input_option = [&](CLI::App* sub, const std::string& what) {
    sub->add_option("input", input, what)->required()->check(CLI::ExistingFile);
  };

  auto* analyze = app.add_subcommand("analyze", "Faces, degrees and the maximal F0 of one graph");
  input_option(analyze, "Graph JSON");
  analyze->callback([&] { run = [&] { return cmd_analyze(g, input); }; });

  auto* factorize = app.add_subcommand("factorize", "Tiered factorization verdict for a family");
  input_option(factorize, "Family JSON");
  factorize->callback([&] { run = [&] { return cmd_factorize(g, input); }; });

  std::string recipe;
  std::vector<int> with_delta;
  auto* generate = app.add_subcommand("generate", "Build a graph from a generator recipe");
  auto* recipe_opt = generate->add_option("recipe", recipe, "Recipe file or inline JSON object");
  generate->add_option("--with-delta", with_delta, "D and Delta: connected graph with prescribed Delta")->expected(2)->excludes(recipe_opt);
  generate->callback([&] {
    if (recipe.empty() && with_delta.empty()) throw CLI::ValidationError("generate", "needs a recipe or --with-delta");
    run = [&] { return cmd_generate(g, recipe, with_delta); };
  });

  std::vector<long> at;
  auto* moment = app.add_subcommand("moment", "Exact Gaussian moment as a Laurent polynomial in N");
  input_option(moment, "Family JSON");
  moment->add_option("--at", at, "Evaluate at these N (Gaussian and Haar)");
  moment->callback([&] { run = [&] { return cmd_moment(g, input, at); }; });

  bool residual = false;
  auto* cumulant = app.add_subcommand("cumulant", "Exact connected cumulant");
  input_option(cumulant, "Family JSON");
  cumulant->add_flag("--residual", residual, "Also check the moment-cumulant residual");
  cumulant->callback([&] { run = [&] { return cmd_cumulant(g, input, residual); }; });

  struct Sampling {
    std::vector<int> Ns;
    std::uint64_t samples = 10000;
    std::string kind;
    bool check = false;
  };
  const auto stochastic = [](CLI::App* sub, Sampling& s) {
    sub->add_option("--N", s.Ns, "Tensor dimensions")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--samples", s.samples, "Samples per N")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--kind", s.kind, "Tensor distribution")->check(CLI::IsMember({"gaussian", "haar"}))->capture_default_str();
    sub->add_flag("--check", s.check, "Exit 2 when the acceptance test fails");
  };

  Sampling mc_args{{4}, 10000, "gaussian"};
  auto* mc = app.add_subcommand("mc-moment", "Monte Carlo moment against the exact value");
  input_option(mc, "Family JSON");
  stochastic(mc, mc_args);
  mc->callback([&] { run = [&] { return cmd_mc_moment(g, input, mc_args.Ns, mc_args.samples, mc_args.kind, mc_args.check); }; });

  Sampling conc_args{{4, 8, 16, 32}, 10000, "gaussian"};
  double epsilon = 0.5;
  auto* conc = app.add_subcommand("concentration", "Fraction of draws within epsilon of the leading term");
  input_option(conc, "Graph JSON");
  conc->add_option("--epsilon", epsilon, "Relative window")->check(CLI::PositiveNumber)->capture_default_str();
  stochastic(conc, conc_args);
  conc->callback([&] {
    run = [&] { return cmd_concentration(g, input, conc_args.Ns, epsilon, conc_args.samples, conc_args.kind, conc_args.check); };
  });

  Sampling slope_args{{4, 8, 16, 32}, 10000, "haar"};
  auto* slope = app.add_subcommand("entropy-slope", "Mean Renyi entropy against ln N");
  input_option(slope, "Graph JSON");
  stochastic(slope, slope_args);
  slope->callback([&] {
    run = [&] { return cmd_entropy_slope(g, input, slope_args.Ns, slope_args.samples, slope_args.kind, slope_args.check); };
  });

  std::string regime = "exponential", convention = "literal";
  double mu = 1;
  std::vector<double> lambdas{1};
  int dk = 54;
  auto* annealed = app.add_subcommand("annealed", "Annealed entropy coefficients by quadrature");
  annealed->add_option("--regime", regime, "Limiting distribution")->check(CLI::IsMember({"exponential", "gamma"}))->capture_default_str();
  annealed->add_option("--mu", mu, "Leading coefficient mu_c")->check(CLI::PositiveNumber)->capture_default_str();
  annealed->add_option("--lambda", lambdas, "Regularization strengths")->check(CLI::PositiveNumber)->capture_default_str();
  annealed->add_option("--dk", dk, "D k(H)")->check(CLI::PositiveNumber)->capture_default_str();
  annealed->add_option("--convention", convention, "Gamma density convention")
      ->check(CLI::IsMember({"literal", "moment-matched"}))
      ->capture_default_str();
  annealed->callback([&] { run = [&] { return cmd_annealed(regime, mu, lambdas, dk, convention); }; });

  std::vector<int> quenched_Ns{4};
  auto* quenched = app.add_subcommand("quenched", "Quenched entropy of H from the pair moment");
  input_option(quenched, "Graph JSON");
  quenched->add_option("--N", quenched_Ns, "Tensor dimensions")->check(CLI::PositiveNumber)->capture_default_str();
  quenched->callback([&] { run = [&] { return cmd_quenched(g, input, quenched_Ns); }; });

  std::string variant = "reference";
  auto* counter = app.add_subcommand("counterexample", "Reproduce the non-factorizing pair checks");
  counter->add_option("--variant", variant, "reference, or completed (single-trace completion)")
      ->check(CLI::IsMember({"reference", "completed"}))
      ->capture_default_str();
  counter->callback([&] { run = [&] { return cmd_counterexample(g, variant); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    return emit(run(), g);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitError;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
