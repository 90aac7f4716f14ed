#include "tfact/pairing_search.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "pairing_engine.hpp"

namespace tfact {

namespace {

struct UnionFind {
  std::vector<int> parent;
  int sets;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)), sets(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    parent[static_cast<std::size_t>(a)] = b;
    --sets;
  }
};

bool members_connected(const std::vector<int>& owner, int p, const std::vector<int>& nu) {
  if (p == 1) return true;
  UnionFind uf(p);
  for (std::size_t s = 0; s < nu.size(); ++s) {
    uf.unite(owner[s], owner[static_cast<std::size_t>(nu[s])]);
    if (uf.sets == 1) return true;
  }
  return false;
}

struct TaskResult {
  int best = -1;
  std::uint64_t mult = 0;
  std::vector<std::vector<int>> optima;
  std::uint64_t explored = 0;
  bool truncated = false;
};

template <class Filter>
SearchReport search_max(const ColoredGraph& G, const SearchOptions& opts, Filter&& filter) {
  check_budget(G.k(), opts);
  const int k = G.k();
  std::vector<TaskResult> results(static_cast<std::size_t>(k));
  detail::run_tasks(k, opts.threads, [&](int first) {
    detail::PairingEngine engine(G);
    TaskResult& r = results[static_cast<std::size_t>(first)];
    auto leaf = [&](const std::vector<int>& nu, int f0) {
      ++r.explored;
      if (f0 < r.best) return;
      if (!filter(nu)) return;
      if (f0 > r.best) {
        r.best = f0;
        r.mult = 0;
        r.optima.clear();
        r.truncated = false;
      }
      ++r.mult;
      if (!opts.max_optima || r.optima.size() < *opts.max_optima) {
        r.optima.push_back(nu);
      } else {
        r.truncated = true;
      }
    };
    auto bound = [&](int upper, int) { return opts.prune && upper < r.best; };
    engine.run(first, leaf, bound);
  });

  SearchReport rep;
  rep.f0_max = -1;
  for (const auto& r : results) {
    rep.explored += r.explored;
    rep.f0_max = std::max(rep.f0_max, r.best);
  }
  for (const auto& r : results) {
    if (r.best != rep.f0_max || r.mult == 0) continue;
    rep.multiplicity += r.mult;
    rep.truncated = rep.truncated || r.truncated;
    for (const auto& nu : r.optima) {
      if (opts.max_optima && rep.optima.size() >= *opts.max_optima) {
        rep.truncated = true;
        break;
      }
      rep.optima.emplace_back(nu);
    }
  }
  return rep;
}

}  // namespace

BudgetExceeded::BudgetExceeded(int k, int k_max)
    : std::runtime_error("k = " + std::to_string(k) + " exceeds the enumeration budget k_max = " + std::to_string(k_max) +
                         " (raise it with --kmax)"),
      k_(k),
      k_max_(k_max) {}

void check_budget(int k, const SearchOptions& opts) {
  if (k > opts.k_max) throw BudgetExceeded(k, opts.k_max);
}

int pairing_f0(const ColoredGraph& G, const Pairing& nu) {
  if (nu.size() != G.k()) {
    throw std::invalid_argument("pairing has size " + std::to_string(nu.size()) + " but k(G) = " + std::to_string(G.k()));
  }
  int total = 0;
  for (const auto& s : G.sigmas()) total += cycle_count_of_quotient(s, nu);
  return total;
}

SearchReport search_f0(const ColoredGraph& G, const SearchOptions& opts) {
  return search_max(G, opts, [](const std::vector<int>&) { return true; });
}

SearchReport search_f0_connected(const GraphFamily& F, const SearchOptions& opts) {
  const auto& owner = F.owner();
  const int p = F.size();
  return search_max(F.union_graph(), opts, [&](const std::vector<int>& nu) { return members_connected(owner, p, nu); });
}

std::vector<std::uint64_t> f0_histogram(const GraphFamily& F, bool connected_only, const SearchOptions& opts) {
  const ColoredGraph& G = F.union_graph();
  check_budget(G.k(), opts);
  const int k = G.k();
  const int top = G.D() * k;
  const auto& owner = F.owner();
  const int p = F.size();
  std::vector<std::vector<std::uint64_t>> parts(static_cast<std::size_t>(k));
  detail::run_tasks(k, opts.threads, [&](int first) {
    auto& hist = parts[static_cast<std::size_t>(first)];
    hist.assign(static_cast<std::size_t>(top + 1), 0);
    detail::PairingEngine engine(G);
    auto leaf = [&](const std::vector<int>& nu, int f0) {
      if (connected_only && !members_connected(owner, p, nu)) return;
      ++hist[static_cast<std::size_t>(f0)];
    };
    engine.run(first, leaf, [](int, int) { return false; });
  });
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(top + 1), 0);
  for (const auto& part : parts)
    for (std::size_t i = 0; i < part.size(); ++i) hist[i] += part[i];
  return hist;
}

KConnectivity k_connectivity(const GraphFamily& F, const Pairing& nu) {
  if (nu.size() != F.total_k()) throw std::invalid_argument("k_connectivity: pairing size differs from the family's total k");
  const int p = F.size();
  UnionFind uf(p);
  for (int s = 0; s < nu.size(); ++s) uf.unite(F.owner()[static_cast<std::size_t>(s)], F.owner()[static_cast<std::size_t>(nu(s))]);
  KConnectivity out;
  out.connected = uf.sets == 1;
  std::vector<int> block_of(static_cast<std::size_t>(p), -1);
  for (int i = 0; i < p; ++i) {
    int& b = block_of[static_cast<std::size_t>(uf.find(i))];
    if (b < 0) {
      b = static_cast<int>(out.blocks.size());
      out.blocks.emplace_back();
    }
    out.blocks[static_cast<std::size_t>(b)].push_back(i);
  }
  return out;
}

int completed_component_count(const ColoredGraph& G, const Pairing& nu) {
  const int k = G.k();
  UnionFind uf(2 * k);
  for (int s = 0; s < k; ++s) {
    uf.unite(s, k + nu(s));
    for (int c = 0; c < G.D(); ++c) uf.unite(s, k + G.sigma(c)(s));
  }
  return uf.sets;
}

GammaTreeReport gamma_tree_check(const GraphFamily& F, const Pairing& nu) {
  const ColoredGraph& G = F.union_graph();
  const int k = G.k();
  const int p = F.size();
  GammaTreeReport rep;

  // Components of the completion, indexed by their root white.
  UnionFind hat(2 * k);
  for (int s = 0; s < k; ++s) {
    hat.unite(s, k + nu(s));
    for (int c = 0; c < G.D(); ++c) hat.unite(s, k + G.sigma(c)(s));
  }
  rep.kappa_hat = hat.sets;
  std::vector<int> hat_id(static_cast<std::size_t>(2 * k), -1);
  int next = 0;
  for (int s = 0; s < k; ++s) {
    int& id = hat_id[static_cast<std::size_t>(hat.find(s))];
    if (id < 0) id = next++;
  }

  // Bipartite incidence: members (0..p-1) and completed components
  // (p..p+kappa_hat-1), one edge per component of the uncompleted union.
  const auto labels = component_labels(G);
  const int kappa = component_count(G);
  rep.tree_value = kappa - p + 1;
  std::vector<int> seen(static_cast<std::size_t>(kappa), 0);
  UnionFind gamma(p + rep.kappa_hat);
  for (int s = 0; s < k; ++s) {
    const int comp = labels[static_cast<std::size_t>(s)];
    if (seen[static_cast<std::size_t>(comp)]) continue;
    seen[static_cast<std::size_t>(comp)] = 1;
    gamma.unite(F.owner()[static_cast<std::size_t>(s)], p + hat_id[static_cast<std::size_t>(hat.find(s))]);
  }
  const int vertices = p + rep.kappa_hat;
  rep.is_tree = gamma.sets == 1 && kappa == vertices - 1;
  return rep;
}

int reduced_gurau_degree(const ColoredGraph& G) {
  const auto st = graph_stats(G);
  const int D = G.D();
  return (D - 1) * st.kappa + (D - 1) * (D - 2) * st.k / 2 - st.F_total;
}

long long delta_scaled_from(const ColoredGraph& G, int f0) {
  const auto st = graph_stats(G);
  const long long D = G.D();
  const long long k = st.k;
  return D * (D - 1) * (D - 1) * k / 2 + (D - 1) * st.F_total - (D - 1) * (D - 1) * f0;
}

DegreeReport degree_report(const ColoredGraph& G, const SearchOptions& opts) {
  SearchOptions light = opts;
  light.max_optima = 1;
  const auto search = search_f0(G, light);
  DegreeReport rep;
  rep.D = G.D();
  rep.omega2 = reduced_gurau_degree(G);
  rep.f0 = search.f0_max;
  rep.mu = search.multiplicity;
  rep.delta_scaled = delta_scaled_from(G, rep.f0);
  rep.compatible = rep.delta_scaled == 0;
  return rep;
}

int gurau_bound(const ColoredGraph& G, int kappa_hat) {
  const auto st = graph_stats(G);
  if (kappa_hat < 1 || kappa_hat > st.kappa) {
    throw std::invalid_argument("gurau_bound: kappa_hat = " + std::to_string(kappa_hat) + " outside [1, " +
                                std::to_string(st.kappa) + "]");
  }
  const int D = G.D();
  const long long numerator = static_cast<long long>(D) * (D - 1) * st.k + 2LL * st.F_total;
  const long long denominator = 2LL * (D - 1);
  return static_cast<int>(numerator / denominator) - D * (st.kappa - kappa_hat);
}

bool is_treelike_pairing(const GraphFamily& F, const Pairing& nu, const std::vector<SearchReport>& member_searches) {
  const int p = F.size();
  const int k = F.total_k();
  const auto& owner = F.owner();
  if (static_cast<int>(member_searches.size()) != p) throw std::invalid_argument("is_treelike_pairing: one search per member expected");
  if (!k_connectivity(F, nu).connected) return false;

  const Permutation nu_inv = nu.inverse();
  // K minus the color-0 edges at whites w1 and w2.
  auto is_two_cut = [&](int w1, int w2) {
    UnionFind uf(p);
    for (int s = 0; s < k; ++s) {
      if (s == w1 || s == w2) continue;
      uf.unite(owner[static_cast<std::size_t>(s)], owner[static_cast<std::size_t>(nu(s))]);
    }
    return uf.sets > 1;
  };

  for (int i = 0; i < p; ++i) {
    const auto& search = member_searches[static_cast<std::size_t>(i)];
    if (search.truncated) throw std::invalid_argument("is_treelike_pairing: member optima list is truncated");
    const int off = F.offsets()[static_cast<std::size_t>(i)];
    bool satisfied = false;
    for (const auto& pi : search.optima) {
      bool ok = true;
      for (int s = 0; s < pi.size() && ok; ++s) {
        const int w = off + s;
        const int b = off + pi(s);
        if (nu(w) == b) continue;
        ok = is_two_cut(w, nu_inv(b));
      }
      if (ok) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) return false;
  }
  return true;
}

TreelikeReport treelike_report(const GraphFamily& F, const SearchOptions& opts) {
  check_budget(F.total_k(), opts);
  SearchOptions full = opts;
  full.max_optima.reset();
  std::vector<SearchReport> members;
  TreelikeReport rep;
  rep.treelike_value = F.D();
  for (int i = 0; i < F.size(); ++i) {
    members.push_back(search_f0(F.member(i), full));
    rep.treelike_value += members.back().f0_max - F.D();
  }
  const auto conn = search_f0_connected(F, full);
  rep.f0_connected = conn.f0_max;
  rep.has_treelike = conn.f0_max == rep.treelike_value;
  bool all = true;
  for (const auto& nu : conn.optima) {
    const bool t = is_treelike_pairing(F, nu, members);
    all = all && t;
    rep.classified.emplace_back(nu, t);
  }
  rep.only_treelike = rep.has_treelike && all;
  return rep;
}

MstPairReport mst_pair_f0(const ColoredGraph& H, const SearchOptions& opts) {
  if (!graph_stats(H).is_mst) throw std::invalid_argument("mst_pair_f0 requires a maximally single-trace graph");
  SearchOptions light = opts;
  light.max_optima = 1;
  MstPairReport rep;
  rep.f0_member = search_f0(H, light).f0_max;
  rep.dk = H.D() * H.k();
  rep.f0_union = std::max(2 * rep.f0_member, rep.dk);
  rep.nonfactorizing = 2 * rep.f0_member <= rep.dk;
  return rep;
}

mpq_class cayley_delta(const ColoredGraph& G, const Pairing& nu, const SearchOptions& opts) {
  SearchOptions light = opts;
  light.max_optima = 1;
  const int f0 = pairing_f0(G, nu);
  const int best = search_f0(G, light).f0_max;
  if (f0 != best) {
    throw std::invalid_argument("cayley_delta: pairing is not dominant (F0 = " + std::to_string(f0) + " < " +
                                std::to_string(best) + ")");
  }
  long long twice = 0;
  for (int i = 0; i < G.D(); ++i) {
    for (int j = i + 1; j < G.D(); ++j) {
      twice += cayley_distance(G.sigma(i), nu) + cayley_distance(nu, G.sigma(j)) - cayley_distance(G.sigma(i), G.sigma(j));
    }
  }
  mpq_class q(static_cast<long>(twice), 2L);
  q.canonicalize();
  return q;
}

}  // namespace tfact
