#include "tfact/colored_graph.hpp"

#include <numeric>
#include <stdexcept>

namespace tfact {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace

ColoredGraph::ColoredGraph(int D, std::vector<Permutation> sigmas) : sigma_(std::move(sigmas)) {
  if (D < 2) throw std::invalid_argument("colored graph needs D >= 2, got " + std::to_string(D));
  if (static_cast<int>(sigma_.size()) != D) {
    throw std::invalid_argument("expected " + std::to_string(D) + " permutations, got " + std::to_string(sigma_.size()));
  }
  const int k0 = sigma_.front().size();
  if (k0 < 1) throw std::invalid_argument("colored graph needs k >= 1");
  for (std::size_t c = 0; c < sigma_.size(); ++c) {
    if (sigma_[c].size() != k0) {
      throw std::invalid_argument("sigma[" + std::to_string(c + 1) + "] has length " + std::to_string(sigma_[c].size()) +
                                  ", expected " + std::to_string(k0));
    }
  }
}

std::vector<int> component_labels(const ColoredGraph& G) {
  // Whites are 0..k-1, blacks k..2k-1.
  const int k = G.k();
  UnionFind uf(2 * k);
  for (int c = 0; c < G.D(); ++c)
    for (int s = 0; s < k; ++s) uf.unite(s, k + G.sigma(c)(s));
  std::vector<int> root_to_id(static_cast<std::size_t>(2 * k), -1);
  std::vector<int> labels(static_cast<std::size_t>(k));
  int next = 0;
  for (int s = 0; s < k; ++s) {
    int& id = root_to_id[static_cast<std::size_t>(uf.find(s))];
    if (id < 0) id = next++;
    labels[static_cast<std::size_t>(s)] = id;
  }
  return labels;
}

int component_count(const ColoredGraph& G) {
  const auto labels = component_labels(G);
  int count = 0;
  for (int l : labels) count = std::max(count, l + 1);
  return count;
}

GraphStats graph_stats(const ColoredGraph& G) {
  GraphStats st;
  const int D = G.D();
  st.k = G.k();
  st.kappa = component_count(G);
  st.faces.assign(static_cast<std::size_t>(D), std::vector<int>(static_cast<std::size_t>(D), 0));
  st.is_mst = true;
  for (int i = 0; i < D; ++i) {
    for (int j = i + 1; j < D; ++j) {
      const int f = cycle_count_of_quotient(G.sigma(i), G.sigma(j));
      st.faces[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = f;
      st.faces[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = f;
      st.F_total += f;
      if (f != 1) st.is_mst = false;
    }
  }
  st.is_planar3 = D == 3 && st.F_total == 2 * st.kappa + st.k;
  return st;
}

ColoredGraph induced_subgraph(const ColoredGraph& G, const std::vector<int>& whites) {
  // Blacks reached from the chosen whites, relabeled in increasing order.
  const int k = G.k();
  std::vector<int> white_new(static_cast<std::size_t>(k), -1);
  for (std::size_t i = 0; i < whites.size(); ++i) white_new[static_cast<std::size_t>(whites[i])] = static_cast<int>(i);
  std::vector<char> black_used(static_cast<std::size_t>(k), 0);
  for (int s : whites) black_used[static_cast<std::size_t>(G.sigma(0)(s))] = 1;
  std::vector<int> black_new(static_cast<std::size_t>(k), -1);
  int next = 0;
  for (int b = 0; b < k; ++b)
    if (black_used[static_cast<std::size_t>(b)]) black_new[static_cast<std::size_t>(b)] = next++;
  std::vector<Permutation> sig;
  for (int c = 0; c < G.D(); ++c) {
    std::vector<int> images;
    for (int s : whites) {
      const int b = black_new[static_cast<std::size_t>(G.sigma(c)(s))];
      if (b < 0) throw std::invalid_argument("induced_subgraph: vertex set is not a union of components");
      images.push_back(b);
    }
    sig.emplace_back(std::move(images));
  }
  return ColoredGraph(G.D(), std::move(sig));
}

std::vector<ColoredGraph> split_components(const ColoredGraph& G) {
  const auto labels = component_labels(G);
  const int count = component_count(G);
  std::vector<std::vector<int>> whites(static_cast<std::size_t>(count));
  for (int s = 0; s < G.k(); ++s) whites[static_cast<std::size_t>(labels[static_cast<std::size_t>(s)])].push_back(s);
  std::vector<ColoredGraph> out;
  for (const auto& w : whites) out.push_back(induced_subgraph(G, w));
  return out;
}

ColoredGraph disjoint_union(const std::vector<ColoredGraph>& parts) {
  if (parts.empty()) throw std::invalid_argument("disjoint_union of an empty list");
  const int D = parts.front().D();
  for (const auto& g : parts) {
    if (g.D() != D) throw std::invalid_argument("disjoint_union: mixed D (" + std::to_string(D) + " and " + std::to_string(g.D()) + ")");
  }
  std::vector<Permutation> sig;
  for (int c = 0; c < D; ++c) {
    std::vector<Permutation> blocks;
    for (const auto& g : parts) blocks.push_back(g.sigma(c));
    sig.push_back(direct_sum(blocks));
  }
  return ColoredGraph(D, std::move(sig));
}

GraphFamily::GraphFamily(std::vector<FamilyMember> members) : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("graph family must have at least one member");
  std::vector<ColoredGraph> graphs;
  int offset = 0;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const auto& g = members_[i].graph;
    offsets_.push_back(offset);
    for (int s = 0; s < g.k(); ++s) owner_.push_back(static_cast<int>(i));
    offset += g.k();
    graphs.push_back(g);
  }
  union_ = disjoint_union(graphs);
}

GraphFamily GraphFamily::of(const std::vector<ColoredGraph>& graphs) {
  std::vector<FamilyMember> members;
  for (std::size_t i = 0; i < graphs.size(); ++i) members.push_back({"G" + std::to_string(i + 1), graphs[i]});
  return GraphFamily(std::move(members));
}

GraphFamily GraphFamily::subfamily(const std::vector<int>& indices) const {
  std::vector<FamilyMember> sel;
  for (int i : indices) sel.push_back(members_.at(static_cast<std::size_t>(i)));
  return GraphFamily(std::move(sel));
}

ColoredGraph conjugate(const ColoredGraph& G) {
  std::vector<Permutation> sig;
  for (const auto& s : G.sigmas()) sig.push_back(s.inverse());
  return ColoredGraph(G.D(), std::move(sig));
}

ColoredGraph flip_edges(const ColoredGraph& G, int c, int s1, int s2) {
  if (c < 0 || c >= G.D()) throw std::invalid_argument("flip_edges: color out of range");
  if (s1 < 0 || s2 < 0 || s1 >= G.k() || s2 >= G.k()) throw std::invalid_argument("flip_edges: white label out of range");
  if (s1 == s2) throw std::invalid_argument("flip_edges: the two edges must be distinct (s1 == s2)");
  std::vector<Permutation> sig = G.sigmas();
  sig[static_cast<std::size_t>(c)] = sig[static_cast<std::size_t>(c)].with_swapped_images(s1, s2);
  return ColoredGraph(G.D(), std::move(sig));
}

PartialPairing::PartialPairing(int k, std::vector<int> image) : image_(std::move(image)) {
  if (static_cast<int>(image_.size()) != k) throw std::invalid_argument("partial pairing length mismatch");
  std::vector<char> hit(static_cast<std::size_t>(k), 0);
  for (int b : image_) {
    if (b < 0) continue;
    if (b >= k) throw std::invalid_argument("partial pairing image out of range");
    if (hit[static_cast<std::size_t>(b)]) throw std::invalid_argument("partial pairing is not injective: black " + std::to_string(b + 1) + " matched twice");
    hit[static_cast<std::size_t>(b)] = 1;
  }
}

int PartialPairing::matched() const {
  int n = 0;
  for (int b : image_)
    if (b >= 0) ++n;
  return n;
}

BoundaryReport boundary_graph(const ColoredGraph& G, const PartialPairing& mu) {
  const int k = G.k();
  const int D = G.D();
  if (mu.k() != k) throw std::invalid_argument("boundary_graph: pairing size differs from k(G)");

  std::vector<int> mu_inv(static_cast<std::size_t>(k), -1);
  for (int w = 0; w < k; ++w)
    if (mu(w) >= 0) mu_inv[static_cast<std::size_t>(mu(w))] = w;

  BoundaryReport rep;
  std::vector<int> white_new(static_cast<std::size_t>(k), -1);
  std::vector<int> black_new(static_cast<std::size_t>(k), -1);
  for (int w = 0; w < k; ++w) {
    if (mu(w) < 0) {
      white_new[static_cast<std::size_t>(w)] = static_cast<int>(rep.white_labels.size());
      rep.white_labels.push_back(w);
    }
  }
  for (int b = 0; b < k; ++b) {
    if (mu_inv[static_cast<std::size_t>(b)] < 0) {
      black_new[static_cast<std::size_t>(b)] = static_cast<int>(rep.black_labels.size());
      rep.black_labels.push_back(b);
    }
  }
  rep.boundary_k = static_cast<int>(rep.white_labels.size());

  std::vector<Permutation> boundary_sigma;
  for (int c = 0; c < D; ++c) {
    std::vector<char> seen(static_cast<std::size_t>(k), 0);
    std::vector<int> images;
    // Open paths start at unmatched whites: color c, then color 0 back to a white.
    for (int w : rep.white_labels) {
      int cur = w;
      for (;;) {
        seen[static_cast<std::size_t>(cur)] = 1;
        const int b = G.sigma(c)(cur);
        const int next = mu_inv[static_cast<std::size_t>(b)];
        if (next < 0) {
          images.push_back(black_new[static_cast<std::size_t>(b)]);
          break;
        }
        cur = next;
      }
    }
    // Whatever remains closes into internal faces.
    for (int w = 0; w < k; ++w) {
      if (seen[static_cast<std::size_t>(w)]) continue;
      ++rep.internal_f0;
      for (int cur = w; !seen[static_cast<std::size_t>(cur)]; cur = mu_inv[static_cast<std::size_t>(G.sigma(c)(cur))]) {
        seen[static_cast<std::size_t>(cur)] = 1;
      }
    }
    if (rep.boundary_k > 0) boundary_sigma.emplace_back(std::move(images));
  }
  if (rep.boundary_k > 0) rep.boundary = ColoredGraph(D, std::move(boundary_sigma));
  return rep;
}

}  // namespace tfact
