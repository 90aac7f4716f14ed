#include <doctest.h>

#include "oracles.hpp"
#include "tfact/families.hpp"
#include "tfact/pairing_search.hpp"

using namespace tfact;

namespace {

ColoredGraph mst3() {
  return ColoredGraph(3, {Permutation::identity(3), Permutation::parse_cycles("(123)", 3), Permutation::parse_cycles("(132)", 3)});
}

Permutation cyc(const char* text, int k) { return Permutation::parse_cycles(text, k); }

}  // namespace

TEST_CASE("pairing f0 values") {
  CHECK(pairing_f0(two_vertex(3), Permutation::identity(1)) == 3);
  CHECK(pairing_f0(mst3(), cyc("(12)", 3)) == 6);
  CHECK(pairing_f0(counterexample_graph(), Permutation::identity(9)) == 14);
}

TEST_CASE("search agrees with brute force") {
  CHECK(search_f0(two_vertex(5)).f0_max == 5);
  CHECK(search_f0(two_vertex(5)).multiplicity == 1);

  const auto r = search_f0(mst3());
  CHECK(r.f0_max == 6);
  CHECK(r.multiplicity == 3);
  REQUIRE(r.optima.size() == 3);
  CHECK(r.optima[0] == cyc("(23)", 3));
  CHECK(r.optima[1] == cyc("(12)", 3));
  CHECK(r.optima[2] == cyc("(13)", 3));

  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int D = 2 + static_cast<int>(seed % 4);
    const int k = 1 + static_cast<int>(seed % 7);
    const auto G = random_graph(D, k, seed);
    const auto brute = oracle::brute_f0(G);
    for (bool prune : {true, false}) {
      SearchOptions opts;
      opts.prune = prune;
      const auto rep = search_f0(G, opts);
      CHECK(rep.f0_max == brute.f0);
      CHECK(rep.multiplicity == static_cast<std::uint64_t>(brute.mu));
      CHECK(rep.optima.size() == rep.multiplicity);
      CHECK(std::is_sorted(rep.optima.begin(), rep.optima.end()));
      for (const auto& nu : rep.optima) CHECK(pairing_f0(G, nu) == rep.f0_max);
    }
    SearchOptions threaded;
    threaded.threads = 3;
    const auto par = search_f0(G, threaded);
    CHECK(par.optima == search_f0(G).optima);
  }
}

TEST_CASE("histogram matches brute force") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto G = random_graph(3, 2 + static_cast<int>(seed % 5), seed);
    const auto brute = oracle::brute_f0(G);
    const auto hist = f0_histogram(GraphFamily::of({G}), false);
    REQUIRE(hist.size() == static_cast<std::size_t>(3 * G.k() + 1));
    for (std::size_t v = 0; v < hist.size(); ++v) {
      const auto it = brute.histogram.find(static_cast<int>(v));
      CHECK(hist[v] == static_cast<std::uint64_t>(it == brute.histogram.end() ? 0 : it->second));
    }
  }
}

TEST_CASE("budget") {
  const auto G = random_graph(3, 12, 1);
  try {
    search_f0(G);
    FAIL("expected a budget refusal");
  } catch (const BudgetExceeded& e) {
    CHECK(e.k() == 12);
    CHECK(e.k_max() == 11);
    CHECK(std::string(e.what()).find("k_max = 11") != std::string::npos);
  }
  SearchOptions opts;
  opts.k_max = 3;
  CHECK_THROWS_AS(search_f0(random_graph(3, 4, 1), opts), BudgetExceeded);
  opts.k_max = 0;
  CHECK_THROWS(check_budget(1, opts));
}

TEST_CASE("connected search") {
  const auto two = two_vertex(3);
  SUBCASE("two members") {
    const auto r = search_f0_connected(GraphFamily::of({two, two}));
    CHECK(r.f0_max == 3);
    CHECK(r.multiplicity == 1);
    CHECK(r.optima.at(0) == cyc("(12)", 2));
  }
  SUBCASE("three members") {
    const auto r = search_f0_connected(GraphFamily::of({two, two, two}));
    CHECK(r.f0_max == 3);
    CHECK(r.multiplicity == 2);
  }
  SUBCASE("two MST3") { CHECK(search_f0_connected(GraphFamily::of({mst3(), mst3()})).f0_max == 9); }
  SUBCASE("against the brute force filter") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      const auto F = GraphFamily::of({random_graph(3, 1 + static_cast<int>(seed % 3), seed), random_graph(3, 2, seed + 100),
                                      random_graph(3, 1 + static_cast<int>(seed % 2), seed + 200)});
      const auto moment = oracle::brute_moment(F, true);
      const auto r = search_f0_connected(F);
      const int Dk = 3 * F.total_k();
      CHECK(r.f0_max - Dk == moment.rbegin()->first);
      CHECK(mpz_class(static_cast<unsigned long>(r.multiplicity)) == moment.rbegin()->second);
    }
  }
}

TEST_CASE("member connectivity") {
  const auto two = two_vertex(3);
  const auto pair = GraphFamily::of({two, two});
  CHECK(!k_connectivity(pair, Permutation::identity(2)).connected);
  CHECK(k_connectivity(pair, Permutation::identity(2)).blocks == std::vector<std::vector<int>>{{0}, {1}});
  CHECK(k_connectivity(pair, cyc("(12)", 2)).connected);
  const auto triple = GraphFamily::of({two, two, two});
  const auto kc = k_connectivity(triple, cyc("(12)", 3));
  CHECK(!kc.connected);
  CHECK(kc.blocks == std::vector<std::vector<int>>{{0, 1}, {2}});
}

TEST_CASE("gamma tree") {
  const auto two = two_vertex(3);
  const auto pair = GraphFamily::of({two, two});
  const auto t = gamma_tree_check(pair, cyc("(12)", 2));
  CHECK(t.kappa_hat == 1);
  CHECK(t.tree_value == 1);
  CHECK(t.is_tree);
  const auto n = gamma_tree_check(pair, Permutation::identity(2));
  CHECK(n.kappa_hat == 2);
  CHECK(!n.is_tree);

  const auto single = GraphFamily::of({mst3()});
  for (const auto& nu : {Permutation::identity(3), cyc("(12)", 3)}) {
    CHECK(gamma_tree_check(single, nu).is_tree == (completed_component_count(mst3(), nu) == 1));
  }
}

TEST_CASE("degree report") {
  const auto two = degree_report(two_vertex(3));
  CHECK(two.omega2 == 0);
  CHECK(two.delta() == 0);
  CHECK(two.compatible);

  const auto cy = degree_report(cyclic(4, {1, 2}, 2));
  CHECK(cy.f0 == 6);
  CHECK(cy.delta() == 1);
  CHECK(!cy.compatible);

  const auto mst = degree_report(mst3());
  CHECK(mst.delta() == 0);
  CHECK(mst.mu == 3);

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto G = random_graph(2 + static_cast<int>(seed % 4), 1 + static_cast<int>(seed % 6), seed);
    const auto rep = degree_report(G);
    CHECK(rep.omega2 >= 0);
    CHECK(rep.delta_scaled >= 0);
    const auto s = graph_stats(G);
    const int D = G.D();
    // compatible iff 2(D-1) F0 == D(D-1) k + 2F.
    CHECK(rep.compatible == (2 * (D - 1) * rep.f0 == D * (D - 1) * G.k() + 2 * s.F_total));
  }
}

TEST_CASE("gurau bound") {
  CHECK(gurau_bound(two_vertex(3), 1) == 3);
  const auto H = counterexample_graph();
  const auto G = disjoint_union({H, conjugate(H)});
  // floor((D(D-1)k + 2F) / (2(D-1))) - D(kappa - kappa_hat) with D=6, k=18.
  const int F = graph_stats(G).F_total;
  CHECK(gurau_bound(G, 1) == (30 * 18 + 2 * F) / 10 - 6);
  CHECK(gurau_bound(G, 2) == (30 * 18 + 2 * F) / 10);
  CHECK_THROWS(gurau_bound(G, 3));
  CHECK_THROWS(gurau_bound(G, 0));
  const auto M = disjoint_union({mst3(), conjugate(mst3())});
  CHECK(gurau_bound(M, 1) == 9);
  CHECK(gurau_bound(M, 2) == 12);
}

TEST_CASE("tree-like pairings") {
  const auto two = two_vertex(3);
  SUBCASE("two two-vertex graphs") {
    const auto r = treelike_report(GraphFamily::of({two, two}));
    CHECK(r.has_treelike);
    CHECK(r.only_treelike);
    CHECK(r.f0_connected == 3);
    CHECK(r.treelike_value == 3);
  }
  SUBCASE("two MST3") {
    const auto r = treelike_report(GraphFamily::of({mst3(), mst3()}));
    CHECK(r.has_treelike);
    CHECK(r.f0_connected == 9);
    CHECK(r.treelike_value == 9);
  }
  SUBCASE("single melonic graph") {
    const auto r = treelike_report(GraphFamily::of({melonic(3, {{1, 1}})}));
    CHECK(r.has_treelike);
    CHECK(r.only_treelike);
  }
  SUBCASE("counterexample pair is not tree-like") {
    // Connected optimum of {cyclic D=4 M={1,2} k=2, itself} should not beat
    // the tree-like value when no tree-like pairing exists.
    const auto C = cyclic(4, {1, 2}, 2);
    const auto r = treelike_report(GraphFamily::of({C, C}));
    CHECK(r.f0_connected >= r.treelike_value);
    if (!r.has_treelike) CHECK(!r.only_treelike);
  }
}

TEST_CASE("single-trace pair shortcut") {
  CHECK_THROWS_AS(mst_pair_f0(counterexample_graph()), std::invalid_argument);

  const auto m = mst_pair_f0(mst3());
  CHECK(m.f0_union == 12);
  CHECK(!m.nonfactorizing);
  CHECK(search_f0(disjoint_union({mst3(), conjugate(mst3())})).f0_max == 12);
  CHECK_THROWS_AS(mst_pair_f0(cyclic(4, {1, 2}, 2)), std::invalid_argument);
}

TEST_CASE("cayley delta") {
  CHECK(cayley_delta(two_vertex(3), Permutation::identity(1)) == 0);
  CHECK(cayley_delta(mst3(), cyc("(12)", 3)) == 0);
  CHECK(cayley_delta(cyclic(4, {1, 2}, 2), Permutation::identity(2)) == 1);
  CHECK_THROWS_AS(cayley_delta(mst3(), Permutation::identity(3)), std::invalid_argument);
}
