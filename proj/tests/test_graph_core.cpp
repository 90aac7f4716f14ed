#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tfact/colored_graph.hpp"
#include "tfact/families.hpp"
#include "tfact/graph_io.hpp"
#include "tfact/laurent_poly.hpp"
#include "tfact/pairing_search.hpp"
#include "tfact/set_partitions.hpp"

using namespace tfact;

namespace {

ColoredGraph mst3() {
  return ColoredGraph(3, {Permutation::identity(3), Permutation::parse_cycles("(123)", 3), Permutation::parse_cycles("(132)", 3)});
}

}  // namespace

TEST_CASE("permutation basics") {
  const auto p = Permutation::parse_cycles("(1 2 3)(4)", 4);
  CHECK(p.one_based() == std::vector<int>{2, 3, 1, 4});
  CHECK(p.cycle_count() == 2);
  CHECK((p * p.inverse()).is_identity());
  CHECK(Permutation::parse_cycles("(1,2)", 3).one_based() == std::vector<int>{2, 1, 3});
  CHECK(Permutation::parse_cycles("(123456789)", 9) == Permutation::long_cycle(9));
  CHECK(Permutation::parse_cycles("(10 1)", 10)(9) == 0);
  CHECK(Permutation::parse_cycles("", 3).is_identity());
  CHECK(p.to_cycle_string() == "(1 2 3)(4)");
  CHECK(Permutation::parse_cycles(p.to_cycle_string(), 4) == p);

  const auto a = Permutation::parse_cycles("(1 3)", 3);
  const auto b = Permutation::parse_cycles("(1 2 3)", 3);
  CHECK((a * b)(0) == a(b(0)));
  CHECK(cycle_count_of_quotient(a, b) == (a * b.inverse()).cycle_count());
  CHECK(cayley_distance(a, a) == 0);
  CHECK(a.with_swapped_images(0, 1).one_based() == std::vector<int>{2, 3, 1});

  const std::vector<Permutation> parts{Permutation::identity(1), Permutation::parse_cycles("(1 2)", 2)};
  CHECK(direct_sum(parts).one_based() == std::vector<int>{1, 3, 2});
}

TEST_CASE("permutation validation") {
  CHECK_THROWS_AS(Permutation({0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation({0, 2}), std::invalid_argument);
  CHECK_THROWS(Permutation::parse_cycles("(1 1)", 3));
  CHECK_THROWS(Permutation::parse_cycles("(1 4)", 3));
  CHECK_THROWS(Permutation::parse_cycles("(1 2", 3));
}

TEST_CASE("quotient cycle count agrees with the oracle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 1 + trial % 8;
    std::vector<int> a(static_cast<std::size_t>(k)), b(static_cast<std::size_t>(k));
    std::iota(a.begin(), a.end(), 0);
    std::iota(b.begin(), b.end(), 0);
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    CHECK(cycle_count_of_quotient(Permutation(a), Permutation(b)) == oracle::cycles_of_quotient(a, b));
  }
}

TEST_CASE("graph construction") {
  const ColoredGraph two(3, {Permutation::identity(1), Permutation::identity(1), Permutation::identity(1)});
  CHECK(two.k() == 1);
  CHECK(two == two_vertex(3));
  CHECK_THROWS_AS(ColoredGraph(1, {Permutation::identity(2)}), std::invalid_argument);
  CHECK_THROWS_AS(ColoredGraph(3, {Permutation::identity(2), Permutation::identity(2)}), std::invalid_argument);
  CHECK_THROWS_AS(ColoredGraph(2, {Permutation::identity(2), Permutation::identity(3)}), std::invalid_argument);

  const auto bad = nlohmann::json::parse(R"({"D":3,"k":2,"sigma":[[1,2],[2,1],[1,1]]})");
  try {
    graph_from_json(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("sigma[2]") != std::string::npos);
  }
}

TEST_CASE("graph stats") {
  SUBCASE("two-vertex") {
    const auto s = graph_stats(two_vertex(3));
    CHECK(s.k == 1);
    CHECK(s.kappa == 1);
    CHECK(s.F_total == 3);
    CHECK(s.is_mst);
    CHECK(s.is_planar3);
  }
  SUBCASE("counterexample graph") {
    const auto H = counterexample_graph();
    const auto s = graph_stats(H);
    CHECK(s.k == 9);
    CHECK(s.kappa == 1);
    // As given, color 6 closes 5, 3 and 3 faces with colors 3, 4 and 5;
    // every other pair has a single face.
    int total = 0;
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) {
        CHECK(s.faces[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == oracle::faces(H, i, j));
        total += oracle::faces(H, i, j);
      }
    CHECK(s.F_total == total);
    CHECK(total == 23);
    CHECK(oracle::faces(H, 2, 5) == 5);
    CHECK(!s.is_mst);
  }
  SUBCASE("cyclic D=4 M={1,2} k=2") {
    const auto s = graph_stats(cyclic(4, {1, 2}, 2));
    CHECK(s.F_total == 8);
    CHECK(s.kappa == 1);
  }
  SUBCASE("faces match the oracle on random graphs") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto G = random_graph(4, 1 + static_cast<int>(seed % 6), seed);
      const auto s = graph_stats(G);
      int total = 0;
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
          CHECK(s.faces[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == oracle::faces(G, i, j));
          total += oracle::faces(G, i, j);
        }
      CHECK(s.F_total == total);
    }
  }
}

TEST_CASE("disjoint union and conjugation") {
  const auto u = disjoint_union({two_vertex(3), two_vertex(3)});
  CHECK(u.k() == 2);
  CHECK(graph_stats(u).kappa == 2);
  for (int c = 0; c < 3; ++c) CHECK(u.sigma(c).is_identity());
  CHECK(disjoint_union({mst3()}) == mst3());
  CHECK_THROWS(disjoint_union({two_vertex(3), two_vertex(4)}));
  CHECK_THROWS(disjoint_union({}));

  const auto H = counterexample_graph();
  const auto G = disjoint_union({H, conjugate(H)});
  CHECK(G.k() == 18);
  CHECK(graph_stats(G).kappa == 2);
  CHECK(graph_stats(G).F_total == 2 * graph_stats(H).F_total);

  CHECK(conjugate(two_vertex(5)) == two_vertex(5));
  const auto cb = conjugate(cyclic(3, {1}, 3));
  CHECK(cb.sigma(0).is_identity());
  CHECK(cb.sigma(1) == Permutation::long_cycle(3).inverse());
  CHECK(cb.sigma(2) == Permutation::long_cycle(3).inverse());

  const auto parts = split_components(G);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == H);
  CHECK(parts[1] == conjugate(H));
  CHECK(component_labels(u) == std::vector<int>{0, 1});
}

TEST_CASE("edge flips") {
  const auto u = disjoint_union({two_vertex(3), two_vertex(3)});
  const auto f = flip_edges(u, 0, 0, 1);
  CHECK(f.sigma(0) == Permutation::parse_cycles("(1 2)", 2));
  CHECK(f.sigma(1).is_identity());
  CHECK(f.sigma(2).is_identity());
  CHECK(component_count(f) == 1);
  CHECK(flip_edges(f, 0, 0, 1) == u);
  CHECK_THROWS(flip_edges(u, 0, 1, 1));

  // Two realignment blocks joined by one flip.
  const auto B = realignment(4, {1}, {2}, {3, 4}, 2);
  const auto joined = flip_edges(disjoint_union({B, B}), 0, 0, 2);
  CHECK(component_count(joined) == 1);
  const auto brute = oracle::brute_f0(joined);
  CHECK(delta_scaled_from(joined, brute.f0) == 2 * 3 * 2);
}

TEST_CASE("graph json round trip") {
  const auto H = counterexample_graph();
  CHECK(graph_from_json(graph_to_json(H)) == H);
  const auto j = nlohmann::json::parse(R"j({"D":3,"k":3,"sigma_cycles":["","(123)","(132)"]})j");
  CHECK(graph_from_json(j) == mst3());
  const auto fam = nlohmann::json::parse(R"({"members":[{"name":"a","graph":{"D":3,"k":1,"sigma":[[1],[1],[1]]}},
                                                        {"name":"b","graph":{"D":3,"k":1,"sigma":[[1],[1],[1]]}}]})");
  const auto F = family_from_json(fam);
  CHECK(F.size() == 2);
  CHECK(F.members()[1].name == "b");
  CHECK(family_from_json(family_to_json(F)).union_graph() == F.union_graph());
  CHECK(family_from_json(graph_to_json(H)).size() == 1);
  CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(R"({"D":3,"k":1})")), ParseError);
  CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(R"({"D":3,"k":2,"sigma":[[1,2],[1,2]]})")), ParseError);
}

TEST_CASE("families and owners") {
  const auto F = GraphFamily::of({two_vertex(3), mst3()});
  CHECK(F.total_k() == 4);
  CHECK(F.offsets() == std::vector<int>{0, 1});
  CHECK(F.owner() == std::vector<int>{0, 1, 1, 1});
  CHECK(F.subfamily({1}).union_graph() == mst3());
  CHECK_THROWS(GraphFamily::of({}));
  CHECK_THROWS(GraphFamily::of({two_vertex(3), two_vertex(4)}));
}

namespace {

// Completes the partial pairing `mu` by `rest` on the unmatched whites and
// checks the face count splits into internal and boundary parts.
void check_boundary_split(const ColoredGraph& G, const PartialPairing& mu, std::mt19937_64& rng) {
  const auto rep = boundary_graph(G, mu);
  std::vector<int> free_whites, free_blacks;
  std::vector<char> used(static_cast<std::size_t>(G.k()), 0);
  for (int s = 0; s < G.k(); ++s) {
    if (mu(s) < 0)
      free_whites.push_back(s);
    else
      used[static_cast<std::size_t>(mu(s))] = 1;
  }
  for (int b = 0; b < G.k(); ++b)
    if (!used[static_cast<std::size_t>(b)]) free_blacks.push_back(b);
  CHECK(rep.boundary_k == static_cast<int>(free_whites.size()));
  CHECK(rep.white_labels == free_whites);
  CHECK(rep.black_labels == free_blacks);

  std::vector<int> rest(free_whites.size());
  std::iota(rest.begin(), rest.end(), 0);
  for (int trial = 0; trial < 6; ++trial) {
    std::shuffle(rest.begin(), rest.end(), rng);
    std::vector<int> nu(mu.images());
    for (std::size_t i = 0; i < free_whites.size(); ++i)
      nu[static_cast<std::size_t>(free_whites[i])] = free_blacks[static_cast<std::size_t>(rest[i])];
    const int whole = oracle::f0_of(G, nu);
    const int outer = rep.boundary ? oracle::f0_of(*rep.boundary, rest) : 0;
    CHECK(whole == rep.internal_f0 + outer);
  }
}

}  // namespace

TEST_CASE("boundary graphs") {
  std::mt19937_64 rng(11);
  const auto G = mst3();
  const auto empty = boundary_graph(G, PartialPairing::empty(3));
  REQUIRE(empty.boundary);
  CHECK(*empty.boundary == G);
  CHECK(empty.internal_f0 == 0);

  const auto full = boundary_graph(two_vertex(3), PartialPairing::full(Permutation::identity(1)));
  CHECK(!full.boundary);
  CHECK(full.internal_f0 == 3);
  CHECK(full.boundary_k == 0);

  const PartialPairing one(3, {0, -1, -1});
  const auto rep = boundary_graph(G, one);
  CHECK(rep.boundary_k == 2);
  // The three 0c-walks through white 1: color 1 closes immediately, the
  // other two leave through the boundary.
  CHECK(rep.internal_f0 == 1);
  check_boundary_split(G, one, rng);

  CHECK_THROWS(PartialPairing(3, {0, 0, -1}));
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int k = 2 + static_cast<int>(seed % 5);
    const auto R = random_graph(3 + static_cast<int>(seed % 2), k, seed);
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> partial(static_cast<std::size_t>(k), -1);
    const int m = static_cast<int>(rng() % static_cast<std::uint64_t>(k + 1));
    for (int s = 0; s < m; ++s) partial[static_cast<std::size_t>(s)] = perm[static_cast<std::size_t>(s)];
    check_boundary_split(R, PartialPairing(k, partial), rng);
  }
}

TEST_CASE("laurent polynomials") {
  LaurentPoly p;
  p.add_term(-3, 3);
  p.add_term(-4, 3);
  CHECK(p.to_string() == "3N^-3 + 3N^-4");
  CHECK(LaurentPoly::constant(1).to_string() == "1");
  CHECK(LaurentPoly().to_string() == "0");
  CHECK(p.evaluate(3) == mpq_class(3, 27) + mpq_class(3, 81));
  CHECK(p.coefficient_sum() == 6);
  CHECK(p.max_exponent() == -3);
  CHECK(p.min_exponent() == -4);
  CHECK((p - p).is_zero());
  CHECK((p - p).terms().empty());
  CHECK(LaurentPoly::from_json(p.to_json()) == p);
  const auto q = LaurentPoly::monomial(1, 2) + LaurentPoly::constant(1);
  CHECK((q * q) == LaurentPoly::monomial(2, 4) + LaurentPoly::monomial(1, 4) + LaurentPoly::constant(1));
  const auto lead = leading_order(p);
  CHECK(lead.s == -3);
  CHECK(lead.mu == 3);
  CHECK(leading_order(LaurentPoly::constant(1)).s == 0);
  CHECK_THROWS_AS(leading_order(LaurentPoly()), std::domain_error);
  CHECK_THROWS_AS(LaurentPoly().max_exponent(), std::domain_error);
}

TEST_CASE("set partitions") {
  for (int p = 1; p <= 5; ++p) CHECK(static_cast<long long>(set_partitions(p).size()) == bell_number(p));
  const auto parts = set_partitions(3);
  CHECK(parts.front() == SetPartition{{0, 1, 2}});
  CHECK(parts.back() == SetPartition{{0}, {1}, {2}});
  CHECK_THROWS(set_partitions(6));
  CHECK(set_partitions(6, 6).size() == 203);
}
