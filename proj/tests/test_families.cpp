#include <doctest.h>

#include "oracles.hpp"
#include "tfact/families.hpp"
#include "tfact/moments.hpp"

using namespace tfact;

namespace {

// 2(D-1) Delta from the oracle F0.
long long brute_delta_scaled(const ColoredGraph& G) { return delta_scaled_from(G, oracle::brute_f0(G).f0); }

}  // namespace

TEST_CASE("two-vertex and melonic graphs") {
  CHECK(two_vertex(4).k() == 1);
  const auto m = melonic(3, {{1, 1}});
  CHECK(m.k() == 2);
  const auto rep = degree_report(m);
  CHECK(rep.omega2 == 0);
  CHECK(rep.delta() == 0);
  CHECK(graph_stats(m).is_planar3);

  const auto deep = melonic(4, {{1, 1}, {2, 2}, {3, 1}, {4, 3}});
  CHECK(deep.k() == 5);
  CHECK(degree_report(deep).omega2 == 0);
  CHECK(melonic(3, {{2, 1}, {3, 2}}).k() == 3);
  CHECK(graph_stats(melonic(3, {{2, 1}, {3, 2}, {1, 3}})).is_planar3);
  CHECK_THROWS(melonic(3, {{4, 1}}));
  CHECK_THROWS(melonic(3, {{1, 2}}));
}

TEST_CASE("cyclic graphs") {
  const auto c = cyclic(3, {1}, 3);
  CHECK(c.sigma(0).is_identity());
  CHECK(c.sigma(1) == Permutation::long_cycle(3));
  CHECK(degree_report(c).delta() == 0);
  CHECK_THROWS(cyclic(3, {1, 2}, 2));
  CHECK_THROWS(cyclic(3, {}, 2));
  CHECK_THROWS(cyclic(3, {4}, 2));

  for (int D = 3; D <= 5; ++D)
    for (int m = 1; m <= 2; ++m) {
      if (m > D / 2) continue;
      ColorSet M;
      for (int i = 1; i <= m; ++i) M.insert(i);
      for (int k = 2; k <= 4; ++k) {
        const auto G = cyclic(D, M, k);
        // Delta = m(m-1)(k-1)/2, so 2(D-1) Delta = (D-1) m (m-1) (k-1).
        CHECK(brute_delta_scaled(G) == static_cast<long long>((D - 1) * m * (m - 1) * (k - 1)));
      }
    }
}

TEST_CASE("realignment graphs") {
  const auto B = realignment(4, {1}, {2}, {3, 4}, 2);
  CHECK(B.k() == 2);
  CHECK(brute_delta_scaled(B) == 2 * 3);
  CHECK(degree_report(B).delta() == 1);
  CHECK_THROWS(realignment(4, {1}, {2}, {3, 4}, 3));
  CHECK_THROWS(realignment(4, {1}, {2, 3}, {3, 4}, 2));
  CHECK_THROWS(realignment(4, {1}, {2}, {3}, 2));
  CHECK_THROWS(realignment(4, {}, {1, 2}, {3, 4}, 2));

  const auto big = realignment(5, {1}, {2}, {3, 4, 5}, 4);
  CHECK(big.k() == 4);
  CHECK(component_count(big) == 1);

  // Copies of a realignment with the largest M3 only have tree-like optima.
  const auto R = realignment(3, {1}, {2}, {3}, 2);
  const auto rep = treelike_report(GraphFamily::of({R, R}));
  CHECK(rep.has_treelike);
  CHECK(rep.only_treelike);
}

TEST_CASE("joint realignment") {
  const auto J = joint_realignment(4, {3, 4}, {{1}, {2}});
  CHECK(J == realignment(4, {1}, {2}, {3, 4}, 2));
  CHECK_THROWS(joint_realignment(4, {3, 4}, {{1}, {1}}));
  CHECK_THROWS(joint_realignment(4, {3, 4}, {{1, 2}, {1}}));
  const auto J3 = joint_realignment(5, {4, 5}, {{1}, {2, 3}, {1}, {2, 3}});
  CHECK(J3.k() == 4);
}

TEST_CASE("counterexample graph") {
  const auto H = counterexample_graph();
  CHECK(H.D() == 6);
  CHECK(H.k() == 9);
  CHECK(!graph_stats(H).is_mst);
  CHECK(graph_stats(H).F_total == 23);
  CHECK(H.sigma(1) == Permutation::parse_cycles("(123456789)", 9));
}

TEST_CASE("random graphs") {
  CHECK(random_graph(4, 5, 99) == random_graph(4, 5, 99));
  CHECK(random_graph(3, 1, 7) == two_vertex(3));
  CHECK(!(random_graph(4, 6, 1) == random_graph(4, 6, 2)));
}

TEST_CASE("prescribed Delta construction") {
  CHECK(delta_block(3).k() == 4);
  CHECK(brute_delta_scaled(delta_block(3)) == 2 * 2);
  CHECK(brute_delta_scaled(delta_block(4)) == 2 * 3);

  const auto one = build_with_delta(4, 1);
  CHECK(one.blocks == 1);
  CHECK(one.verified);
  CHECK(*one.delta == 1);

  const auto two = build_with_delta(4, 2);
  CHECK(two.graph.k() == 4);
  CHECK(two.verified);
  CHECK(brute_delta_scaled(two.graph) == 2 * 3 * 2);
  CHECK(component_count(two.graph) == 1);

  const auto three = build_with_delta(3, 2);
  CHECK(three.verified);
  CHECK(*three.delta == 2);

  const auto four = build_with_delta(5, 4);
  CHECK(four.graph.k() == 8);
  CHECK(component_count(four.graph) == 1);

  SearchOptions tight;
  tight.k_max = 6;
  const auto flagged = build_with_delta(5, 4, tight);
  CHECK(!flagged.verified);
  CHECK(!flagged.delta);
  CHECK_THROWS(build_with_delta(2, 1));
  CHECK_THROWS(build_with_delta(4, 0));
}

TEST_CASE("generation from json") {
  using nlohmann::json;
  CHECK(generate_from_json(json::parse(R"({"kind":"two_vertex","D":3})")) == two_vertex(3));
  CHECK(generate_from_json(json::parse(R"({"kind":"counterexample"})")) == counterexample_graph());
  CHECK(generate_from_json(json::parse(R"({"kind":"cyclic","D":4,"M":[1,2],"k":3})")) == cyclic(4, {1, 2}, 3));
  CHECK(generate_from_json(json::parse(R"({"kind":"realignment","D":4,"M1":[1],"M2":[2],"M3":[3,4],"k":2})")) ==
        realignment(4, {1}, {2}, {3, 4}, 2));
  CHECK(generate_from_json(json::parse(R"({"kind":"random","D":3,"k":4,"seed":5})")) == random_graph(3, 4, 5));
  CHECK(generate_from_json(json::parse(R"({"kind":"melonic","D":3,"script":[[1,1],{"color":2,"white":2}]})")) ==
        melonic(3, {{1, 1}, {2, 2}}));
  CHECK(generate_from_json(json::parse(R"({"kind":"joint_realignment","D":4,"M3":[3,4],"links":[[1],[2]]})")) ==
        joint_realignment(4, {3, 4}, {{1}, {2}}));
  CHECK_THROWS(generate_from_json(json::parse(R"({"kind":"nope"})")));
  CHECK_THROWS(generate_from_json(json::parse(R"({"kind":"cyclic","D":4,"k":3})")));
}
