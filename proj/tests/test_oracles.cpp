#include <doctest.h>

#include <cmath>

#include "vsep/oracles.hpp"

using namespace vsep;

TEST_SUITE("oracles") {
TEST_CASE("vertex expansion by enumeration") {
  auto c5 = brute_psi(cycle_graph(5));
  CHECK(c5.value == 1.0);
  CHECK(c5.witness == VertexSet{0, 1});
  auto star = brute_psi(star_graph(3));
  CHECK(star.value == 0.5);
  CHECK(star.witness == VertexSet{1, 2});
  auto p6 = brute_psi(path_graph(6));
  CHECK(p6.numerator == 1);
  CHECK(p6.denominator == 3);
  CHECK(p6.witness == VertexSet{0, 1, 2});
  CHECK(expansion_of(path_graph(6), p6.witness).psi == p6.value);
  CHECK_THROWS_AS(brute_psi(path_graph(25)), Error);
}

TEST_CASE("edge expansion by enumeration") {
  CHECK(brute_phi(cycle_graph(4)).value == 1.0);
  CHECK(brute_phi(complete_graph(4)).value == 2.0);
  CHECK(brute_phi(path_graph(2)).value == 1.0);
  auto g = grid_graph(3, 4);
  auto phi = brute_phi(g);
  CHECK(expansion_of(g, phi.witness).phi == doctest::Approx(phi.value));
}

TEST_CASE("dense lambda_2") {
  CHECK(dense_lambda2(path_graph(2)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(dense_lambda2(path_graph(3)) == doctest::Approx(1.0).epsilon(1e-12));
  for (int n = 3; n <= 8; ++n) CHECK(dense_lambda2(complete_graph(n)) == doctest::Approx(n).epsilon(1e-12));
}

TEST_CASE("edge orbits") {
  auto c6 = edge_orbits(cycle_graph(6));
  CHECK(*std::max_element(c6.begin(), c6.end()) == 0);
  auto p4 = edge_orbits(path_graph(4));
  CHECK(p4 == std::vector<int>{0, 1, 0});
  auto k13 = edge_orbits(star_graph(3));
  CHECK(*std::max_element(k13.begin(), k13.end()) == 0);
}

TEST_CASE("lambda_2* grid oracle against closed forms") {
  const double pi = std::acos(-1.0);
  struct Case {
    Graph g;
    double want;
  };
  std::vector<Case> cases = {
      {cycle_graph(4), 1.0},
      {cycle_graph(5), 1.0 - std::cos(2 * pi / 5)},
      {cycle_graph(6), 0.5},
      {path_graph(2), 2.0},
      {complete_graph(3), 1.5},
      {complete_graph(4), 4.0 / 3.0},
      {star_graph(3), 1.0 / 3.0},
      // ends a, middle b: min(2a, a + b - sqrt(a^2 + b^2)) peaks at a = b = 1/2
      {path_graph(4), 1.0 - std::sqrt(0.5)},
  };
  for (const auto& c : cases) {
    auto o = oracle_lambda2_star(c.g);
    CHECK(o.value == doctest::Approx(c.want).epsilon(1e-7).scale(1.0));
    CHECK(o.value <= c.want + 1e-12);
  }
}

TEST_CASE("two-bin packing") {
  auto bins = pack_two_bins({3, 3, 2, 2}, 5);
  REQUIRE(bins);
  int a = 0;
  std::vector<int> sz{3, 3, 2, 2};
  for (int i = 0; i < 4; ++i) a += (*bins)[i] == 0 ? sz[i] : 0;
  CHECK(a == 5);
  CHECK(!pack_two_bins({4, 4, 1}, 4));
  CHECK(pack_two_bins({}, 0));
}

TEST_CASE("brute separators") {
  auto p5 = brute_separator(path_graph(5));
  CHECK(p5.S.size() == 1);
  CHECK(separator_from_set(path_graph(5), {2}, 2.0 / 3.0).has_value());
  CHECK(check_separator(path_graph(5), p5).empty());
  CHECK(brute_separator(complete_graph(5)).S.size() == 2);
  auto c6 = brute_separator(cycle_graph(6));
  CHECK(c6.S.size() == 2);
  CHECK(check_separator(cycle_graph(6), c6).empty());
  Graph two(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}});
  CHECK(brute_separator(two).S.empty());
}

TEST_CASE("oracle report") {
  auto r = oracle_report(cycle_graph(6));
  CHECK(r.psi.value == doctest::Approx(2.0 / 3.0));
  CHECK(r.phi.value == doctest::Approx(2.0 / 3.0));
  CHECK(r.lambda2 == doctest::Approx(1.0));
}
}
