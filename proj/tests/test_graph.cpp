#include <doctest.h>

#include <random>

#include "vsep/graph.hpp"

using namespace vsep;

TEST_SUITE("graph") {
TEST_CASE("edge list parsing") {
  auto p3 = parse_edge_list_string("0 1\n1 2\n");
  CHECK(p3.graph.n() == 3);
  CHECK(p3.graph.m() == 2);
  CHECK_THROWS_WITH_AS(parse_edge_list_string("0 0\n"), doctest::Contains("self-loop"), ParseError);
  CHECK_THROWS_AS(parse_edge_list_string("0 1\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_edge_list_string("0 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_edge_list_string("0 -1\n"), ParseError);
  try {
    parse_edge_list_string("# header\n0 1\n\n2 x\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  auto sparse = parse_edge_list_string("10 30 # comment\n30 20\n");
  CHECK(sparse.graph.n() == 3);
  CHECK(sparse.labels.label(2) == 30);
  CHECK(sparse.graph.has_edge(0, 2));
  CHECK_THROWS_WITH(load_edge_list("/nonexistent/file.el"), doctest::Contains("no such input"));
}

TEST_CASE("canonical form and hash") {
  Graph a(3, {{2, 1}, {0, 1}});
  Graph b(3, {{0, 1}, {1, 2}});
  CHECK(a == b);
  CHECK(a.canonical_text() == "3 2\n0 1\n1 2\n");
  CHECK(a.hash() == b.hash());
  CHECK(a.hash().size() == 16);
  CHECK(a.hash() != cycle_graph(3).hash());
}

TEST_CASE("laplacian") {
  auto L2 = laplacian(path_graph(2));
  CHECK(L2(0, 0) == 1);
  CHECK(L2(0, 1) == -1);
  auto L3 = laplacian(path_graph(3));
  Eigen::MatrixXd want(3, 3);
  want << 1, -1, 0, -1, 2, -1, 0, -1, 1;
  CHECK((L3 - want).norm() == 0.0);
  auto K3 = laplacian(complete_graph(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(K3(i, j) == (i == j ? 2.0 : -1.0));

  std::mt19937_64 rng(1);
  std::normal_distribution<double> gauss;
  for (const Graph& g : {grid_graph(3, 4), cycle_graph(7), star_graph(5), complete_graph(6)}) {
    Eigen::MatrixXd L = laplacian(g);
    CHECK(L.rowwise().sum().cwiseAbs().maxCoeff() == 0.0);
    for (int t = 0; t < 100; ++t) {
      Eigen::VectorXd x(g.n());
      for (int i = 0; i < g.n(); ++i) x(i) = gauss(rng);
      double quad = x.dot(L * x), direct = 0;
      for (const Edge& e : g.edges()) direct += (x(e.u) - x(e.v)) * (x(e.u) - x(e.v));
      CHECK(std::abs(quad - direct) <= 1e-10 * std::max(1.0, direct));
    }
  }
}

TEST_CASE("vertex boundary") {
  Graph star = star_graph(3);
  CHECK(vertex_boundary(star, std::vector<Vertex>{1, 2}) == VertexSet{0});
  Graph c5 = cycle_graph(5);
  CHECK(vertex_boundary(c5, std::vector<Vertex>{0, 1, 2, 3, 4}).empty());
  CHECK(vertex_boundary(c5, std::vector<Vertex>{0, 2}).size() == 3);
  CHECK_THROWS_AS(vertex_boundary(c5, std::vector<Vertex>{7}), Error);
}

TEST_CASE("expansion of a set") {
  auto c4 = expansion_of(cycle_graph(4), std::vector<Vertex>{0, 1});
  CHECK(c4.psi == 1.0);
  CHECK(c4.phi == 1.0);
  CHECK(expansion_of(star_graph(3), std::vector<Vertex>{1, 2}).psi == 0.5);
  CHECK(expansion_of(path_graph(6), std::vector<Vertex>{0, 1, 2}).psi == doctest::Approx(1.0 / 3));
  CHECK_THROWS_AS(expansion_of(path_graph(6), std::vector<Vertex>{}), Error);
  CHECK_THROWS_AS(expansion_of(path_graph(6), std::vector<Vertex>{0, 1, 2, 3}), Error);
}

TEST_CASE("vertex cut recomputes its boundary") {
  Graph g = grid_graph(4, 4);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    VertexSet S;
    for (Vertex v = 0; v < g.n(); ++v)
      if (rng() % 3 == 0 && static_cast<int>(S.size()) < g.n() / 2) S.push_back(v);
    if (S.empty()) continue;
    VertexCut cut(g, S);
    VertexSet fresh;
    for (Vertex v = 0; v < g.n(); ++v) {
      if (std::binary_search(S.begin(), S.end(), v)) continue;
      for (Vertex w : g.neighbors(v))
        if (std::binary_search(S.begin(), S.end(), w)) {
          fresh.push_back(v);
          break;
        }
    }
    CHECK(cut.boundary() == fresh);
  }
}

TEST_CASE("separator checks") {
  Graph p5 = path_graph(5);
  Separator ok{{2}, {0, 1}, {3, 4}};
  CHECK(check_separator(p5, ok).empty());
  Separator edge{{}, {0, 1, 2}, {3, 4}};
  CHECK(!check_separator(p5, edge).empty());
  Separator heavy{{4}, {0, 1, 2, 3}, {}};
  CHECK(!check_separator(p5, heavy).empty());
  CHECK(balance_cap(9, 2.0 / 3.0) == 6);
}

TEST_CASE("components and induced subgraphs") {
  Graph g(6, {{0, 1}, {1, 2}, {3, 4}});
  auto [label, count] = g.components();
  CHECK(count == 3);
  CHECK(label[0] == label[2]);
  CHECK(label[3] != label[0]);
  CHECK(!g.connected());
  Graph h = g.induced(std::vector<Vertex>{1, 2, 3});
  CHECK(h.n() == 3);
  CHECK(h.m() == 1);
  CHECK(h.has_edge(0, 1));
}

TEST_CASE("generators") {
  CHECK(grid_graph(3, 4).m() == 17);
  CHECK(complete_bipartite(3, 3).m() == 9);
  CHECK(star_graph(4).max_degree() == 4);
  CHECK(cycle_graph(6).m() == 6);
}
}
