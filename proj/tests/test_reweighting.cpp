#include <doctest.h>

#include <cmath>
#include <random>

#include "vsep/oracles.hpp"
#include "vsep/reweighting.hpp"

using namespace vsep;

TEST_SUITE("reweighting") {
TEST_CASE("lambda_2 of explicit reweightings") {
  Graph k2 = path_graph(2);
  CHECK(lambda2_of(k2, from_edge_weights(k2, {1.0})) == doctest::Approx(2.0));
  Graph c4 = cycle_graph(4);
  CHECK(lambda2_of(c4, from_edge_weights(c4, std::vector<double>(4, 0.5))) == doctest::Approx(1.0));
  Graph g = grid_graph(3, 3);
  CHECK(std::abs(lambda2_of(g, from_edge_weights(g, std::vector<double>(g.m(), 0.0)))) < 1e-12);
  Reweighting broken = from_edge_weights(c4, std::vector<double>(4, 0.5));
  broken.loop[0] = 0.2;
  CHECK_THROWS_AS(lambda2_of(c4, broken), Error);
  CHECK(!check_reweighting(c4, from_edge_weights(c4, std::vector<double>(4, 0.6))).empty());
}

TEST_CASE("sparse path agrees with dense eigenvalues") {
  Graph g = grid_graph(15, 16);
  REQUIRE(g.n() > kDenseEigenLimit);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unif(0.05, 0.25);
  std::vector<double> w(g.m());
  for (double& x : w) x = unif(rng);
  Reweighting P = from_edge_weights(g, w);
  Eigen::MatrixXd L = Eigen::MatrixXd::Identity(g.n(), g.n()) - P.dense(g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L, Eigen::EigenvaluesOnly);
  CHECK(lambda2_of(g, P) == doctest::Approx(es.eigenvalues()(1)).epsilon(1e-9));
  auto eig = smallest_nontrivial_eigs(reweighted_laplacian(g, w), 4);
  for (int i = 0; i < 4; ++i) CHECK(eig.values(i) == doctest::Approx(es.eigenvalues()(i + 1)).epsilon(1e-8));
}

TEST_CASE("projection") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> gauss(0.3, 0.4);
  for (const Graph& g : {star_graph(5), grid_graph(4, 4), complete_graph(6)}) {
    std::vector<double> z(g.m());
    for (double& x : z) x = gauss(rng);
    auto w = project_edge_weights(g, z);
    CHECK(check_reweighting(g, from_edge_weights(g, w)).empty());
    // Optimality: no feasible point from a random sample is closer to z.
    double dist = 0;
    for (int e = 0; e < g.m(); ++e) dist += (w[e] - z[e]) * (w[e] - z[e]);
    for (int t = 0; t < 200; ++t) {
      std::vector<double> cand(g.m());
      for (int e = 0; e < g.m(); ++e) cand[e] = std::max(0.0, w[e] + 0.05 * (gauss(rng) - 0.3));
      cand = project_edge_weights(g, cand);
      double dc = 0;
      for (int e = 0; e < g.m(); ++e) dc += (cand[e] - z[e]) * (cand[e] - z[e]);
      CHECK(dc >= dist - 1e-9);
    }
  }
  Graph k2 = path_graph(2);
  CHECK(project_edge_weights(k2, {3.0})[0] == doctest::Approx(1.0));
  CHECK(project_edge_weights(k2, {-3.0})[0] == 0.0);
}

TEST_CASE("solver matches the oracle on small graphs") {
  for (const Graph& g : {cycle_graph(4), complete_graph(4), path_graph(4), complete_graph(3)}) {
    auto r = solve_lambda2_star(g);
    CHECK(check_reweighting(g, r.P).empty());
    CHECK(r.value == doctest::Approx(oracle_lambda2_star(g).value).epsilon(1e-3).scale(1.0));
    CHECK(r.value == doctest::Approx(lambda2_of(g, r.P)).epsilon(1e-12));
  }
  Graph star = star_graph(3);
  auto r = solve_lambda2_star(star);
  CHECK(r.value >= dense_lambda2(star) / 3 - 1e-12);
  CHECK(r.value <= trivial_gamma1(star).value());
}

TEST_CASE("trace invariants and determinism") {
  Graph g = grid_graph(4, 5);
  SolveOptions opts;
  opts.iters = 200;
  opts.seed = 17;
  auto a = solve_lambda2_star(g, opts);
  auto b = solve_lambda2_star(g, opts);
  CHECK(a.trace.values == b.trace.values);
  CHECK(a.trace.seed == 17);
  for (std::size_t i = 1; i < a.trace.best.size(); ++i) CHECK(a.trace.best[i] >= a.trace.best[i - 1]);
  CHECK(a.value >= dense_lambda2(g) / g.max_degree() - 1e-12);
  CHECK(a.trace.final_gap >= 0.0);
}

TEST_CASE("disconnected input is flagged") {
  Graph g(4, {{0, 1}, {2, 3}});
  auto r = solve_lambda2_star(g);
  CHECK(r.disconnected);
  CHECK(r.value == 0.0);
}

TEST_CASE("dual extraction") {
  Graph k2 = path_graph(2);
  auto c = extract_dual_embedding(k2, from_edge_weights(k2, {1.0}), 1);
  CHECK(c.value() == doctest::Approx(2.0));
  CHECK(std::abs(c.f(0, 0) + c.f(1, 0)) < 1e-12);
  CHECK(c.y[0] == doctest::Approx(1.0));

  Graph c4 = cycle_graph(4);
  auto r = solve_lambda2_star(c4);
  auto c2 = extract_dual_embedding(c4, r.P, 2);
  CHECK(verify(c2, c4).feasible);
  CHECK(c2.value() == doctest::Approx(1.0).epsilon(1e-3));

  std::string warning;
  auto full = extract_dual_embedding(c4, r.P, 4, &warning);
  CHECK(full.d == 3);
  CHECK(!warning.empty());

  for (const Graph& g : {path_graph(5), star_graph(4), grid_graph(3, 3), complete_graph(5)}) {
    auto s = solve_lambda2_star(g);
    auto cert = extract_dual_embedding(g, s.P, g.n());
    CHECK(verify(cert, g).feasible);
    CHECK(s.value <= cert.value() + 1e-6);
  }
}
}
