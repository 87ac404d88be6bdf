#include <doctest.h>

#include <cmath>
#include <random>

#include "vsep/oracles.hpp"
#include "vsep/reweighting.hpp"
#include "vsep/rounding.hpp"

using namespace vsep;

namespace {

EmbeddingCertificate line_certificate(const Graph& g, const std::vector<double>& values) {
  Embedding f(g.n(), 1);
  for (int v = 0; v < g.n(); ++v) f(v, 0) = values[v];
  return certificate_for_embedding(g, f);
}

Cutter sweep_cutter() {
  return [](const Graph& h) {
    auto s = solve_lambda2_star(h, SolveOptions{200});
    return sweep_vertex_cut(h, extract_dual_embedding(h, s.P, 1)).cut;
  };
}

}  // namespace

TEST_SUITE("rounding") {
TEST_CASE("sweep on a path") {
  Graph p6 = path_graph(6);
  auto r = sweep_vertex_cut(p6, line_certificate(p6, {0, 1, 2, 3, 4, 5}));
  CHECK(r.cut.set() == VertexSet{0, 1, 2});
  CHECK(r.cut.boundary() == VertexSet{3});
  CHECK(r.cut.ratio() == doctest::Approx(1.0 / 3.0));
  CHECK(r.cut.ratio() == doctest::Approx(brute_psi(p6).value));
  CHECK(r.prefix_ratios.size() == 5);
}

TEST_CASE("sweep on the four-cycle and the star") {
  Graph c4 = cycle_graph(4);
  auto s = solve_lambda2_star(c4);
  auto r = sweep_vertex_cut(c4, extract_dual_embedding(c4, s.P, 1));
  CHECK(r.cut.ratio() == doctest::Approx(1.0));

  Graph star = star_graph(3);
  auto one_leaf = sweep_vertex_cut(star, line_certificate(star, {0, -1, 0.5, 0.6}));
  CHECK(one_leaf.cut.ratio() <= 1.0);
  CHECK(one_leaf.cut.ratio() == doctest::Approx(0.5));
  CHECK_THROWS_AS(sweep_vertex_cut(star, std::vector<double>{1, 1, 1, 1}), Error);
}

TEST_CASE("sweep ratios are recomputable") {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> gauss;
  for (const Graph& g : {grid_graph(4, 6), cycle_graph(11), complete_bipartite(3, 5)}) {
    for (int t = 0; t < 10; ++t) {
      std::vector<double> f(g.n());
      for (double& x : f) x = std::round(gauss(rng) * 2) / 2;
      auto r = sweep_vertex_cut(g, f);
      CHECK(r.cut.ratio() == doctest::Approx(expansion_of(g, r.cut.set()).psi));
      CHECK(r.cut.ratio() >= brute_psi(g).value - 1e-12);
      for (double x : r.prefix_ratios) CHECK(r.cut.ratio() <= x + 1e-12);
      for (double x : r.level_ratios) CHECK(r.cut.ratio() <= x + 1e-12);
    }
  }
}

TEST_CASE("separators from a sweep cutter") {
  Graph p9 = path_graph(9);
  auto sep = separator_from_cutter(p9, sweep_cutter());
  CHECK(check_separator(p9, sep).empty());
  CHECK(sep.S.size() <= 2);
  CHECK(sep.A.size() <= 6);
  CHECK(sep.B.size() <= 6);

  Graph grid = grid_graph(8, 8);
  auto gs = separator_from_cutter(grid, sweep_cutter());
  CHECK(check_separator(grid, gs).empty());
  CHECK(gs.A.size() <= 42);
  CHECK(gs.B.size() <= 42);
  CHECK(gs.S.size() <= 16);

  Graph split(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}});
  auto none = separator_from_cutter(split, [](const Graph&) -> VertexCut { throw Error("unused"); });
  CHECK(none.S.empty());

  auto failing = [](const Graph&) -> VertexCut { throw Error("boom"); };
  CHECK_THROWS_WITH(separator_from_cutter(p9, failing), doctest::Contains("9 vertices"));
  SeparatorOptions tight;
  tight.max_size = 0;
  tight.alpha = 0.5;
  CHECK(check_separator(p9, separator_from_cutter(p9, sweep_cutter(), tight)).empty());
}

TEST_CASE("full pipeline") {
  Graph p10 = path_graph(10);
  auto r = full_pipeline(p10);
  CHECK(check_separator(p10, r.separator).empty());
  CHECK(r.separator.S.size() == brute_separator(p10).S.size());
  REQUIRE(!r.audit.empty());
  CHECK(r.audit[0].chain_holds);
  CHECK(verify(r.certificate_1, p10).feasible);
  CHECK(verify(r.certificate_d, p10).feasible);

  Graph k6 = complete_graph(6);
  auto k = full_pipeline(k6);
  CHECK(check_separator(k6, k.separator).empty());
  CHECK(k.separator.S.size() >= brute_separator(k6).S.size());
  CHECK(k.separator.S.size() <= brute_separator(k6).S.size() + 1);

  Graph grid = grid_graph(10, 10);
  PipelineOptions opts;
  opts.method = DimredMethod::partition;
  opts.trials = 4;
  auto gr = full_pipeline(grid, opts);
  CHECK(check_separator(grid, gr.separator).empty());
  CHECK(gr.separator.S.size() <= 20);
  for (const auto& a : gr.audit) CHECK(a.chain_holds);

  CHECK(parse_dimred_method("coordinate") == DimredMethod::coordinate);
  CHECK_THROWS_AS(parse_dimred_method("magic"), Error);
}
}
