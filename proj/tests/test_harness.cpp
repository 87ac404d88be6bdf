#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vsep/harness.hpp"

using namespace vsep;

TEST_SUITE("harness") {
TEST_CASE("log-log slopes") {
  std::vector<double> n{10, 20, 40, 80};
  std::vector<double> root, flat, inverse;
  for (double x : n) {
    root.push_back(3 * std::sqrt(x));
    flat.push_back(7);
    inverse.push_back(2 / x);
  }
  CHECK(loglog_slope(n, root) == doctest::Approx(0.5));
  CHECK(loglog_slope(n, flat) == doctest::Approx(0.0));
  CHECK(loglog_slope(n, inverse) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(loglog_slope({1, 1}, {2, 3}), Error);
  CHECK_THROWS_AS(loglog_slope({1, 2}, {0, 3}), Error);

  BenchReport r;
  for (int size : {10, 20, 40}) {
    BenchRow row;
    row.n = size;
    row.separator_size = 5;
    row.gamma_1 = 1;
    row.spread = 1;
    r.rows.push_back(row);
  }
  CHECK_THROWS_AS(bench_slopes(r), Error);
  r.rows.push_back(r.rows.back());
  CHECK_THROWS_AS(bench_slopes(r), Error);
  r.rows.back().n = 80;
  auto s = bench_slopes(r);
  CHECK(s.separator_slope == doctest::Approx(0.0));
  CHECK(s.gamma_slope == doctest::Approx(0.0));
}

TEST_CASE("bench rows verify and repeat") {
  BenchOptions opts;
  opts.family = "grid";
  opts.sizes = {16, 25, 36, 49};
  opts.spread_iters = 20;
  RunConfig config;
  config.command = "bench";
  config.seed = 4;
  auto a = run_bench(opts, config);
  REQUIRE(a.rows.size() == 4);
  REQUIRE(a.slopes.has_value());
  CHECK(a.slopes->spread_slope > 1.5);
  for (const auto& row : a.rows) {
    auto doc = to_json(Certificate(row.certificate_1), row.graph);
    auto back = certificate_from_json(doc, &row.graph);
    auto report = verify(back, row.graph);
    CHECK(report.feasible);
    CHECK(report.value == doctest::Approx(row.gamma_1));
    CHECK(row.separator_size > 0);
  }

  config.threads = 2;
  auto b = run_bench(opts, config);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(to_json(Certificate(a.rows[i].certificate_1), a.rows[i].graph).dump() ==
          to_json(Certificate(b.rows[i].certificate_1), b.rows[i].graph).dump());
    CHECK(a.rows[i].spread == b.rows[i].spread);
  }

  auto doc = to_json(a);
  CHECK(doc["rows"].size() == 4);
  CHECK(doc["config"]["seed"] == 4);
  CHECK(doc["slopes"].contains("separator_slope"));
  auto tsv = bench_tsv(a);
  CHECK(std::count(tsv.begin(), tsv.end(), '\n') == 6);

  opts.family = "torus";
  CHECK_THROWS_AS(run_bench(opts, config), Error);
}

TEST_CASE("delaunay bench row carries the packing certificate") {
  BenchOptions opts;
  opts.sizes = {30};
  opts.spread_iters = 5;
  auto r = run_bench(opts, RunConfig{});
  REQUIRE(r.rows[0].gamma_geometric.has_value());
  CHECK(*r.rows[0].gamma_geometric <= 8.0 / 30 * 1.05);
  CHECK_FALSE(r.slopes.has_value());
}

TEST_CASE("parallel_for covers every index and forwards failures") {
  std::vector<int> hits(50, 0);
  parallel_for(50, 3, [&](int i) { hits[i] += 1; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  CHECK_THROWS_AS(parallel_for(10, 2, [](int i) {
                    if (i == 4) throw Error("boom");
                  }),
                  Error);
}

TEST_CASE("run config documents") {
  RunConfig c;
  c.command = "separator";
  c.inputs = {"grid.el"};
  c.seed = 7;
  c.methods = {{"alpha", "0.667"}};
  c.threads = 3;
  auto back = run_config_from_json(to_json(c));
  CHECK(to_json(back) == to_json(c));
  CHECK_THROWS_AS(run_config_from_json(nlohmann::json{{"command", "x"}}), Error);

  unsetenv("VSEP_THREADS");
  CHECK(resolve_threads(0) == 1);
  CHECK(resolve_threads(4) == 4);
  setenv("VSEP_THREADS", "2", 1);
  CHECK(resolve_threads(4) == 2);
  setenv("VSEP_THREADS", "zero", 1);
  CHECK_THROWS_AS(resolve_threads(4), Error);
  unsetenv("VSEP_THREADS");
}

TEST_CASE("flat documents and atomic writes") {
  nlohmann::json doc{{"a", 1}, {"b", {{"c", "x"}, {"d", {1, 2}}}}, {"e", {{{"f", true}}}}};
  auto tsv = flatten_tsv(doc);
  CHECK(tsv.find("a\t1\n") != std::string::npos);
  CHECK(tsv.find("b.c\tx\n") != std::string::npos);
  CHECK(tsv.find("b.d\t1,2\n") != std::string::npos);
  CHECK(tsv.find("e.0.f\ttrue\n") != std::string::npos);

  auto dir = std::filesystem::temp_directory_path() / "vsep_harness_test";
  std::filesystem::create_directories(dir);
  auto path = (dir / "doc.json").string();
  write_file_atomic(path, "first");
  write_file_atomic(path, "second");
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "second");
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
  CHECK_THROWS_AS(write_file_atomic((dir / "missing" / "x").string(), "y"), Error);
  std::filesystem::remove_all(dir);
}
}
