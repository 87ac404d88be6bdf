#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vsep/certificates.hpp"
#include "vsep/graph.hpp"
#include "vsep/oracles.hpp"
#include "vsep/rounding.hpp"

namespace vsep {

/// Everything needed to rerun a command; embedded in every output document.
struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::uint64_t seed = 1;
  double tol = kCertificateTolerance;
  std::map<std::string, std::string> methods;  // subcommand options, as given
  std::string out_dir;
  int threads = 1;
  std::string format = "json";
};

nlohmann::json to_json(const RunConfig& c);
RunConfig run_config_from_json(const nlohmann::json& doc);

/// Thread count: VSEP_THREADS wins over the flag; at least 1.
int resolve_threads(int flag);

/// Calls task(i) for i in [0, count) on `threads` workers. The first
/// exception is rethrown after all workers stop.
void parallel_for(int count, int threads, const std::function<void(int)>& task);

struct BenchRow {
  std::string family;
  int n = 0;
  int m = 0;
  int max_degree = 0;
  std::uint64_t seed = 0;
  double lambda2_star = 0.0;
  double gamma_d = 0.0;
  double gamma_1 = 0.0;
  std::optional<double> gamma_geometric;  // packing certificate, delaunay only
  double psi_sweep = 0.0;
  int separator_size = 0;
  double spread = 0.0;  // two-norm spread lower bound
  double pipeline_seconds = 0.0;
  double geometry_seconds = 0.0;
  double spread_seconds = 0.0;
  Graph graph;
  EmbeddingCertificate certificate_1;
};

struct BenchSlopes {
  double separator_slope = 0.0;
  double gamma_slope = 0.0;
  double spread_slope = 0.0;
};

struct BenchReport {
  RunConfig config;
  std::vector<BenchRow> rows;
  std::optional<BenchSlopes> slopes;
};

struct BenchOptions {
  std::string family = "delaunay";  // delaunay | grid | knn
  std::vector<int> sizes;
  int knn_k = 6;
  int spread_iters = 60;
  PipelineOptions pipeline;
};

/// Instance generator shared by the bench and the CLI. Grid sizes round to
/// the nearest square.
Graph bench_instance(const std::string& family, int n, int knn_k, std::uint64_t seed);

/// One row per size; rows run in parallel, each with its own derived seed.
BenchReport run_bench(const BenchOptions& opts, const RunConfig& config);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Slopes of separator size, γ̂^(1) and spread against n. Needs at least
/// four distinct sizes.
BenchSlopes bench_slopes(const BenchReport& report);

nlohmann::json to_json(const BenchRow& row);
nlohmann::json to_json(const BenchReport& report);
/// Column document: one header line, one tab-separated line per row.
std::string bench_tsv(const BenchReport& report);

nlohmann::json to_json(const Separator& s);
nlohmann::json to_json(const CutAudit& a);
nlohmann::json to_json(const RatioWitness& w);
nlohmann::json to_json(const OracleReport& r);
nlohmann::json to_json(const VerifyReport& r);

/// key<TAB>value lines for every scalar leaf, keys joined with '.'.
std::string flatten_tsv(const nlohmann::json& doc);

/// Writes through a temporary file and a rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace vsep
