#include "vsep/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "vsep/geometry.hpp"
#include "vsep/random.hpp"
#include "vsep/spread.hpp"

namespace vsep {

using nlohmann::json;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void flatten_into(const json& node, const std::string& key, std::ostringstream& out) {
  if (node.is_object()) {
    for (const auto& [k, v] : node.items()) flatten_into(v, key.empty() ? k : key + "." + k, out);
  } else if (node.is_array()) {
    bool scalar = true;
    for (const auto& v : node) scalar = scalar && v.is_primitive();
    if (scalar) {
      out << key << '\t';
      for (std::size_t i = 0; i < node.size(); ++i) out << (i ? "," : "") << (node[i].is_string() ? node[i].get<std::string>() : node[i].dump());
      out << '\n';
    } else {
      for (std::size_t i = 0; i < node.size(); ++i) flatten_into(node[i], key + "." + std::to_string(i), out);
    }
  } else {
    out << key << '\t' << (node.is_string() ? node.get<std::string>() : node.dump()) << '\n';
  }
}

}  // namespace

json to_json(const RunConfig& c) {
  return json{{"command", c.command}, {"inputs", c.inputs},   {"seed", c.seed},       {"tol", c.tol},
              {"methods", c.methods}, {"out_dir", c.out_dir}, {"threads", c.threads}, {"format", c.format}};
}

RunConfig run_config_from_json(const json& doc) {
  try {
    RunConfig c;
    c.command = doc.at("command").get<std::string>();
    c.inputs = doc.at("inputs").get<std::vector<std::string>>();
    c.seed = doc.at("seed").get<std::uint64_t>();
    c.tol = doc.at("tol").get<double>();
    c.methods = doc.at("methods").get<std::map<std::string, std::string>>();
    c.out_dir = doc.at("out_dir").get<std::string>();
    c.threads = doc.at("threads").get<int>();
    c.format = doc.at("format").get<std::string>();
    return c;
  } catch (const json::exception& e) {
    throw Error(std::string("bad run config: ") + e.what());
  }
}

int resolve_threads(int flag) {
  if (const char* env = std::getenv("VSEP_THREADS"); env && *env) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) throw Error("VSEP_THREADS must be a positive integer");
    return static_cast<int>(v);
  }
  return std::max(1, flag);
}

void parallel_for(int count, int threads, const std::function<void(int)>& task) {
  threads = std::max(1, std::min(threads, count));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex guard;
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(guard);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

Graph bench_instance(const std::string& family, int n, int knn_k, std::uint64_t seed) {
  if (family == "delaunay") return generate_random_triangulation(n, seed).graph();
  if (family == "grid") {
    int k = std::max(2, static_cast<int>(std::lround(std::sqrt(static_cast<double>(n)))));
    return grid_graph(k, k);
  }
  if (family == "knn") return knn_graph(random_points(n, 2, seed), knn_k);
  throw Error("unknown family '" + family + "' (expected delaunay, grid or knn)");
}

BenchReport run_bench(const BenchOptions& opts, const RunConfig& config) {
  if (opts.sizes.empty()) throw Error("bench needs at least one size");
  BenchReport report;
  report.config = config;
  report.rows.resize(opts.sizes.size());
  auto one = [&](int i) {
    BenchRow& row = report.rows[i];
    row.family = opts.family;
    row.seed = derive_seed(config.seed, "bench-" + opts.family, static_cast<std::uint64_t>(opts.sizes[i]));
    RotationSystem rot;
    if (opts.family == "delaunay") {
      rot = generate_random_triangulation(opts.sizes[i], row.seed);
      row.graph = rot.graph();
    } else {
      row.graph = bench_instance(opts.family, opts.sizes[i], opts.knn_k, row.seed);
    }
    const Graph& g = row.graph;
    row.n = g.n();
    row.m = g.m();
    row.max_degree = g.max_degree();

    auto t0 = std::chrono::steady_clock::now();
    PipelineOptions popts = opts.pipeline;
    popts.seed = derive_seed(row.seed, "pipeline");
    auto result = full_pipeline(g, popts);
    row.pipeline_seconds = seconds_since(t0);
    const CutAudit& top = result.audit.front();
    row.lambda2_star = top.lambda2_star;
    row.gamma_d = top.gamma_d;
    row.gamma_1 = top.gamma_1;
    row.psi_sweep = top.psi_found;
    row.separator_size = static_cast<int>(result.separator.S.size());
    row.certificate_1 = result.certificate_1;

    if (opts.family == "delaunay") {
      t0 = std::chrono::steady_clock::now();
      auto pack = circle_pack(rot);
      row.gamma_geometric = ball_to_embedding(ballsystem_to_certificate(pack.sphere, g), g).value();
      row.geometry_seconds = seconds_since(t0);
    }

    t0 = std::chrono::steady_clock::now();
    row.spread = maximize_spread(g, 2, opts.spread_iters, derive_seed(row.seed, "spread")).value;
    row.spread_seconds = seconds_since(t0);
  };
  parallel_for(static_cast<int>(opts.sizes.size()), config.threads, one);

  std::set<int> distinct;
  for (const auto& r : report.rows) distinct.insert(r.n);
  if (distinct.size() >= 4) report.slopes = bench_slopes(report);
  return report;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error("slope fit needs matching series of at least two points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw Error("log-log fit needs positive values");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0) throw Error("log-log fit needs distinct sizes");
  return sxy / sxx;
}

BenchSlopes bench_slopes(const BenchReport& report) {
  std::set<int> distinct;
  for (const auto& r : report.rows) distinct.insert(r.n);
  if (distinct.size() < 4) throw Error("slope fitting needs at least four distinct sizes");
  std::vector<double> n, sep, gamma, spread;
  for (const auto& r : report.rows) {
    n.push_back(r.n);
    sep.push_back(r.separator_size);
    gamma.push_back(r.gamma_1);
    spread.push_back(r.spread);
  }
  return {loglog_slope(n, sep), loglog_slope(n, gamma), loglog_slope(n, spread)};
}

json to_json(const BenchRow& r) {
  json row{{"family", r.family},
           {"n", r.n},
           {"m", r.m},
           {"max_degree", r.max_degree},
           {"seed", r.seed},
           {"lambda2_star", r.lambda2_star},
           {"gamma_d", r.gamma_d},
           {"gamma_1", r.gamma_1},
           {"psi_sweep", r.psi_sweep},
           {"separator_size", r.separator_size},
           {"spread", r.spread},
           {"timings", {{"pipeline", r.pipeline_seconds}, {"geometry", r.geometry_seconds}, {"spread", r.spread_seconds}}}};
  row["gamma_geometric"] = r.gamma_geometric ? json(*r.gamma_geometric) : json(nullptr);
  return row;
}

json to_json(const BenchReport& report) {
  json doc{{"config", to_json(report.config)}, {"rows", json::array()}};
  for (const auto& r : report.rows) doc["rows"].push_back(to_json(r));
  if (report.slopes)
    doc["slopes"] = {{"separator_slope", report.slopes->separator_slope},
                     {"gamma_slope", report.slopes->gamma_slope},
                     {"spread_slope", report.slopes->spread_slope}};
  else
    doc["slopes"] = nullptr;
  return doc;
}

std::string bench_tsv(const BenchReport& report) {
  std::ostringstream out;
  out.precision(10);
  out << "# family\tn\tm\tmax_degree\tlambda2_star\tgamma_d\tgamma_1\tgamma_geometric\tpsi_sweep\tseparator_size\tspread"
         "\tpipeline_s\tgeometry_s\tspread_s\n";
  for (const auto& r : report.rows) {
    out << r.family << '\t' << r.n << '\t' << r.m << '\t' << r.max_degree << '\t' << r.lambda2_star << '\t' << r.gamma_d
        << '\t' << r.gamma_1 << '\t';
    if (r.gamma_geometric)
      out << *r.gamma_geometric;
    else
      out << "nan";
    out << '\t' << r.psi_sweep << '\t' << r.separator_size << '\t' << r.spread << '\t' << r.pipeline_seconds << '\t'
        << r.geometry_seconds << '\t' << r.spread_seconds << '\n';
  }
  if (report.slopes)
    out << "# slopes\tseparator " << report.slopes->separator_slope << "\tgamma " << report.slopes->gamma_slope
        << "\tspread " << report.slopes->spread_slope << '\n';
  return out.str();
}

json to_json(const Separator& s) {
  return json{{"S", s.S}, {"A", s.A}, {"B", s.B}, {"alpha", s.alpha}};
}

json to_json(const CutAudit& a) {
  return json{{"component_size", a.component_size}, {"lambda2", a.lambda2},     {"max_degree", a.max_degree},
              {"lambda2_star", a.lambda2_star},     {"gamma_d", a.gamma_d},     {"gamma_1", a.gamma_1},
              {"psi_found", a.psi_found},           {"cut_size", a.cut_size},   {"boundary_size", a.boundary_size},
              {"chain_holds", a.chain_holds}};
}

json to_json(const RatioWitness& w) {
  return json{{"value", w.value}, {"numerator", w.numerator}, {"denominator", w.denominator}, {"witness", w.witness}};
}

json to_json(const OracleReport& r) {
  return json{{"psi", to_json(r.psi)}, {"phi", to_json(r.phi)}, {"lambda2", r.lambda2}, {"notes", r.notes}};
}

json to_json(const VerifyReport& r) {
  json v = json::array();
  for (const auto& x : r.violations) v.push_back({{"constraint", x.constraint}, {"slack", x.slack}});
  return json{{"feasible", r.feasible},
              {"value", r.value},
              {"worst_slack", std::isfinite(r.worst_slack) ? json(r.worst_slack) : json(nullptr)},
              {"violations", v}};
}

std::string flatten_tsv(const json& doc) {
  std::ostringstream out;
  flatten_into(doc, "", out);
  return out.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path);
    out << content;
    if (!out.flush()) throw Error("cannot write " + path);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error("cannot move output into place: " + path);
  }
}

}  // namespace vsep
