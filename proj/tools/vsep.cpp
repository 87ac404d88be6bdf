#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vsep/certificates.hpp"
#include "vsep/dimred.hpp"
#include "vsep/geometry.hpp"
#include "vsep/graph.hpp"
#include "vsep/harness.hpp"
#include "vsep/oracles.hpp"
#include "vsep/random.hpp"
#include "vsep/reweighting.hpp"
#include "vsep/rotation.hpp"
#include "vsep/rounding.hpp"
#include "vsep/spread.hpp"
#include "vsep/transforms.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace vsep;

namespace {

struct InputError : Error {
  using Error::Error;
};

// What a subcommand hands back to the driver.
struct Outcome {
  json result = json::object();
  std::map<std::string, std::string> artifacts;  // file name -> content
  bool verified = true;
};

struct Globals {
  std::uint64_t seed = 1;
  double tol = kCertificateTolerance;
  std::string out;
  int threads = 1;
  std::string format = "json";
};

void require_file(const std::string& path) {
  if (!fs::is_regular_file(path)) throw InputError("no such input: " + path);
}

LoadedGraph read_graph(const std::string& path) {
  require_file(path);
  return load_edge_list(path);
}

LoadedRotation read_rotation(const std::string& path) {
  require_file(path);
  return load_rotation(path);
}

json read_json(const std::string& path) {
  require_file(path);
  std::ifstream in(path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::vector<long long> labeled(const VertexSet& ids, const LabelMap& labels) {
  std::vector<long long> out;
  for (Vertex v : ids) out.push_back(labels.label(v));
  std::sort(out.begin(), out.end());
  return out;
}

json labeled_separator(const Separator& s, const LabelMap& labels) {
  return json{{"S", labeled(s.S, labels)}, {"A", labeled(s.A, labels)}, {"B", labeled(s.B, labels)}, {"alpha", s.alpha}};
}

std::string edge_list_text(const Graph& g, const LabelMap* labels = nullptr) {
  std::ostringstream out;
  write_edge_list(out, g, labels);
  return out.str();
}

std::string rotation_text(const RotationSystem& r) {
  std::ostringstream out;
  write_rotation(out, r);
  return out.str();
}

std::string document_text(const json& doc) { return doc.dump(2) + "\n"; }

json rotation_summary(const RotationSystem& r) {
  return json{{"n", r.graph().n()},
              {"m", r.graph().m()},
              {"faces", r.face_count()},
              {"euler_genus", r.euler_genus()},
              {"max_degree", r.graph().max_degree()}};
}

PipelineOptions pipeline_options(int dim, const std::string& method, int trials, int iters, double alpha,
                                 std::uint64_t seed) {
  PipelineOptions o;
  o.dim = dim;
  o.method = parse_dimred_method(method);
  o.trials = trials;
  o.iters = iters;
  o.alpha = alpha;
  o.seed = seed;
  return o;
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> sizes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size() || v <= 0) throw std::invalid_argument(item);
      sizes.push_back(v);
    } catch (const std::exception&) {
      throw InputError("bad size list entry '" + item + "'");
    }
  }
  if (sizes.empty()) throw InputError("empty size list");
  return sizes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vertex separators from reweighted spectral certificates"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Root seed");
  app.add_option("--tol", g.tol, "Certificate verification tolerance");
  app.add_option("--out", g.out, "Output directory for documents and artifacts");
  app.add_option("--threads", g.threads, "Worker threads (VSEP_THREADS overrides)");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "tsv"}));

  RunConfig config;
  std::function<Outcome()> action;
  auto note = [&](const std::string& key, const auto& value) {
    if constexpr (std::is_arithmetic_v<std::decay_t<decltype(value)>>)
      config.methods[key] = json(value).dump();
    else
      config.methods[key] = value;
  };

  // oracle
  std::string graph_path;
  auto* oracle = app.add_subcommand("oracle", "Exact expansion, separator and lambda2* oracles for small graphs");
  oracle->add_option("graph", graph_path, "Edge-list file")->required();
  oracle->callback([&] {
    config.inputs = {graph_path};
    action = [&] {
      auto in = read_graph(graph_path);
      const Graph& G = in.graph;
      Outcome o;
      o.result["report"] = to_json(oracle_report(G));
      if (G.n() <= kBruteSeparatorCap) o.result["separator"] = labeled_separator(brute_separator(G), in.labels);
      try {
        auto star = oracle_lambda2_star(G);
        o.result["lambda2_star"] = {{"value", star.value}, {"orbits", star.orbit_count}};
      } catch (const Error& e) {
        o.result["lambda2_star"] = {{"skipped", e.what()}};
      }
      return o;
    };
  });

  // lambda2star
  int iters = 0, dim = 2;
  std::string emit_certificate;
  auto* l2 = app.add_subcommand("lambda2star", "Optimal reweighting lower bound and its dual certificate");
  l2->add_option("graph", graph_path, "Edge-list file")->required();
  l2->add_option("--iters", iters, "Solver iterations (0: automatic)");
  l2->add_option("--dim", dim, "Certificate dimension");
  l2->add_option("--emit-certificate", emit_certificate, "Write the certificate to this path");
  l2->callback([&] {
    config.inputs = {graph_path};
    note("iters", iters);
    note("dim", dim);
    if (!emit_certificate.empty()) note("emit-certificate", emit_certificate);
    action = [&] {
      auto in = read_graph(graph_path);
      const Graph& G = in.graph;
      SolveOptions opts;
      opts.iters = iters;
      auto sol = solve_lambda2_star(G, opts);
      Outcome o;
      o.result["lambda2_star"] = sol.value;
      o.result["iterations"] = sol.trace.iterations;
      o.result["stalled"] = sol.trace.stalled;
      o.result["final_gap"] = sol.trace.final_gap;
      o.result["status"] = sol.trace.status;
      std::string warning;
      auto cert = extract_dual_embedding(G, sol.P, dim, &warning);
      if (!warning.empty()) o.result["warning"] = warning;
      auto report = verify(cert, G, g.tol);
      o.result["verify"] = to_json(report);
      o.verified = report.feasible;
      std::string doc = document_text(to_json(Certificate(cert), G, g.tol));
      if (!emit_certificate.empty()) write_file_atomic(emit_certificate, doc);
      o.artifacts["certificate.json"] = doc;
      return o;
    };
  });

  // partition / separator
  std::string method = "gaussian";
  int trials = 16;
  double alpha = 2.0 / 3.0;
  auto* part = app.add_subcommand("partition", "One spectral cut: S is the cut boundary, A the cut side");
  part->add_option("graph", graph_path, "Edge-list file")->required();
  part->add_option("--dim", dim, "Certificate dimension");
  part->add_option("--dimred", method, "gaussian | coordinate | partition");
  part->add_option("--trials", trials, "Dimension-reduction trials");
  part->add_option("--iters", iters, "Solver iterations (0: automatic)");
  part->callback([&] {
    config.inputs = {graph_path};
    note("dim", dim);
    note("dimred", method);
    note("trials", trials);
    note("iters", iters);
    action = [&] {
      auto in = read_graph(graph_path);
      const Graph& G = in.graph;
      auto opts = pipeline_options(dim, method, trials, iters, alpha, derive_seed(g.seed, "partition"));
      auto cut = spectral_cut(G, opts, opts.seed);
      Separator sep;
      sep.A = cut.cut.set();
      sep.S = cut.cut.boundary();
      std::vector<char> used(G.n(), 0);
      for (Vertex v : sep.A) used[v] = 1;
      for (Vertex v : sep.S) used[v] = 1;
      for (Vertex v = 0; v < G.n(); ++v)
        if (!used[v]) sep.B.push_back(v);
      Outcome o;
      o.result["partition"] = labeled_separator(sep, in.labels);
      o.result["ratio"] = cut.cut.ratio();
      o.result["sweep_family"] = cut.sweep.family == 0 ? "prefix" : "level";
      o.result["audit"] = to_json(cut.audit);
      auto report = verify(cut.certificate_1, G, g.tol);
      o.result["verify"] = to_json(report);
      o.verified = report.feasible && cut.audit.chain_holds;
      o.artifacts["certificate_d.json"] = document_text(to_json(Certificate(cut.certificate_d), G, g.tol));
      o.artifacts["certificate_1.json"] = document_text(to_json(Certificate(cut.certificate_1), G, g.tol));
      return o;
    };
  });

  auto* sepc = app.add_subcommand("separator", "Balanced vertex separator by recursive spectral cuts");
  sepc->add_option("graph", graph_path, "Edge-list file")->required();
  sepc->add_option("--alpha", alpha, "Balance bound on each side");
  sepc->add_option("--dim", dim, "Certificate dimension");
  sepc->add_option("--dimred", method, "gaussian | coordinate | partition");
  sepc->add_option("--trials", trials, "Dimension-reduction trials");
  sepc->add_option("--iters", iters, "Solver iterations (0: automatic)");
  sepc->callback([&] {
    config.inputs = {graph_path};
    note("alpha", alpha);
    note("dim", dim);
    note("dimred", method);
    note("trials", trials);
    note("iters", iters);
    action = [&] {
      auto in = read_graph(graph_path);
      const Graph& G = in.graph;
      auto opts = pipeline_options(dim, method, trials, iters, alpha, derive_seed(g.seed, "separator"));
      auto res = full_pipeline(G, opts);
      Outcome o;
      std::string problem = check_separator(G, res.separator);
      o.result["separator"] = labeled_separator(res.separator, in.labels);
      o.result["size"] = res.separator.S.size();
      if (!problem.empty()) o.result["problem"] = problem;
      json audit = json::array();
      bool chain = true;
      for (const auto& a : res.audit) {
        audit.push_back(to_json(a));
        chain = chain && a.chain_holds;
      }
      o.result["audit"] = audit;
      auto rd = verify(res.certificate_d, G, g.tol);
      auto r1 = verify(res.certificate_1, G, g.tol);
      o.result["verify"] = {{"certificate_d", to_json(rd)}, {"certificate_1", to_json(r1)}};
      o.verified = problem.empty() && chain && rd.feasible && r1.feasible;
      o.artifacts["separator.json"] = document_text(labeled_separator(res.separator, in.labels));
      o.artifacts["audit.json"] = document_text(audit);
      o.artifacts["certificate_d.json"] = document_text(to_json(Certificate(res.certificate_d), G, g.tol));
      o.artifacts["certificate_1.json"] = document_text(to_json(Certificate(res.certificate_1), G, g.tol));
      return o;
    };
  });

  // dimred
  std::string cert_path;
  auto* dr = app.add_subcommand("dimred", "Reduce an embedding certificate to one dimension");
  dr->add_option("certificate", cert_path, "Certificate document")->required();
  dr->add_option("--graph", graph_path, "Edge-list file the certificate belongs to")->required();
  dr->add_option("--method", method, "gaussian | coordinate | partition");
  dr->add_option("--trials", trials, "Trials for randomized methods");
  dr->callback([&] {
    config.inputs = {cert_path, graph_path};
    note("method", method);
    note("trials", trials);
    action = [&] {
      auto in = read_graph(graph_path);
      const Graph& G = in.graph;
      auto doc = read_json(cert_path);
      auto any = certificate_from_json(doc, &G);
      const auto* cert = std::get_if<EmbeddingCertificate>(&any);
      if (!cert) throw InputError("dimred needs an embedding (gamma) certificate");
      std::uint64_t seed = derive_seed(g.seed, "dimred");
      EmbeddingCertificate out;
      switch (parse_dimred_method(method)) {
        case DimredMethod::gaussian: out = gaussian_project(*cert, G, trials, seed); break;
        case DimredMethod::coordinate: out = best_coordinate(*cert, G); break;
        case DimredMethod::partition: out = partition_dimred(*cert, G, seed, trials); break;
      }
      Outcome o;
      o.result["input_value"] = cert->value();
      o.result["input_dim"] = cert->d;
      o.result["value"] = out.value();
      auto report = verify(out, G, g.tol);
      o.result["verify"] = to_json(report);
      o.verified = report.feasible;
      o.artifacts["certificate_1.json"] = document_text(to_json(Certificate(out), G, g.tol));
      return o;
    };
  });

  // transform
  std::string op, rotation_path;
  int rounds = 1;
  auto* tr = app.add_subcommand("transform", "Genus-preserving rotation-system transforms");
  tr->add_option("rotation", rotation_path, "Rotation-system file")->required();
  tr->add_option("--op", op, "hexsub | degree-reduce | triangulate")
      ->required()
      ->check(CLI::IsMember({"hexsub", "degree-reduce", "triangulate"}));
  tr->add_option("--k", rounds, "Rounds of hexagonal subdivision");
  tr->callback([&] {
    config.inputs = {rotation_path};
    note("op", op);
    note("k", rounds);
    action = [&] {
      auto in = read_rotation(rotation_path);
      const RotationSystem& r = in.rotation;
      Outcome o;
      RotationSystem out;
      if (op == "hexsub") {
        out = hexagonal_subdivide(r, rounds);
      } else if (op == "degree-reduce") {
        auto red = degree_reduce(r);
        out = red.rotation;
        std::string problem = check_minor_map(r.graph(), out.graph(), red.map);
        o.result["minor_map"] = {{"patch_size", red.map.patch_size}, {"depth", red.map.depth}, {"valid", problem.empty()}};
        o.artifacts["map.json"] = document_text(json{{"project", red.map.project},
                                                     {"patch_size", red.map.patch_size},
                                                     {"depth", red.map.depth}});
        o.verified = problem.empty();
      } else {
        out = triangulate(r);
        o.verified = out.is_triangulation();
      }
      o.result["input"] = rotation_summary(r);
      o.result["output"] = rotation_summary(out);
      o.verified = o.verified && out.euler_genus() == r.euler_genus();
      o.artifacts["rotation.txt"] = rotation_text(out);
      return o;
    };
  });

  // reduce-expansion
  int copies_flag = 0;
  auto* rx = app.add_subcommand("reduce-expansion", "Vertex-expansion to edge-expansion instance reduction");
  rx->add_option("graph", graph_path, "Edge-list file")->required();
  rx->add_option("--k", copies_flag, "Copies per vertex (0: n^2+n+1)");
  rx->callback([&] {
    config.inputs = {graph_path};
    note("k", copies_flag);
    action = [&] {
      auto in = read_graph(graph_path);
      int copies = copies_flag > 0 ? copies_flag : expansion_reduction_bound(in.graph.n());
      auto red = expansion_reduction(in.graph, copies);
      Outcome o;
      o.result = {{"k", red.k}, {"n", red.graph.n()}, {"m", red.graph.m()}};
      if (!red.warning.empty()) o.result["warning"] = red.warning;
      o.artifacts["reduced.el"] = edge_list_text(red.graph);
      return o;
    };
  });

  // generate
  std::string gen_family = "delaunay";
  int n = 100, dgen = 2, gen_k = 1;
  auto* gen = app.add_subcommand("generate", "Random instances");
  gen->add_option("--family", gen_family, "delaunay | knn | ballsys")
      ->check(CLI::IsMember({"delaunay", "knn", "ballsys"}));
  gen->add_option("--n", n, "Vertices or balls");
  gen->add_option("--k", gen_k, "Neighbors (knn) or layers (ballsys)");
  gen->add_option("--d", dgen, "Ambient dimension (knn, ballsys)");
  gen->callback([&] {
    note("family", gen_family);
    note("n", n);
    note("k", gen_k);
    note("d", dgen);
    action = [&] {
      std::uint64_t seed = derive_seed(g.seed, "generate-" + gen_family);
      Outcome o;
      Graph G;
      if (gen_family == "delaunay") {
        auto r = generate_random_triangulation(n, seed);
        G = r.graph();
        o.artifacts["rotation.txt"] = rotation_text(r);
      } else if (gen_family == "knn") {
        G = knn_graph(random_points(n, dgen, seed), gen_k);
      } else {
        auto balls = generate_kply_disks(n, gen_k, seed, dgen);
        G = intersection_graph(balls);
        auto p = ply(balls, 20000, derive_seed(seed, "ply"));
        o.result["ply"] = {{"value", p.ply}, {"exact", p.exact}};
        o.artifacts["balls.json"] = document_text(to_json(balls));
      }
      o.result["n"] = G.n();
      o.result["m"] = G.m();
      o.result["max_degree"] = G.max_degree();
      o.result["connected"] = G.connected();
      o.artifacts["graph.el"] = edge_list_text(G);
      return o;
    };
  });

  // pack
  auto* pk = app.add_subcommand("pack", "Circle packing of a planar triangulation and its certificate");
  pk->add_option("rotation", rotation_path, "Rotation-system file")->required();
  pk->callback([&] {
    config.inputs = {rotation_path};
    action = [&] {
      auto in = read_rotation(rotation_path);
      const Graph& G = in.rotation.graph();
      auto pack = circle_pack(in.rotation);
      auto ball = ballsystem_to_certificate(pack.sphere, G);
      auto emb = ball_to_embedding(ball, G);
      Outcome o;
      o.result["residual"] = pack.residual;
      o.result["sweeps"] = pack.sweeps;
      o.result["ply"] = ply(pack.sphere).ply;
      o.result["center_offset"] = center_offset(pack.sphere);
      o.result["ball_value"] = ball.value();
      o.result["gamma_value"] = emb.value();
      o.result["gamma_bound"] = 8.0 / G.n();
      auto rb = verify(ball, G, g.tol);
      auto re = verify(emb, G, g.tol);
      o.result["verify"] = {{"ball", to_json(rb)}, {"gamma", to_json(re)}};
      o.verified = rb.feasible && re.feasible;
      o.artifacts["plane.json"] = document_text(to_json(pack.plane));
      o.artifacts["sphere.json"] = document_text(to_json(pack.sphere));
      o.artifacts["ball_certificate.json"] = document_text(to_json(Certificate(ball), G, g.tol));
      o.artifacts["certificate.json"] = document_text(to_json(Certificate(emb), G, g.tol));
      return o;
    };
  });

  // certify-geometry
  std::string balls_path;
  auto* cg = app.add_subcommand("certify-geometry", "Ball certificate of a graph realized by a ball system");
  cg->add_option("ballsys", balls_path, "Ball-system document")->required();
  cg->add_option("graph", graph_path, "Edge-list file")->required();
  cg->callback([&] {
    config.inputs = {balls_path, graph_path};
    action = [&] {
      auto balls = ball_system_from_json(read_json(balls_path));
      auto in = read_graph(graph_path);
      // Labels index balls; balls without edges are absent from the edge list.
      std::vector<Edge> edges;
      for (const Edge& e : in.graph.edges()) {
        long long a = in.labels.label(e.u), b = in.labels.label(e.v);
        if (a >= balls.size() || b >= balls.size()) throw InputError("graph vertex has no ball");
        edges.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
      }
      const Graph G(balls.size(), edges);
      auto p = ply(balls, 20000, derive_seed(g.seed, "ply"));
      auto caps = balls.kind == BallKind::euclidean ? lift_to_sphere(balls) : balls;
      caps = sphere_normalize(caps);
      auto ball = ballsystem_to_certificate(caps, G);
      auto emb = ball_to_embedding(ball, G);
      Outcome o;
      o.result["ply"] = {{"value", p.ply}, {"exact", p.exact}};
      o.result["ball_value"] = ball.value();
      o.result["ball_bound"] = kply_ball_bound(balls.d, p.ply, G.n());
      o.result["gamma_value"] = emb.value();
      o.result["gamma_bound"] = 2.0 * kply_ball_bound(balls.d, p.ply, G.n());
      auto rb = verify(ball, G, g.tol);
      o.result["verify"] = to_json(rb);
      o.verified = rb.feasible;
      o.artifacts["ball_certificate.json"] = document_text(to_json(Certificate(ball), G, g.tol));
      o.artifacts["certificate.json"] = document_text(to_json(Certificate(emb), G, g.tol));
      return o;
    };
  });

  // spread
  int p = 2, spread_steps = 0;
  auto* sp = app.add_subcommand("spread", "Spread lower bound by projected supergradient ascent");
  sp->add_option("graph", graph_path, "Edge-list file")->required();
  sp->add_option("--p", p, "Weight norm")->check(CLI::IsMember({1, 2}));
  sp->add_option("--iters", spread_steps, "Ascent steps (0: 200)");
  sp->callback([&] {
    config.inputs = {graph_path};
    note("p", p);
    note("iters", spread_steps);
    action = [&] {
      auto in = read_graph(graph_path);
      const Graph& G = in.graph;
      auto w = maximize_spread(G, p, spread_steps, derive_seed(g.seed, "spread"));
      auto cert = spread_certificate_from_weights(G, w, derive_seed(g.seed, "spread-certificate"));
      auto chain = spread_chain_check(G, w, cert);
      Outcome o;
      o.result["spread"] = w.value;
      o.result["weights"] = w.omega;
      o.result["chain"] = {{"spread_sq_over_n2", chain.spread_sq_over_n2},
                           {"squared_spread", chain.squared_spread},
                           {"q2_value", chain.q2_value}};
      auto report = verify(cert, G, g.tol);
      o.result["verify"] = to_json(report);
      o.verified = report.feasible && chain.squared_spread >= chain.spread_sq_over_n2 * (1 - 1e-12);
      o.artifacts["certificate.json"] = document_text(to_json(Certificate(cert), G, g.tol));
      return o;
    };
  });

  // bench
  std::string sizes_text = "50,100,200,400", family = "delaunay";
  int knn_k = 6, spread_iters = 60;
  auto* bn = app.add_subcommand("bench", "Scaling benchmark with fitted log-log slopes");
  bn->add_option("--family", family, "delaunay | grid | knn")->check(CLI::IsMember({"delaunay", "grid", "knn"}));
  bn->add_option("--sizes", sizes_text, "Comma-separated instance sizes");
  bn->add_option("--knn-k", knn_k, "Neighbors for the knn family");
  bn->add_option("--spread-iters", spread_iters, "Spread ascent steps per row");
  bn->callback([&] {
    note("family", family);
    note("sizes", sizes_text);
    note("knn-k", knn_k);
    note("spread-iters", spread_iters);
    action = [&] {
      BenchOptions opts;
      opts.family = family;
      opts.sizes = parse_sizes(sizes_text);
      opts.knn_k = knn_k;
      opts.spread_iters = spread_iters;
      auto report = run_bench(opts, config);
      Outcome o;
      o.result = to_json(report);
      o.result.erase("config");
      for (const auto& row : report.rows) {
        std::string stem = "row_" + std::to_string(row.n);
        auto check = verify(row.certificate_1, row.graph, g.tol);
        o.verified = o.verified && check.feasible;
        o.artifacts[stem + "_graph.el"] = edge_list_text(row.graph);
        o.artifacts[stem + "_certificate.json"] = document_text(to_json(Certificate(row.certificate_1), row.graph, g.tol));
      }
      o.artifacts["bench.tsv"] = bench_tsv(report);
      return o;
    };
  });

  // verify
  auto* vf = app.add_subcommand("verify", "Check a certificate document against a graph");
  vf->add_option("certificate", cert_path, "Certificate document")->required();
  vf->add_option("graph", graph_path, "Edge-list file")->required();
  vf->callback([&] {
    config.inputs = {cert_path, graph_path};
    action = [&] {
      auto in = read_graph(graph_path);
      auto doc = read_json(cert_path);
      auto cert = certificate_from_json(doc, &in.graph);
      auto report = verify(cert, in.graph, g.tol);
      Outcome o;
      o.result = to_json(report);
      o.verified = report.feasible;
      return o;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    config.command = app.get_subcommands().front()->get_name();
    config.seed = g.seed;
    config.tol = g.tol;
    config.out_dir = g.out;
    config.threads = resolve_threads(g.threads);
    config.format = g.format;

    Outcome o = action();
    json doc{{"config", to_json(config)}, {"result", o.result}, {"verified", o.verified}};
    if (!g.out.empty()) {
      fs::create_directories(g.out);
      json files = json::array();
      for (const auto& [name, content] : o.artifacts) {
        write_file_atomic((fs::path(g.out) / name).string(), content);
        files.push_back(name);
      }
      doc["artifacts"] = files;
      write_file_atomic((fs::path(g.out) / "report.json").string(), document_text(doc));
    } else if (g.format == "tsv") {
      json names = json::array();
      for (const auto& entry : o.artifacts) names.push_back(entry.first);
      doc["artifacts"] = names;
    } else {
      doc["artifacts"] = o.artifacts;
    }
    if (g.format == "tsv")
      std::cout << (config.command == "bench" && o.artifacts.count("bench.tsv") ? o.artifacts["bench.tsv"]
                                                                                 : flatten_tsv(doc));
    else
      std::cout << document_text(doc);
    if (!o.verified) {
      std::cerr << "vsep: internal verification failed\n";
      return 1;
    }
    return 0;
  } catch (const InputError& e) {
    std::cerr << "vsep: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "vsep: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "vsep: error: " << e.what() << "\n";
    return 1;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "vsep: " << e.what() << "\n";
    return 2;
  }
}
