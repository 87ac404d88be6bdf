#include "vsep/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "vsep/dimred.hpp"
#include "vsep/oracles.hpp"
#include "vsep/random.hpp"
#include "vsep/reweighting.hpp"

namespace vsep {

namespace {

// Adds vertices in `order` one at a time and reports, after each addition,
// the boundary sizes of the prefix P and of its complement.
struct IncrementalBoundary {
  std::vector<int> prefix_boundary;
  std::vector<int> suffix_boundary;
};

IncrementalBoundary incremental_boundary(const Graph& g, const std::vector<Vertex>& order) {
  const int n = g.n();
  std::vector<int> inside(n, 0);
  std::vector<char> in_prefix(n, 0);
  int bp = 0, bq = 0;
  IncrementalBoundary out;
  for (Vertex x : order) {
    if (inside[x] > 0) --bp;
    in_prefix[x] = 1;
    if (inside[x] < g.degree(x)) ++bq;
    for (Vertex w : g.neighbors(x)) {
      ++inside[w];
      if (!in_prefix[w] && inside[w] == 1) ++bp;
      if (in_prefix[w] && inside[w] == g.degree(w)) --bq;
    }
    out.prefix_boundary.push_back(bp);
    out.suffix_boundary.push_back(bq);
  }
  return out;
}

struct Candidate {
  double ratio = std::numeric_limits<double>::infinity();
  int family = 0;
  int index = 0;
  VertexSet set;
};

void consider(Candidate& best, double ratio, int family, int index, VertexSet set) {
  if (ratio < best.ratio) best = {ratio, family, index, std::move(set)};
}

}  // namespace

SweepResult sweep_vertex_cut(const Graph& g, const std::vector<double>& f) {
  const int n = g.n();
  if (static_cast<int>(f.size()) != n) throw Error("sweep values do not match the graph");
  if (n < 2) throw Error("sweep needs at least 2 vertices");
  if (*std::max_element(f.begin(), f.end()) == *std::min_element(f.begin(), f.end()))
    throw Error("sweep needs a non-constant embedding");

  SweepResult out;
  Candidate best;
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return f[a] < f[b]; });
  auto inc = incremental_boundary(g, order);
  for (int k = 1; k < n; ++k) {
    double ratio = std::numeric_limits<double>::infinity();
    if (k <= n / 2) {
      double r = static_cast<double>(inc.prefix_boundary[k - 1]) / k;
      if (r < ratio) ratio = r;
      consider(best, r, 0, k, VertexSet(order.begin(), order.begin() + k));
    }
    if (n - k <= n / 2) {
      double r = static_cast<double>(inc.suffix_boundary[k - 1]) / (n - k);
      if (r < ratio) ratio = r;
      consider(best, r, 0, k, VertexSet(order.begin() + k, order.end()));
    }
    out.prefix_ratios.push_back(ratio);
  }

  std::vector<double> sorted = f;
  std::nth_element(sorted.begin(), sorted.begin() + n / 2, sorted.end());
  const double median = sorted[n / 2];
  std::vector<Vertex> level(n);
  std::iota(level.begin(), level.end(), 0);
  std::stable_sort(level.begin(), level.end(),
                   [&](Vertex a, Vertex b) { return std::abs(f[a] - median) > std::abs(f[b] - median); });
  auto lev = incremental_boundary(g, level);
  for (int k = 1; k <= n / 2; ++k) {
    double r = static_cast<double>(lev.prefix_boundary[k - 1]) / k;
    out.level_ratios.push_back(r);
    consider(best, r, 1, k, VertexSet(level.begin(), level.begin() + k));
  }

  std::sort(best.set.begin(), best.set.end());
  out.cut = VertexCut(g, best.set);
  out.family = best.family;
  out.threshold_index = best.index;
  return out;
}

SweepResult sweep_vertex_cut(const Graph& g, const EmbeddingCertificate& cert) {
  if (cert.f.cols() != 1) throw Error("sweep needs a one-dimensional certificate");
  if (cert.f.rows() != g.n()) throw Error("certificate size does not match the graph");
  std::vector<double> f(g.n());
  for (Vertex v = 0; v < g.n(); ++v) f[v] = cert.f(v, 0);
  return sweep_vertex_cut(g, f);
}

Separator separator_from_cutter(const Graph& g, const Cutter& cutter, const SeparatorOptions& opts) {
  const int n = g.n();
  std::vector<char> removed(n, 0);
  VertexSet S;
  while (true) {
    VertexSet keep;
    for (Vertex v = 0; v < n; ++v)
      if (!removed[v]) keep.push_back(v);
    if (auto sep = separator_from_set(g, S, opts.alpha)) {
      if (opts.max_size > 0 && static_cast<int>(sep->S.size()) > opts.max_size)
        throw Error("separator size " + std::to_string(sep->S.size()) + " exceeds the cap");
      return *sep;
    }
    Graph rest = g.induced(keep);
    auto [label, count] = rest.components();
    std::vector<int> size(count, 0);
    for (int l : label) ++size[l];
    const int largest = static_cast<int>(std::max_element(size.begin(), size.end()) - size.begin());
    VertexSet local;
    for (int i = 0; i < rest.n(); ++i)
      if (label[i] == largest) local.push_back(keep[i]);
    Graph piece = g.induced(local);
    if (piece.n() < 2) throw Error("separator recursion cannot split a single vertex");
    VertexCut cut;
    try {
      cut = cutter(piece);
      VertexCut check(piece, cut.set());
      if (check.boundary() != cut.boundary()) throw Error("cutter returned an inconsistent boundary");
    } catch (const std::exception& e) {
      std::string detail = "cutter failed on a component with " + std::to_string(piece.n()) + " vertices";
      if (piece.n() <= 40) detail += " [" + piece.canonical_text() + "]";
      throw Error(detail + ": " + e.what());
    }
    if (cut.boundary().empty()) throw Error("cutter returned an empty boundary on a connected component");
    for (Vertex v : cut.boundary()) {
      removed[local[v]] = 1;
      S.push_back(local[v]);
    }
    std::sort(S.begin(), S.end());
    if (opts.max_size > 0 && static_cast<int>(S.size()) > opts.max_size)
      throw Error("separator size " + std::to_string(S.size()) + " exceeds the cap");
  }
}

DimredMethod parse_dimred_method(const std::string& name) {
  if (name == "gaussian") return DimredMethod::gaussian;
  if (name == "coordinate") return DimredMethod::coordinate;
  if (name == "partition") return DimredMethod::partition;
  throw Error("unknown dimension reduction method '" + name + "'");
}

std::string to_string(DimredMethod m) {
  switch (m) {
    case DimredMethod::gaussian: return "gaussian";
    case DimredMethod::coordinate: return "coordinate";
    case DimredMethod::partition: return "partition";
  }
  return "?";
}

CutOutcome spectral_cut(const Graph& g, const PipelineOptions& opts, std::uint64_t seed) {
  if (!g.connected()) throw Error("spectral cut needs a connected graph");
  if (g.n() < 2) throw Error("spectral cut needs at least 2 vertices");
  CutOutcome out;
  CutAudit& a = out.audit;
  a.component_size = g.n();
  a.max_degree = g.max_degree();
  a.lambda2 = lambda2_of(g, from_edge_weights(g, std::vector<double>(g.m(), 1.0 / a.max_degree))) * a.max_degree;

  SolveOptions so;
  so.iters = opts.iters;
  so.seed = derive_seed(seed, "solve");
  auto solved = solve_lambda2_star(g, so);
  a.lambda2_star = solved.value;

  const int d = std::min(opts.dim, g.n() - 1);
  auto cert_d = extract_dual_embedding(g, solved.P, d);
  auto cert_line = extract_dual_embedding(g, solved.P, 1);
  EmbeddingCertificate reduced;
  switch (opts.method) {
    case DimredMethod::gaussian: reduced = gaussian_project(cert_d, g, opts.trials, derive_seed(seed, "dimred")); break;
    case DimredMethod::coordinate: reduced = best_coordinate(cert_d, g); break;
    case DimredMethod::partition: reduced = partition_dimred(cert_d, g, derive_seed(seed, "dimred"), opts.trials); break;
  }
  out.certificate_1 = reduced.value() <= cert_line.value() ? reduced : cert_line;
  out.certificate_d = cert_d;
  if (pad_dimension(out.certificate_1, d).value() < cert_d.value()) out.certificate_d = pad_dimension(out.certificate_1, d);
  a.gamma_d = out.certificate_d.value();
  a.gamma_1 = out.certificate_1.value();

  auto sweep_a = sweep_vertex_cut(g, reduced);
  auto sweep_b = sweep_vertex_cut(g, cert_line);
  out.sweep = sweep_b.cut.ratio() < sweep_a.cut.ratio() ? sweep_b : sweep_a;
  out.cut = out.sweep.cut;
  a.psi_found = out.cut.ratio();
  a.cut_size = static_cast<int>(out.cut.set().size());
  a.boundary_size = static_cast<int>(out.cut.boundary().size());
  const double eps = 1e-6;
  a.chain_holds = a.lambda2 / a.max_degree <= a.lambda2_star + eps && a.lambda2_star <= a.gamma_d + eps &&
                  a.gamma_d <= a.gamma_1 + eps;
  return out;
}

PipelineResult full_pipeline(const Graph& g, const PipelineOptions& opts) {
  if (!g.connected()) throw Error("pipeline needs a connected graph");
  PipelineResult out;
  auto top = spectral_cut(g, opts, derive_seed(opts.seed, "cut", 0));
  out.certificate_d = top.certificate_d;
  out.certificate_1 = top.certificate_1;
  out.sweep = top.sweep;
  out.audit.push_back(top.audit);
  bool first = true;
  std::uint64_t index = 1;
  Cutter cutter = [&](const Graph& piece) {
    if (first && piece == g) {
      first = false;
      return top.cut;
    }
    first = false;
    auto r = spectral_cut(piece, opts, derive_seed(opts.seed, "cut", index++));
    out.audit.push_back(r.audit);
    return r.cut;
  };
  SeparatorOptions so;
  so.alpha = opts.alpha;
  out.separator = separator_from_cutter(g, cutter, so);
  return out;
}

}  // namespace vsep
