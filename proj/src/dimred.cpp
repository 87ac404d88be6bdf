#include "vsep/dimred.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>

#include "vsep/random.hpp"

namespace vsep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_usable(const EmbeddingCertificate& cert, const Graph& g) {
  if (cert.f.rows() != g.n()) throw Error("certificate size does not match the graph");
  if (!(total_square_norm(cert.f) > 0.0)) throw Error("degenerate (zero) embedding");
}

bool better(const EmbeddingCertificate& cand, const EmbeddingCertificate* best) {
  return best == nullptr || cand.value() < best->value();
}

}  // namespace

EmbeddingCertificate gaussian_project(const EmbeddingCertificate& cert, const Graph& g, int trials,
                                      std::uint64_t seed) {
  require_usable(cert, g);
  const int d = static_cast<int>(cert.f.cols());
  std::optional<EmbeddingCertificate> best;
  for (int t = 0; t < std::max(1, trials); ++t) {
    Rng rng(derive_seed(seed, "gaussian", t));
    std::normal_distribution<double> gauss;
    Eigen::VectorXd dir(d);
    for (int i = 0; i < d; ++i) dir(i) = gauss(rng) / std::sqrt(static_cast<double>(d));
    Embedding f1 = centered(cert.f * dir);
    if (!(total_square_norm(f1) > 0.0)) continue;
    auto cand = certificate_for_embedding(g, f1);
    if (better(cand, best ? &*best : nullptr)) best = std::move(cand);
  }
  if (!best) throw Error("every Gaussian projection collapsed the embedding");
  return *best;
}

EmbeddingCertificate best_coordinate(const EmbeddingCertificate& cert, const Graph& g) {
  require_usable(cert, g);
  std::optional<EmbeddingCertificate> best;
  for (Eigen::Index i = 0; i < cert.f.cols(); ++i) {
    Embedding f1 = centered(cert.f.col(i));
    if (!(total_square_norm(f1) > 0.0)) continue;
    auto cand = certificate_for_embedding(g, f1);
    if (better(cand, best ? &*best : nullptr)) best = std::move(cand);
  }
  if (!best) throw Error("every coordinate is constant");
  return *best;
}

std::vector<std::vector<double>> all_pairs_distances(const Graph& g, const std::vector<double>& w) {
  const int n = g.n();
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, kInf));
  using Item = std::pair<double, Vertex>;
  for (Vertex s = 0; s < n; ++s) {
    auto& d = dist[s];
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    d[s] = 0.0;
    heap.push({0.0, s});
    while (!heap.empty()) {
      auto [du, u] = heap.top();
      heap.pop();
      if (du > d[u]) continue;
      const auto& nb = g.neighbors(u);
      const auto& inc = g.incident_edges(u);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        double nd = du + w[inc[i]];
        if (nd < d[nb[i]]) {
          d[nb[i]] = nd;
          heap.push({nd, nb[i]});
        }
      }
    }
  }
  return dist;
}

LineEmbedding partition_line_embed(const Graph& g, const std::vector<double>& w, std::uint64_t seed,
                                   int levels, double padding) {
  const int n = g.n();
  if (static_cast<int>(w.size()) != g.m()) throw Error("edge length count does not match the graph");
  for (double x : w)
    if (!(x >= 0.0)) throw Error("edge lengths must be nonnegative");
  if (!g.connected()) throw Error("partition line embedding needs a connected graph");
  LineEmbedding out;
  out.f.assign(n, 0.0);
  if (n < 2) {
    out.degenerate = true;
    return out;
  }
  const auto dist = all_pairs_distances(g, w);
  double diameter = 0.0, shortest = kInf;
  for (const auto& row : dist)
    for (double x : row) diameter = std::max(diameter, x);
  for (double x : w)
    if (x > 0.0) shortest = std::min(shortest, x);
  if (diameter == 0.0) {
    out.degenerate = true;
    return out;
  }
  if (padding <= 0.0) padding = 64.0 * std::log(n + 1.0);

  const int lo = static_cast<int>(std::floor(std::log2(shortest)));
  const int hi = static_cast<int>(std::ceil(std::log2(diameter)));
  Rng rng(derive_seed(seed, "partition-line"));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Vertex> order(n);
  std::vector<int> cluster(n);
  for (int j = hi; j >= lo; --j) {
    if (levels > 0 && out.scales >= levels) break;
    ++out.scales;
    const double scale = std::ldexp(1.0, j);
    const double radius = scale * (0.25 + 0.25 * unif(rng));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::fill(cluster.begin(), cluster.end(), -1);
    for (Vertex c : order)
      for (Vertex v = 0; v < n; ++v)
        if (cluster[v] < 0 && dist[c][v] <= radius) cluster[v] = c;
    std::vector<double> sign(n);
    for (Vertex c = 0; c < n; ++c) sign[c] = unif(rng) < 0.5 ? -1.0 : 1.0;
    const double cap = scale / padding;
    for (Vertex v = 0; v < n; ++v) {
      double to_outside = kInf;
      for (Vertex u = 0; u < n; ++u)
        if (cluster[u] != cluster[v]) to_outside = std::min(to_outside, dist[v][u]);
      out.f[v] += sign[cluster[v]] * std::min(to_outside, cap);
    }
  }
  double lip = 0.0;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (dist[u][v] > 0.0) lip = std::max(lip, std::abs(out.f[u] - out.f[v]) / dist[u][v]);
  out.lipschitz = lip;
  if (lip > 0.0)
    for (double& x : out.f) x /= lip;
  return out;
}

EmbeddingCertificate partition_dimred(const EmbeddingCertificate& cert, const Graph& g, std::uint64_t seed,
                                      int trials) {
  require_usable(cert, g);
  Embedding f = centered(cert.f);
  const double norm = total_square_norm(f);
  std::vector<double> length(g.m());
  for (int e = 0; e < g.m(); ++e) length[e] = (f.row(g.edge(e).u) - f.row(g.edge(e).v)).norm();
  if (*std::max_element(length.begin(), length.end(), [](double a, double b) { return a < b; }) == 0.0)
    throw Error("degenerate: embedding is constant on every edge");
  std::optional<EmbeddingCertificate> best;
  for (int t = 0; t < std::max(1, trials); ++t) {
    auto line = partition_line_embed(g, length, derive_seed(seed, "partition-dimred", t));
    Embedding f1(g.n(), 1);
    for (Vertex v = 0; v < g.n(); ++v) f1(v, 0) = line.f[v];
    f1 = centered(f1);
    const double norm1 = total_square_norm(f1);
    if (!(norm1 > 0.0)) continue;
    EmbeddingCertificate cand{1, f1, cert.y};
    for (double& y : cand.y) y *= norm / norm1;
    if (!verify(cand, g).feasible) continue;
    if (better(cand, best ? &*best : nullptr)) best = std::move(cand);
  }
  if (!best) throw Error("partition dimension reduction produced no feasible trial");
  return *best;
}

}  // namespace vsep
