#include "vsep/spread.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>

#include "vsep/dimred.hpp"
#include "vsep/random.hpp"

namespace vsep {

namespace {

struct ShortestPathTree {
  std::vector<double> dist;
  std::vector<Vertex> parent;
  std::vector<Vertex> order;  // settle order
};

ShortestPathTree weighted_tree(const Graph& g, const std::vector<double>& omega, Vertex src) {
  const int n = g.n();
  ShortestPathTree t{std::vector<double>(n, std::numeric_limits<double>::infinity()), std::vector<Vertex>(n, -1), {}};
  std::vector<char> done(n, 0);
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  t.dist[src] = 0.0;
  pq.push({0.0, src});
  while (!pq.empty()) {
    auto [d, a] = pq.top();
    pq.pop();
    if (done[a] || d > t.dist[a]) continue;
    done[a] = 1;
    t.order.push_back(a);
    for (Vertex b : g.neighbors(a)) {
      if (done[b]) continue;
      double nd = d + 0.5 * (omega[a] + omega[b]);
      double tol = 1e-12 * (1.0 + std::abs(nd));
      if (nd < t.dist[b] - tol) {
        t.dist[b] = nd;
        t.parent[b] = a;
        pq.push({nd, b});
      } else if (nd <= t.dist[b] + tol && a < t.parent[b]) {
        t.parent[b] = a;
      }
    }
  }
  return t;
}

void require_input(const Graph& g, const std::vector<double>& omega) {
  if (static_cast<int>(omega.size()) != g.n()) throw Error("weight vector has the wrong length");
  for (double w : omega)
    if (!(w >= 0.0)) throw Error("spread weights must be nonnegative");
  if (!g.connected()) throw Error("spread needs a connected graph");
}

void normalize_weights(std::vector<double>& w, int p) {
  for (double& x : w) x = std::max(0.0, x);
  if (p == 1) {
    w = project_to_simplex(std::move(w));
    return;
  }
  double norm = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
  if (norm == 0.0) {
    std::fill(w.begin(), w.end(), 1.0 / std::sqrt(static_cast<double>(w.size())));
    return;
  }
  for (double& x : w) x /= norm;
}

}  // namespace

double spread_value(const Graph& g, const std::vector<double>& omega) {
  require_input(g, omega);
  double total = 0.0;
  for (Vertex s = 0; s < g.n(); ++s) {
    auto t = weighted_tree(g, omega, s);
    for (double d : t.dist) total += d;
  }
  return total;
}

std::vector<double> spread_supergradient(const Graph& g, const std::vector<double>& omega) {
  require_input(g, omega);
  const int n = g.n();
  std::vector<double> grad(n, 0.0);
  std::vector<int> below(n);
  for (Vertex s = 0; s < n; ++s) {
    auto t = weighted_tree(g, omega, s);
    std::fill(below.begin(), below.end(), 1);
    for (auto it = t.order.rbegin(); it != t.order.rend(); ++it)
      if (t.parent[*it] >= 0) below[t.parent[*it]] += below[*it];
    grad[s] += 0.5 * (n - 1);
    for (Vertex x = 0; x < n; ++x)
      if (x != s) grad[x] += below[x] - 0.5;
  }
  return grad;
}

std::vector<double> project_to_simplex(std::vector<double> z) {
  const std::size_t n = z.size();
  if (n == 0) return z;
  std::vector<double> sorted = z;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cum += sorted[i];
    double t = (cum - 1.0) / static_cast<double>(i + 1);
    if (sorted[i] - t > 0) theta = t;
  }
  for (double& x : z) x = std::max(0.0, x - theta);
  return z;
}

SpreadWeights maximize_spread(const Graph& g, int p, int iters, std::uint64_t seed) {
  if (p != 1 && p != 2) throw Error("spread norm must be 1 or 2");
  if (!g.connected()) throw Error("spread needs a connected graph");
  const int n = g.n();
  if (iters <= 0) iters = 200;
  std::vector<double> w(n, 1.0);
  normalize_weights(w, p);
  const double scale = 0.5 * std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
  SpreadWeights best{w, p, spread_value(g, w), {}};

  // The ascent itself starts from slightly jittered uniform weights.
  Rng rng(derive_seed(seed, "spread"));
  std::uniform_real_distribution<double> jitter(0.999, 1.001);
  for (double& x : w) x *= jitter(rng);
  normalize_weights(w, p);
  for (int t = 1; t <= iters; ++t) {
    auto grad = spread_supergradient(g, w);
    double gn = std::sqrt(std::inner_product(grad.begin(), grad.end(), grad.begin(), 0.0));
    if (gn == 0.0) break;
    double step = scale / std::sqrt(static_cast<double>(t));
    for (int i = 0; i < n; ++i) w[i] += step * grad[i] / gn;
    normalize_weights(w, p);
    double val = spread_value(g, w);
    if (val > best.value) {
      best.omega = w;
      best.value = val;
    }
    best.best_history.push_back(best.value);
  }
  return best;
}

SpreadEmbeddingCertificate spread_certificate_from_weights(const Graph& g, const SpreadWeights& w,
                                                           std::uint64_t seed) {
  require_input(g, w.omega);
  const int n = g.n();
  std::vector<double> length(g.m());
  for (int e = 0; e < g.m(); ++e) length[e] = 0.5 * (w.omega[g.edge(e).u] + w.omega[g.edge(e).v]);

  SpreadEmbeddingCertificate c;
  c.p = 2;
  c.d = 1;
  c.f = Embedding::Zero(n, 1);
  c.y.resize(n);
  double mass = 0.0;
  for (Vertex v = 0; v < n; ++v) mass += w.omega[v] * w.omega[v];
  for (Vertex v = 0; v < n; ++v) c.y[v] = w.omega[v] * w.omega[v] / std::max(mass, 1.0);

  // Candidates: the partition line embedding and distances from a peripheral vertex.
  std::vector<std::vector<double>> lines;
  auto line = partition_line_embed(g, length, derive_seed(seed, "spread-certificate"));
  if (!line.degenerate) lines.push_back(line.f);
  auto tree = weighted_tree(g, w.omega, 0);
  Vertex far = static_cast<Vertex>(std::max_element(tree.dist.begin(), tree.dist.end()) - tree.dist.begin());
  lines.push_back(weighted_tree(g, w.omega, far).dist);

  double best = -1.0;
  for (const auto& f : lines) {
    // Largest stretch the edge constraints allow.
    double t = std::numeric_limits<double>::infinity();
    for (const Edge& e : g.edges()) {
      double diff = std::abs(f[e.u] - f[e.v]);
      if (diff > 0) t = std::min(t, std::sqrt((c.y[e.u] + c.y[e.v]) / (diff * diff)));
    }
    if (!std::isfinite(t)) continue;
    Embedding cand(n, 1);
    for (Vertex v = 0; v < n; ++v) cand(v, 0) = t * f[v];
    double val = ordered_pair_sum(cand, 2);
    if (val > best) {
      best = val;
      c.f = cand;
    }
  }
  return c;
}

SpreadChainReport spread_chain_check(const Graph& g, const SpreadWeights& w, const SpreadEmbeddingCertificate& cert) {
  require_input(g, w.omega);
  const double n = g.n();
  SpreadChainReport r;
  r.spread = spread_value(g, w.omega);
  r.spread_sq_over_n2 = r.spread * r.spread / (n * n);
  for (Vertex s = 0; s < g.n(); ++s) {
    auto t = weighted_tree(g, w.omega, s);
    for (double d : t.dist) r.squared_spread += d * d;
  }
  r.q2_value = cert.value();
  r.gap = r.q2_value > 0 ? r.spread_sq_over_n2 / r.q2_value : std::numeric_limits<double>::infinity();
  return r;
}

}  // namespace vsep
