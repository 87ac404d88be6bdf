#include "vsep/reweighting.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace vsep {

namespace {

constexpr double kDegenerateGap = 1e-6;

EigenPairs spectrum(const Graph& g, const std::vector<double>& w, int k, const Eigen::MatrixXd* warm) {
  const int n = g.n();
  k = std::min(k, n - 1);
  if (n <= kDenseEigenLimit) {
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (int e = 0; e < g.m(); ++e) {
      auto [u, v] = g.edge(e);
      L(u, u) += w[e];
      L(v, v) += w[e];
      L(u, v) -= w[e];
      L(v, u) -= w[e];
    }
    return smallest_nontrivial_eigs_dense(L, k);
  }
  return smallest_nontrivial_eigs(reweighted_laplacian(g, w), k, warm);
}

}  // namespace

Eigen::MatrixXd Reweighting::dense(const Graph& g) const {
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(g.n(), g.n());
  for (int e = 0; e < g.m(); ++e) {
    P(g.edge(e).u, g.edge(e).v) = edge[e];
    P(g.edge(e).v, g.edge(e).u) = edge[e];
  }
  for (int v = 0; v < g.n(); ++v) P(v, v) = loop[v];
  return P;
}

Reweighting from_edge_weights(const Graph& g, std::vector<double> w) {
  Reweighting P;
  P.loop.assign(g.n(), 1.0);
  for (int e = 0; e < g.m(); ++e) {
    P.loop[g.edge(e).u] -= w[e];
    P.loop[g.edge(e).v] -= w[e];
  }
  P.edge = std::move(w);
  return P;
}

Reweighting lazy_walk(const Graph& g) {
  const int delta = std::max(1, g.max_degree());
  return from_edge_weights(g, std::vector<double>(g.m(), 0.5 / delta));
}

Reweighting max_degree_walk(const Graph& g) {
  const int delta = std::max(1, g.max_degree());
  return from_edge_weights(g, std::vector<double>(g.m(), 1.0 / delta));
}

std::string check_reweighting(const Graph& g, const Reweighting& P, double tol) {
  if (static_cast<int>(P.edge.size()) != g.m() || static_cast<int>(P.loop.size()) != g.n())
    return "reweighting size does not match the graph";
  std::vector<double> row(g.n(), 0.0);
  for (int e = 0; e < g.m(); ++e) {
    if (P.edge[e] < 0.0) return "negative weight on edge " + std::to_string(e);
    row[g.edge(e).u] += P.edge[e];
    row[g.edge(e).v] += P.edge[e];
  }
  for (int v = 0; v < g.n(); ++v) {
    if (P.loop[v] < -tol) return "negative loop at vertex " + std::to_string(v);
    if (std::abs(row[v] + P.loop[v] - 1.0) > tol) return "row " + std::to_string(v) + " does not sum to 1";
  }
  return "";
}

SparseMatrix reweighted_laplacian(const Graph& g, const std::vector<double>& w) {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(4 * g.m());
  for (int e = 0; e < g.m(); ++e) {
    auto [u, v] = g.edge(e);
    t.emplace_back(u, u, w[e]);
    t.emplace_back(v, v, w[e]);
    t.emplace_back(u, v, -w[e]);
    t.emplace_back(v, u, -w[e]);
  }
  SparseMatrix L(g.n(), g.n());
  L.setFromTriplets(t.begin(), t.end());
  return L;
}

double lambda2_of(const Graph& g, const Reweighting& P) {
  if (auto bad = check_reweighting(g, P); !bad.empty()) throw Error("invalid reweighting: " + bad);
  if (g.n() < 2) throw Error("lambda_2 needs at least 2 vertices");
  return spectrum(g, P.edge, 1, nullptr).values(0);
}

std::vector<double> project_edge_weights(const Graph& g, const std::vector<double>& z,
                                         std::vector<double>* dual) {
  const int n = g.n();
  std::vector<double> local;
  std::vector<double>& mu = dual ? *dual : local;
  if (static_cast<int>(mu.size()) != n) mu.assign(n, 0.0);
  std::vector<double> t;
  for (int sweep = 0; sweep < 500; ++sweep) {
    double change = 0.0;
    for (Vertex v = 0; v < n; ++v) {
      const auto& nb = g.neighbors(v);
      const auto& inc = g.incident_edges(v);
      t.clear();
      double load = 0.0;
      for (std::size_t i = 0; i < nb.size(); ++i) {
        t.push_back(z[inc[i]] - mu[nb[i]]);
        load += std::max(0.0, t.back());
      }
      double next = 0.0;
      if (load > 1.0) {
        std::sort(t.begin(), t.end(), std::greater<>());
        double prefix = 0.0;
        for (std::size_t k = 0; k < t.size(); ++k) {
          prefix += t[k];
          double cand = (prefix - 1.0) / static_cast<double>(k + 1);
          double lower = k + 1 < t.size() ? t[k + 1] : -std::numeric_limits<double>::infinity();
          if (cand >= lower) {
            next = std::max(0.0, cand);
            break;
          }
        }
      }
      change = std::max(change, std::abs(next - mu[v]));
      mu[v] = next;
    }
    if (change < 1e-14) break;
  }
  std::vector<double> w(g.m());
  for (int e = 0; e < g.m(); ++e) w[e] = std::max(0.0, z[e] - mu[g.edge(e).u] - mu[g.edge(e).v]);
  std::vector<double> load(n, 0.0);
  for (int e = 0; e < g.m(); ++e) {
    load[g.edge(e).u] += w[e];
    load[g.edge(e).v] += w[e];
  }
  for (int e = 0; e < g.m(); ++e) {
    double cap = std::min({1.0, 1.0 / std::max(load[g.edge(e).u], 1e-300), 1.0 / std::max(load[g.edge(e).v], 1e-300)});
    w[e] *= cap;
  }
  return w;
}

SolveResult solve_lambda2_star(const Graph& g, const SolveOptions& opts) {
  const int n = g.n();
  if (n < 2) throw Error("lambda_2* needs at least 2 vertices");
  SolveResult out;
  out.trace.seed = opts.seed;
  if (!g.connected()) {
    out.P = lazy_walk(g);
    out.disconnected = true;
    out.trace.status = "disconnected: lambda_2* = 0";
    return out;
  }
  const int delta = g.max_degree();
  int iters = opts.iters;
  if (iters <= 0) iters = n <= 10 ? 20000 : n <= 30 ? 5000 : n <= 100 ? 1500 : 300;
  const double c = opts.step_scale > 0 ? opts.step_scale : 1.0 / delta;
  const int window = opts.stall_window > 0 ? opts.stall_window : std::max(200, iters / 5);
  const int k = std::min(n - 1, 6);

  std::vector<double> best_w = max_degree_walk(g).edge;
  EigenPairs best_eig = spectrum(g, best_w, k, nullptr);
  double best = best_eig.values(0);

  std::vector<double> w = lazy_walk(g).edge;
  std::vector<double> mu;
  Eigen::MatrixXd warm;
  int last_improvement = 0;
  for (int t = 1; t <= iters; ++t) {
    EigenPairs eig = spectrum(g, w, k, warm.size() ? &warm : nullptr);
    warm = eig.vectors;
    const double lam = eig.values(0);
    out.trace.values.push_back(lam);
    if (lam > best + opts.tol) last_improvement = t;
    if (lam > best) {
      best = lam;
      best_w = w;
      best_eig = eig;
    }
    out.trace.best.push_back(best);
    out.trace.iterations = t;
    if (t - last_improvement > window) {
      out.trace.stalled = true;
      break;
    }
    int cluster = 1;
    while (cluster < eig.values.size() && eig.values(cluster) - lam < kDegenerateGap) ++cluster;
    std::vector<double> grad(g.m(), 0.0);
    for (int e = 0; e < g.m(); ++e) {
      auto [u, v] = g.edge(e);
      for (int i = 0; i < cluster; ++i) {
        double d = eig.vectors(u, i) - eig.vectors(v, i);
        grad[e] += d * d;
      }
      grad[e] /= cluster;
    }
    double norm = 0.0;
    for (double x : grad) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) break;
    const double step = c / std::sqrt(static_cast<double>(t));
    out.trace.steps.push_back(step);
    for (int e = 0; e < g.m(); ++e) grad[e] = w[e] + step * grad[e] / norm;
    w = project_edge_weights(g, grad, &mu);
  }
  out.P = from_edge_weights(g, best_w);
  out.value = best;
  out.trace.final_gap = best_eig.values.size() > 1 ? best_eig.values(1) - best_eig.values(0) : 0.0;
  out.trace.status = out.trace.stalled ? "stopped: best value stalled" : "iteration budget reached";
  return out;
}

EmbeddingCertificate extract_dual_embedding(const Graph& g, const Reweighting& P, int d, std::string* warning) {
  if (auto bad = check_reweighting(g, P); !bad.empty()) throw Error("invalid reweighting: " + bad);
  if (d < 1) throw Error("dimension must be positive");
  const int n = g.n();
  if (n < 2) throw Error("dual embedding needs at least 2 vertices");
  if (d > n - 1) {
    if (warning) *warning = "dimension reduced from " + std::to_string(d) + " to " + std::to_string(n - 1);
    d = n - 1;
  }
  EigenPairs eig = spectrum(g, P.edge, d, nullptr);
  return certificate_for_embedding(g, eig.vectors.leftCols(d));
}

}  // namespace vsep
