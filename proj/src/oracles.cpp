#include "vsep/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>

namespace vsep {

namespace {

using Mask = std::uint32_t;

VertexSet mask_to_set(Mask s) {
  VertexSet out;
  for (int v = 0; s; ++v, s >>= 1)
    if (s & 1) out.push_back(v);
  return out;
}

template <class Count>
RatioWitness brute_ratio(const Graph& g, Count count) {
  const int n = g.n();
  if (n > kBruteExpansionCap) throw Error("brute force cap exceeded (n = " + std::to_string(n) + ")");
  if (n < 2) throw Error("expansion needs at least 2 vertices");
  std::vector<Mask> nbr(n, 0);
  for (const Edge& e : g.edges()) {
    nbr[e.u] |= Mask{1} << e.v;
    nbr[e.v] |= Mask{1} << e.u;
  }
  RatioWitness best;
  bool have = false;
  const Mask full = (n == 32) ? ~Mask{0} : ((Mask{1} << n) - 1);
  for (Mask s = 1; s <= full && s != 0; ++s) {
    long long size = std::popcount(s);
    if (size > n / 2) continue;
    long long num = count(s, nbr);
    bool better = !have || num * best.denominator < best.numerator * size;
    if (!better && num * best.denominator == best.numerator * size) {
      better = mask_to_set(s) < best.witness;
    }
    if (better) {
      best.numerator = num;
      best.denominator = size;
      best.witness = mask_to_set(s);
      have = true;
    }
  }
  best.value = static_cast<double>(best.numerator) / static_cast<double>(best.denominator);
  return best;
}

}  // namespace

RatioWitness brute_psi(const Graph& g) {
  const int n = g.n();
  return brute_ratio(g, [n](Mask s, const std::vector<Mask>& nbr) {
    Mask reach = 0;
    for (int v = 0; v < n; ++v)
      if (s >> v & 1) reach |= nbr[v];
    return static_cast<long long>(std::popcount(reach & ~s));
  });
}

RatioWitness brute_phi(const Graph& g) {
  const int n = g.n();
  return brute_ratio(g, [n](Mask s, const std::vector<Mask>& nbr) {
    long long cut = 0;
    for (int v = 0; v < n; ++v)
      if (s >> v & 1) cut += std::popcount(nbr[v] & ~s);
    return cut;
  });
}

double dense_lambda2(const Graph& g) {
  if (g.n() > kDenseLambdaCap) throw Error("dense eigensolver cap exceeded");
  if (g.n() < 2) throw Error("lambda_2 needs at least 2 vertices");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(laplacian(g), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(1);
}

double weighted_lambda2_dense(const Graph& g, const std::vector<double>& w) {
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(g.n(), g.n());
  for (int e = 0; e < g.m(); ++e) {
    auto [u, v] = g.edge(e);
    L(u, u) += w[e];
    L(v, v) += w[e];
    L(u, v) -= w[e];
    L(v, u) -= w[e];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(1);
}

std::vector<int> edge_orbits(const Graph& g) {
  const int n = g.n();
  if (n > 10) throw Error("automorphism enumeration limited to n <= 10");
  std::vector<int> parent(g.m());
  for (int e = 0; e < g.m(); ++e) parent[e] = e;
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };

  std::vector<int> image(n, -1);
  std::vector<char> used(n, 0);
  std::function<void(int)> extend = [&](int v) {
    if (v == n) {
      for (int e = 0; e < g.m(); ++e) {
        int f = g.edge_id(image[g.edge(e).u], image[g.edge(e).v]);
        int a = find(e), b = find(f);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
      return;
    }
    for (int w = 0; w < n; ++w) {
      if (used[w] || g.degree(w) != g.degree(v)) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) ok = g.has_edge(u, v) == g.has_edge(image[u], w);
      if (!ok) continue;
      used[w] = 1;
      image[v] = w;
      extend(v + 1);
      used[w] = 0;
    }
  };
  extend(0);
  std::vector<int> label(g.m(), -1), out(g.m());
  int next = 0;
  for (int e = 0; e < g.m(); ++e) {
    int r = find(e);
    if (label[r] < 0) label[r] = next++;
    out[e] = label[r];
  }
  return out;
}

Lambda2StarOracle oracle_lambda2_star(const Graph& g, int grid, const std::vector<int>* orbits) {
  if (g.n() < 2) throw Error("lambda_2* needs at least 2 vertices");
  std::vector<int> orbit = orbits ? *orbits : edge_orbits(g);
  if (static_cast<int>(orbit.size()) != g.m()) throw Error("orbit partition size mismatch");
  const int k = orbit.empty() ? 0 : *std::max_element(orbit.begin(), orbit.end()) + 1;
  if (k > 4) throw Error("too many free weights for the grid oracle (" + std::to_string(k) + " orbits)");
  Lambda2StarOracle out;
  out.orbit_count = k;
  if (k == 0) return out;

  // Vertex load as a linear function of the orbit parameters.
  std::vector<std::vector<int>> load(g.n(), std::vector<int>(k, 0));
  for (int e = 0; e < g.m(); ++e) {
    load[g.edge(e).u][orbit[e]]++;
    load[g.edge(e).v][orbit[e]]++;
  }
  auto feasible = [&](const std::vector<double>& p) {
    for (double x : p)
      if (x < 0.0) return false;
    for (const auto& row : load) {
      double s = 0;
      for (int i = 0; i < k; ++i) s += row[i] * p[i];
      if (s > 1.0 + 1e-15) return false;
    }
    return true;
  };
  auto evaluate = [&](const std::vector<double>& p) {
    std::vector<double> w(g.m());
    for (int e = 0; e < g.m(); ++e) w[e] = p[orbit[e]];
    return weighted_lambda2_dense(g, w);
  };

  std::vector<double> best(k, 0.0), p(k, 0.0);
  double best_val = -1.0;
  std::vector<int> idx(k, 0);
  while (true) {
    for (int i = 0; i < k; ++i) p[i] = static_cast<double>(idx[i]) / grid;
    if (feasible(p)) {
      double val = evaluate(p);
      if (val > best_val) {
        best_val = val;
        best = p;
      }
    }
    int i = 0;
    while (i < k && ++idx[i] > grid) idx[i++] = 0;
    if (i == k) break;
  }

  // Compass search over all sign patterns in {-1, 0, 1}^k.
  std::vector<std::vector<int>> dirs;
  int total = 1;
  for (int i = 0; i < k; ++i) total *= 3;
  for (int code = 0; code < total; ++code) {
    std::vector<int> d(k);
    int c = code, nonzero = 0;
    for (int i = 0; i < k; ++i) {
      d[i] = c % 3 - 1;
      c /= 3;
      nonzero += d[i] != 0;
    }
    if (nonzero) dirs.push_back(d);
  }
  double h = 1.0 / grid;
  while (h > 1e-9) {
    bool moved = false;
    for (const auto& d : dirs) {
      for (int i = 0; i < k; ++i) p[i] = best[i] + h * d[i];
      if (!feasible(p)) continue;
      double val = evaluate(p);
      if (val > best_val + 1e-15) {
        best_val = val;
        best = p;
        moved = true;
      }
    }
    if (!moved) h *= 0.5;
  }
  out.value = best_val;
  out.final_step = h;
  out.edge_weight.resize(g.m());
  for (int e = 0; e < g.m(); ++e) out.edge_weight[e] = best[orbit[e]];
  return out;
}

std::optional<std::vector<int>> pack_two_bins(const std::vector<int>& sizes, int cap) {
  int total = 0;
  for (int s : sizes) total += s;
  if (total - cap > cap) return std::nullopt;
  // reach[i][t]: some subset of the first i items sums to t.
  const std::size_t k = sizes.size();
  std::vector<std::vector<char>> reach(k + 1, std::vector<char>(total + 1, 0));
  reach[0][0] = 1;
  for (std::size_t i = 0; i < k; ++i)
    for (int t = 0; t <= total; ++t)
      if (reach[i][t]) {
        reach[i + 1][t] = 1;
        if (t + sizes[i] <= total) reach[i + 1][t + sizes[i]] = 1;
      }
  int target = -1;
  for (int t = std::min(cap, total); t >= 0; --t)
    if (reach[k][t] && total - t <= cap) {
      target = t;
      break;
    }
  if (target < 0) return std::nullopt;
  std::vector<int> bin(k, 1);
  for (std::size_t i = k; i-- > 0;) {
    if (!reach[i][target]) {
      bin[i] = 0;
      target -= sizes[i];
    }
  }
  return bin;
}

std::optional<Separator> separator_from_set(const Graph& g, const VertexSet& S, double alpha) {
  const int n = g.n();
  std::vector<char> removed(n, 0);
  for (Vertex v : S) removed[v] = 1;
  std::vector<int> comp(n, -1);
  std::vector<VertexSet> parts;
  for (Vertex s = 0; s < n; ++s) {
    if (removed[s] || comp[s] >= 0) continue;
    parts.emplace_back();
    comp[s] = static_cast<int>(parts.size()) - 1;
    VertexSet stack{s};
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      parts.back().push_back(v);
      for (Vertex w : g.neighbors(v))
        if (!removed[w] && comp[w] < 0) {
          comp[w] = comp[s];
          stack.push_back(w);
        }
    }
  }
  std::vector<int> sizes;
  for (const auto& p : parts) sizes.push_back(static_cast<int>(p.size()));
  auto bins = pack_two_bins(sizes, balance_cap(n, alpha));
  if (!bins) return std::nullopt;
  Separator sep;
  sep.alpha = alpha;
  sep.S = S;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    auto& dst = (*bins)[i] == 0 ? sep.A : sep.B;
    dst.insert(dst.end(), parts[i].begin(), parts[i].end());
  }
  std::sort(sep.S.begin(), sep.S.end());
  std::sort(sep.A.begin(), sep.A.end());
  std::sort(sep.B.begin(), sep.B.end());
  return sep;
}

Separator brute_separator(const Graph& g, double alpha) {
  const int n = g.n();
  if (n > kBruteSeparatorCap) throw Error("brute separator cap exceeded (n = " + std::to_string(n) + ")");
  for (int size = 0; size <= n; ++size) {
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + size, true);
    do {
      VertexSet S;
      for (int v = 0; v < n; ++v)
        if (mask[v]) S.push_back(v);
      if (auto sep = separator_from_set(g, S, alpha)) return *sep;
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  throw Error("no separator exists for this balance bound");
}

OracleReport oracle_report(const Graph& g) {
  OracleReport r;
  r.psi = brute_psi(g);
  r.phi = brute_phi(g);
  r.lambda2 = dense_lambda2(g);
  r.notes.push_back("psi, phi: exhaustive subset enumeration, exact rational comparison");
  r.notes.push_back("lambda2: dense symmetric eigendecomposition");
  return r;
}

}  // namespace vsep
