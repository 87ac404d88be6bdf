#include "vsep/transforms.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <queue>

#include "vsep/random.hpp"

namespace vsep {

namespace {

using Orders = std::vector<std::vector<Vertex>>;

int index_in(const std::vector<Vertex>& v, Vertex x) {
  auto it = std::find(v.begin(), v.end(), x);
  if (it == v.end()) throw Error("internal: rotation entry not found");
  return static_cast<int>(it - v.begin());
}

void insert_after(std::vector<Vertex>& order, Vertex anchor, Vertex x) {
  order.insert(order.begin() + index_in(order, anchor) + 1, x);
}

// Splits the face ... a_prev -> a ... b_prev -> b ... with the chord a-b.
void add_chord(Orders& rot, Vertex a_prev, Vertex a, Vertex b_prev, Vertex b) {
  insert_after(rot[a], a_prev, b);
  insert_after(rot[b], b_prev, a);
}

// Eccentricity of src inside the marked vertices, and how many it reaches.
std::pair<int, std::size_t> bfs_within(const Graph& h, const std::vector<char>& inside, Vertex src) {
  std::vector<int> dist(h.n(), -1);
  std::queue<Vertex> q;
  dist[src] = 0;
  q.push(src);
  int far = 0;
  std::size_t seen = 0;
  while (!q.empty()) {
    Vertex x = q.front();
    q.pop();
    ++seen;
    far = std::max(far, dist[x]);
    for (Vertex y : h.neighbors(x))
      if (inside[y] && dist[y] < 0) {
        dist[y] = dist[x] + 1;
        q.push(y);
      }
  }
  return {far, seen};
}

}  // namespace

std::string check_minor_map(const Graph& g, const Graph& h, const UniformShallowMinorMap& map) {
  if (static_cast<int>(map.project.size()) != h.n()) return "projection does not cover V(H)";
  std::vector<std::vector<Vertex>> patches(g.n());
  for (Vertex x = 0; x < h.n(); ++x) {
    Vertex v = map.project[x];
    if (v < 0 || v >= g.n()) return "projection out of range at " + std::to_string(x);
    patches[v].push_back(x);
  }
  std::vector<char> inside(h.n(), 0);
  for (Vertex v = 0; v < g.n(); ++v) {
    const auto& patch = patches[v];
    if (static_cast<int>(patch.size()) != map.patch_size)
      return "patch of " + std::to_string(v) + " has " + std::to_string(patch.size()) + " vertices";
    for (Vertex x : patch) inside[x] = 1;
    for (Vertex x : patch) {
      auto [ecc, seen] = bfs_within(h, inside, x);
      if (seen != patch.size()) return "patch of " + std::to_string(v) + " is disconnected";
      if (ecc > map.depth) return "patch of " + std::to_string(v) + " exceeds the depth bound";
    }
    for (Vertex x : patch) inside[x] = 0;
  }
  for (const Edge& e : h.edges()) {
    Vertex a = map.project[e.u], b = map.project[e.v];
    if (a != b && !g.has_edge(a, b))
      return "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " maps to a non-edge";
  }
  return "";
}

Graph contract_patches(const Graph& h, const UniformShallowMinorMap& map, int n) {
  std::vector<Edge> es;
  for (const Edge& e : h.edges()) {
    Vertex a = map.project[e.u], b = map.project[e.v];
    if (a == b) continue;
    es.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  return Graph(n, es);
}

RotationSystem hexagonal_subdivide(const RotationSystem& r, int rounds) {
  if (rounds < 0) throw Error("subdivision rounds must be non-negative");
  RotationSystem cur = r;
  for (int round = 0; round < rounds; ++round) {
    if (!cur.is_triangulation()) throw Error("hexagonal subdivision needs a triangulation");
    const Graph& g = cur.graph();
    const int n = g.n();
    auto mid = [&](Vertex a, Vertex b) { return n + g.edge_id(a, b); };
    // piece[e][0]: midpoints met after the smaller endpoint, piece[e][1] after the larger.
    std::vector<std::array<std::array<Vertex, 2>, 2>> piece(g.m());
    for (const FaceWalk& f : cur.faces()) {
      for (int i = 0; i < 3; ++i) {
        Vertex a = f[i].from, b = f[i].to, c = f[(i + 1) % 3].to;
        int e = g.edge_id(a, b);
        piece[e][a < b ? 0 : 1] = {mid(c, a), mid(b, c)};
      }
    }
    Orders rot(n + g.m());
    for (Vertex v = 0; v < n; ++v)
      for (Vertex w : cur.rotation(v)) rot[v].push_back(mid(v, w));
    for (int e = 0; e < g.m(); ++e) {
      const Edge& ed = g.edge(e);
      rot[n + e] = {ed.u, piece[e][0][0], piece[e][0][1], ed.v, piece[e][1][0], piece[e][1][1]};
    }
    cur = rotation_from_orders(std::move(rot));
  }
  return cur;
}

DegreeReduction degree_reduce(const RotationSystem& r) {
  const Graph& g = r.graph();
  if (!g.connected()) throw Error("degree reduction needs a connected graph");
  const int n = g.n();
  const int delta = g.max_degree();
  if (delta < 2) {
    UniformShallowMinorMap id{{}, 1, 0};
    for (Vertex v = 0; v < n; ++v) id.project.push_back(v);
    return {r, id};
  }
  // Near-perfect binary search tree over in-order slots 0..Δ-1.
  std::vector<int> parent(delta, -1), left(delta, -1), right(delta, -1);
  auto build = [&](auto&& self, int lo, int hi) -> int {
    if (lo > hi) return -1;
    int root = (lo + hi) / 2;
    left[root] = self(self, lo, root - 1);
    right[root] = self(self, root + 1, hi);
    if (left[root] >= 0) parent[left[root]] = root;
    if (right[root] >= 0) parent[right[root]] = root;
    return root;
  };
  build(build, 0, delta - 1);

  auto copy = [&](Vertex v, int slot) { return v * delta + slot; };
  auto assemble = [&](bool mirrored) {
    Orders rot(static_cast<std::size_t>(n) * delta);
    for (Vertex v = 0; v < n; ++v) {
      const auto& around = r.rotation(v);
      for (int s = 0; s < delta; ++s) {
        std::vector<Vertex> order;
        if (parent[s] >= 0) order.push_back(copy(v, parent[s]));
        if (left[s] >= 0) order.push_back(copy(v, left[s]));
        if (s < static_cast<int>(around.size())) {
          Vertex w = around[s];
          order.push_back(copy(w, index_in(r.rotation(w), v)));
        }
        if (right[s] >= 0) order.push_back(copy(v, right[s]));
        if (mirrored) std::reverse(order.begin(), order.end());
        rot[copy(v, s)] = std::move(order);
      }
    }
    return rotation_from_orders(std::move(rot));
  };

  int depth = 0;
  while ((1 << depth) < delta) ++depth;
  UniformShallowMinorMap map{{}, delta, 2 * depth};
  for (Vertex v = 0; v < n; ++v)
    for (int s = 0; s < delta; ++s) map.project.push_back(v);

  const int genus = r.euler_genus();
  for (bool mirrored : {false, true}) {
    RotationSystem h = assemble(mirrored);
    if (h.euler_genus() == genus) return {std::move(h), std::move(map)};
  }
  throw Error("internal: degree reduction changed the genus");
}

RotationSystem triangulate(const RotationSystem& r) {
  const Graph& g = r.graph();
  if (!g.connected()) throw Error("triangulation needs a connected graph");
  const int n = g.n();
  if (n < 3) throw Error("triangulation needs at least three vertices");
  const int delta = g.max_degree();

  // Satellites: one per rotation gap, the rest spread evenly over the gaps.
  // gap j at v lies between rotation(v)[j] and rotation(v)[j+1].
  std::vector<std::vector<std::vector<Vertex>>> gap(n);
  Orders rot(static_cast<std::size_t>(n) * (delta + 1));
  for (Vertex v = 0; v < n; ++v) {
    const auto& around = r.rotation(v);
    const int d = static_cast<int>(around.size());
    const int extra = delta - d;
    gap[v].resize(d);
    int next = n + v * delta;
    for (int j = 0; j < d; ++j) {
      int count = 1 + extra / d + (j < extra % d ? 1 : 0);
      rot[v].push_back(around[j]);
      for (int c = 0; c < count; ++c) {
        gap[v][j].push_back(next);
        rot[v].push_back(next);
        ++next;
      }
    }
    for (Vertex s : rot[v])
      if (s >= n) rot[s].push_back(v);
  }

  struct Quad {
    Vertex tail, head, first, last;
  };
  std::vector<Quad> quads;
  std::vector<std::vector<Vertex>> inner;
  for (const FaceWalk& f : r.faces()) {
    const int len = static_cast<int>(f.size());
    std::vector<Vertex> cycle;
    std::vector<const std::vector<Vertex>*> corner(len);
    for (int i = 0; i < len; ++i) {
      // Corner at f[i].to between f[i].from and its rotation successor.
      corner[i] = &gap[f[i].to][index_in(r.rotation(f[i].to), f[i].from)];
      cycle.insert(cycle.end(), corner[i]->begin(), corner[i]->end());
    }
    const int k = static_cast<int>(cycle.size());
    if (k < 3) throw Error("internal: satellite cycle shorter than three");
    for (int i = 0; i < k; ++i) {
      Vertex s = cycle[i];
      rot[s].push_back(cycle[(i + k - 1) % k]);
      rot[s].push_back(cycle[(i + 1) % k]);
    }
    for (int i = 0; i < len; ++i) {
      const auto& before = *corner[(i + len - 1) % len];
      quads.push_back({f[i].from, f[i].to, corner[i]->front(), before.back()});
    }
    inner.push_back(std::move(cycle));
  }

  {
    RotationSystem staged = rotation_from_orders(rot);
    const Graph& sg = staged.graph();
    std::vector<int> face_of_dart_size(2 * sg.m());
    for (const FaceWalk& f : staged.faces())
      for (const Dart& d : f)
        face_of_dart_size[2 * sg.edge_id(d.from, d.to) + (d.from < d.to ? 0 : 1)] =
            static_cast<int>(f.size());
    for (int e = 0; e < sg.m(); ++e)
      if (face_of_dart_size[2 * e] > 4 && face_of_dart_size[2 * e + 1] > 4)
        throw Error("internal: two large faces share an edge before zig-zagging");
  }

  // Face walk of a quad: tail -> head -> first -> last -> tail.
  for (const Quad& q : quads) add_chord(rot, q.last, q.tail, q.head, q.first);

  for (auto& cycle : inner) {
    auto lowest = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), lowest, cycle.end());
    std::deque<Vertex> poly(cycle.begin(), cycle.end());
    bool front = true;
    while (poly.size() > 3) {
      const std::size_t last = poly.size() - 1;
      if (front) {
        add_chord(rot, poly[0], poly[1], poly[last - 1], poly[last]);
        poly.pop_front();
      } else {
        add_chord(rot, poly[last - 2], poly[last - 1], poly[last], poly[0]);
        poly.pop_back();
      }
      front = !front;
    }
  }
  return rotation_from_orders(std::move(rot));
}

PullbackResult usm_pullback(const Graph& g, const Graph& h, const UniformShallowMinorMap& map,
                            const EmbeddingCertificate& cert_h, int samples, std::uint64_t seed) {
  if (auto why = check_minor_map(g, h, map); !why.empty()) throw Error("invalid minor map: " + why);
  if (cert_h.d != 1) throw Error("pullback takes a one-dimensional certificate");
  if (cert_h.f.rows() != h.n() || static_cast<int>(cert_h.y.size()) != h.n())
    throw Error("certificate does not match H");
  if (samples < 1) throw Error("pullback needs at least one sample");
  const int n = g.n();
  std::vector<std::vector<Vertex>> patches(n);
  for (Vertex x = 0; x < h.n(); ++x) patches[map.project[x]].push_back(x);

  // Expected ordered-pair sum of independent uniform representatives.
  std::vector<double> mean(n, 0.0), var(n, 0.0);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex x : patches[v]) mean[v] += cert_h.f(x, 0);
    mean[v] /= patches[v].size();
    for (Vertex x : patches[v]) var[v] += (cert_h.f(x, 0) - mean[v]) * (cert_h.f(x, 0) - mean[v]);
    var[v] /= patches[v].size();
  }
  double expected = 0.0;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v) expected += var[u] + var[v] + (mean[u] - mean[v]) * (mean[u] - mean[v]);

  auto pair_sum = [&](const Eigen::VectorXd& x) {
    return 2.0 * n * (x.array() - x.mean()).square().sum();
  };
  Rng rng(derive_seed(seed, "usm-pullback"));
  Eigen::VectorXd best(n);
  double best_sum = -1.0;
  PullbackResult out;
  for (int t = 0; t < samples; ++t) {
    Eigen::VectorXd x(n);
    for (Vertex v = 0; v < n; ++v) {
      std::uniform_int_distribution<std::size_t> pick(0, patches[v].size() - 1);
      x(v) = cert_h.f(patches[v][pick(rng)], 0);
    }
    double s = pair_sum(x);
    out.samples_used = t + 1;
    if (s > best_sum) {
      best_sum = s;
      best = x;
    }
    if (s >= expected * (1.0 - 1e-12)) {
      out.met_expectation = true;
      break;
    }
  }

  const double factor = 4.0 * map.patch_size * (2.0 * map.depth + 1.0);
  EmbeddingCertificate c;
  c.d = 1;
  c.f = Embedding(n, 1);
  c.f.col(0) = best.array() - best.mean();
  c.y.assign(n, 0.0);
  for (Vertex x = 0; x < h.n(); ++x) c.y[map.project[x]] += factor * cert_h.y[x];
  out.report = verify(c, g);
  out.certificate = std::move(c);
  return out;
}

int expansion_reduction_bound(int n) { return n * n + n + 1; }

ExpansionReduction expansion_reduction(const Graph& g, int k) {
  if (k < 1) throw Error("copy count must be positive");
  const int n = g.n();
  ExpansionReduction out;
  out.source = g;
  out.k = k;
  if (k < expansion_reduction_bound(n))
    out.warning = "k = " + std::to_string(k) + " is below n^2 + n + 1 = " +
                  std::to_string(expansion_reduction_bound(n));
  std::vector<Edge> es;
  es.reserve(static_cast<std::size_t>(2) * k * g.m());
  for (int e = 0; e < g.m(); ++e) {
    Vertex b = n * k + e;
    for (Vertex end : {g.edge(e).u, g.edge(e).v})
      for (int i = 0; i < k; ++i) es.push_back({end * k + i, b});
  }
  std::sort(es.begin(), es.end());
  out.graph = Graph(n * k + g.m(), es);
  return out;
}

VertexSet ExpansionReduction::forward(std::span<const Vertex> S) const {
  VertexSet in = normalize_set(source, S);
  std::vector<char> mark(source.n(), 0);
  VertexSet out;
  for (Vertex v : in) {
    mark[v] = 1;
    for (int i = 0; i < k; ++i) out.push_back(v * k + i);
  }
  for (int e = 0; e < source.m(); ++e)
    if (mark[source.edge(e).u] && mark[source.edge(e).v]) out.push_back(source.n() * k + e);
  return out;
}

VertexSet ExpansionReduction::backward(std::span<const Vertex> lifted) const {
  VertexSet in = normalize_set(graph, lifted);
  VertexSet out;
  for (Vertex x : in)
    if (x < source.n() * k) out.push_back(x / k);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

VertexSet ExpansionReduction::normalize(std::span<const Vertex> lifted) const {
  return forward(backward(lifted));
}

}  // namespace vsep
