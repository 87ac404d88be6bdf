#include <doctest.h>

#include <cmath>
#include <numbers>

#include "vsep/transforms.hpp"

using namespace vsep;

namespace {

int face_count(const RotationSystem& r) { return r.face_count(); }

std::vector<RotationSystem> triangulated_corpus() {
  return {tetrahedron(), octahedron(), torus_triangulation(3, 3), torus_triangulation(3, 4),
          torus_triangulation(4, 5)};
}

std::vector<RotationSystem> embedded_corpus() {
  auto v = triangulated_corpus();
  v.push_back(toroidal_k5());
  v.push_back(toroidal_k33());
  v.push_back(planar_cycle(3));
  v.push_back(planar_cycle(7));
  v.push_back(rotation_from_orders({{1, 2, 3}, {0}, {0}, {0}}));
  v.push_back(rotation_from_orders({{1}, {0, 2}, {1, 3}, {2}}));
  return v;
}

Embedding cosine_embedding(int n) {
  Embedding f(n, 1);
  for (int i = 0; i < n; ++i) f(i, 0) = std::cos(2.0 * std::numbers::pi * i / n);
  return f;
}

}  // namespace

TEST_SUITE("transforms") {
TEST_CASE("hexagonal subdivision counts") {
  auto t = hexagonal_subdivide(tetrahedron(), 1);
  CHECK(t.graph().n() == 10);
  CHECK(t.graph().m() == 24);
  CHECK(face_count(t) == 16);
  CHECK(t.euler_genus() == 0);
  CHECK(t.is_triangulation());

  auto o = hexagonal_subdivide(octahedron(), 1);
  CHECK(o.graph().n() == 18);
  CHECK(o.graph().m() == 48);
  CHECK(face_count(o) == 32);
  CHECK(o.euler_genus() == 0);

  auto same = hexagonal_subdivide(octahedron(), 0);
  CHECK(same.graph() == octahedron().graph());
  CHECK(same.rotations() == octahedron().rotations());

  CHECK_THROWS_AS(hexagonal_subdivide(planar_cycle(4), 1), Error);
}

TEST_CASE("hexagonal subdivision over a corpus") {
  for (const auto& base : triangulated_corpus()) {
    RotationSystem cur = base;
    for (int k = 1; k <= 3; ++k) {
      int n = cur.graph().n(), m = cur.graph().m(), t = face_count(cur);
      cur = hexagonal_subdivide(cur, 1);
      CHECK(cur.graph().n() == n + m);
      CHECK(cur.graph().m() == 2 * m + 3 * t);
      CHECK(face_count(cur) == 4 * t);
      CHECK(cur.is_triangulation());
      CHECK(cur.euler_genus() == base.euler_genus());
    }
  }
}

TEST_CASE("degree reduction examples") {
  auto k5 = degree_reduce(toroidal_k5());
  CHECK(k5.rotation.graph().n() == 20);
  CHECK(k5.rotation.graph().max_degree() <= 4);
  CHECK(k5.rotation.euler_genus() == 1);
  CHECK(k5.map.patch_size == 4);
  CHECK(k5.map.depth <= 4);

  auto c4 = degree_reduce(planar_cycle(4));
  CHECK(c4.rotation.graph().n() == 8);
  CHECK(c4.rotation.euler_genus() == 0);
  for (Vertex v = 0; v < 4; ++v) CHECK(c4.rotation.graph().has_edge(2 * v, 2 * v + 1));

  auto star = degree_reduce(rotation_from_orders({{1, 2, 3}, {0}, {0}, {0}}));
  const Graph& h = star.rotation.graph();
  CHECK(h.n() == 12);
  CHECK(star.rotation.euler_genus() == 0);
  // Center patch: root slot 1 with children 0 and 2.
  CHECK(h.has_edge(1, 0));
  CHECK(h.has_edge(1, 2));
  CHECK_FALSE(h.has_edge(0, 2));

  auto k2 = degree_reduce(rotation_from_orders({{1}, {0}}));
  CHECK(k2.rotation.graph() == path_graph(2));
  CHECK(k2.map.patch_size == 1);
}

TEST_CASE("degree reduction invariants") {
  for (const auto& r : embedded_corpus()) {
    auto red = degree_reduce(r);
    const Graph& g = r.graph();
    const Graph& h = red.rotation.graph();
    int delta = g.max_degree();
    int log2ceil = 0;
    while ((1 << log2ceil) < delta) ++log2ceil;
    CHECK(h.n() == g.n() * delta);
    CHECK(h.max_degree() <= 4);
    CHECK(red.rotation.euler_genus() == r.euler_genus());
    CHECK(red.map.depth <= 2 * log2ceil);
    CHECK(check_minor_map(g, h, red.map) == "");
    CHECK(contract_patches(h, red.map, g.n()) == g);
  }
}

TEST_CASE("minor map checker rejects bad maps") {
  Graph c8 = cycle_graph(8), c4 = cycle_graph(4);
  UniformShallowMinorMap good{{0, 0, 1, 1, 2, 2, 3, 3}, 2, 1};
  CHECK(check_minor_map(c4, c8, good) == "");
  UniformShallowMinorMap shallow = good;
  shallow.depth = 0;
  CHECK(check_minor_map(c4, c8, shallow) != "");
  UniformShallowMinorMap split{{0, 1, 0, 1, 2, 2, 3, 3}, 2, 1};
  CHECK(check_minor_map(c4, c8, split) != "");
  UniformShallowMinorMap uneven{{0, 0, 0, 1, 2, 2, 3, 3}, 2, 1};
  CHECK(check_minor_map(c4, c8, uneven) != "");
}

TEST_CASE("triangulation examples") {
  auto c3 = triangulate(planar_cycle(3));
  CHECK(c3.graph().n() == 9);
  CHECK(c3.is_triangulation());
  CHECK(c3.euler_genus() == 0);

  auto k5 = triangulate(toroidal_k5());
  CHECK(k5.graph().n() == 25);
  CHECK(k5.is_triangulation());
  CHECK(k5.euler_genus() == 1);

  CHECK_THROWS_AS(triangulate(rotation_from_orders({{1}, {0}})), Error);
}

TEST_CASE("triangulation invariants") {
  for (const auto& r : embedded_corpus()) {
    auto t = triangulate(r);
    const Graph& g = r.graph();
    int delta = g.max_degree();
    CHECK(t.graph().n() == (delta + 1) * g.n());
    CHECK(t.is_triangulation());
    CHECK(t.euler_genus() == r.euler_genus());
    CHECK(t.graph().max_degree() <= std::max(7, 4 * delta));
    for (const Edge& e : g.edges()) CHECK(t.graph().has_edge(e.u, e.v));
  }
}

TEST_CASE("pullback through the identity map") {
  Graph c6 = cycle_graph(6);
  auto cert = certificate_for_embedding(c6, cosine_embedding(6));
  UniformShallowMinorMap id{{0, 1, 2, 3, 4, 5}, 1, 0};
  auto out = usm_pullback(c6, c6, id, cert, 8, 3);
  CHECK(out.report.feasible);
  CHECK(out.certificate.value() == doctest::Approx(4.0 * cert.value()).epsilon(1e-12));
}

TEST_CASE("pullback of C4 from C8") {
  Graph c8 = cycle_graph(8), c4 = cycle_graph(4);
  auto cert = certificate_for_embedding(c8, cosine_embedding(8));
  UniformShallowMinorMap map{{0, 0, 1, 1, 2, 2, 3, 3}, 2, 1};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto out = usm_pullback(c4, c8, map, cert, kDefaultPullbackSamples, seed);
    CHECK(out.report.feasible);
    CHECK(out.certificate.value() == doctest::Approx(24.0 * cert.value()).epsilon(1e-12));
  }
}

TEST_CASE("pullback of P2 from P4") {
  Graph p4 = path_graph(4), p2 = path_graph(2);
  Embedding f(4, 1);
  f << -3, -1, 1, 3;
  auto cert = certificate_for_embedding(p4, f);
  UniformShallowMinorMap map{{0, 0, 1, 1}, 2, 1};
  auto out = usm_pullback(p2, p4, map, cert);
  CHECK(out.report.feasible);
  CHECK(out.certificate.value() == doctest::Approx(24.0 * cert.value()));
}

TEST_CASE("pullback through degree reduction") {
  for (const auto& r : embedded_corpus()) {
    auto red = degree_reduce(r);
    const Graph& h = red.rotation.graph();
    Embedding f(h.n(), 1);
    for (Vertex x = 0; x < h.n(); ++x) f(x, 0) = std::sin(1.0 + red.map.project[x]) + 0.01 * (x % 3);
    auto cert = certificate_for_embedding(h, f);
    auto out = usm_pullback(r.graph(), h, red.map, cert);
    CHECK(out.report.feasible);
  }
}

TEST_CASE("expansion reduction examples") {
  auto c4 = expansion_reduction(cycle_graph(4), 21);
  CHECK(c4.graph.n() == 88);
  CHECK(c4.warning.empty());
  VertexSet pair{0, 1};
  auto lifted = c4.forward(pair);
  CHECK(lifted.size() == 43);
  CHECK(vertex_boundary(c4.graph, lifted).size() == 2);
  CHECK(c4.backward(lifted) == pair);

  auto k2 = expansion_reduction(path_graph(2), 7);
  CHECK(k2.graph.n() == 15);
  CHECK(k2.warning.empty());
  VertexSet u{0};
  auto lu = k2.forward(u);
  CHECK(lu.size() == 7);
  CHECK(vertex_boundary(k2.graph, lu).size() == 1);

  CHECK_FALSE(expansion_reduction(cycle_graph(4), 5).warning.empty());
}

TEST_CASE("expansion reduction forward map on all subsets") {
  std::vector<Graph> graphs{path_graph(5), cycle_graph(6), complete_graph(5), star_graph(5),
                            grid_graph(2, 3), complete_bipartite(3, 3)};
  for (const Graph& g : graphs) {
    const int n = g.n();
    auto red = expansion_reduction(g, expansion_reduction_bound(n));
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      VertexSet S;
      for (int v = 0; v < n; ++v)
        if (mask >> v & 1) S.push_back(v);
      int inside = 0;
      for (const Edge& e : g.edges())
        if ((mask >> e.u & 1) && (mask >> e.v & 1)) ++inside;
      auto lifted = red.forward(S);
      CHECK(static_cast<int>(lifted.size()) == static_cast<int>(S.size()) * red.k + inside);
      CHECK(static_cast<int>(vertex_boundary(red.graph, lifted).size()) == edge_boundary_size(g, S));
    }
  }
}

TEST_CASE("expansion reduction normalization never hurts") {
  std::vector<Graph> graphs{path_graph(3), cycle_graph(4), star_graph(3), complete_graph(4),
                            path_graph(5), cycle_graph(5)};
  for (const Graph& g : graphs) {
    const int n = g.n(), m = g.m();
    const int k = expansion_reduction_bound(n);
    auto red = expansion_reduction(g, k);
    std::vector<int> levels = n <= 4 ? std::vector<int>{0, 1, 2, k / 2, k - 1, k}
                                     : std::vector<int>{0, 1, k - 1, k};
    const int L = static_cast<int>(levels.size());
    long long profiles = 1;
    for (int v = 0; v < n; ++v) profiles *= L;
    int checked = 0;
    for (long long code = 0; code < profiles; ++code) {
      VertexSet copies;
      long long c = code;
      for (int v = 0; v < n; ++v) {
        for (int i = 0; i < levels[c % L]; ++i) copies.push_back(v * k + i);
        c /= L;
      }
      for (unsigned emask = 0; emask < (1u << m); ++emask) {
        VertexSet lifted = copies;
        for (int e = 0; e < m; ++e)
          if (emask >> e & 1) lifted.push_back(n * k + e);
        if (lifted.empty()) continue;
        auto norm = red.normalize(lifted);
        if (norm.empty()) continue;
        double before = static_cast<double>(vertex_boundary(red.graph, lifted).size()) / lifted.size();
        double after = static_cast<double>(vertex_boundary(red.graph, norm).size()) / norm.size();
        CHECK(after <= before + 1e-12);
        ++checked;
      }
    }
    CHECK(checked > 0);
  }
}
}
