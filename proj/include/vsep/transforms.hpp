#pragma once

#include <string>
#include <vector>

#include "vsep/certificates.hpp"
#include "vsep/graph.hpp"
#include "vsep/rotation.hpp"

namespace vsep {

/// H-vertex to G-vertex projection whose fibres ("patches") all have size
/// `patch_size` and induce connected subgraphs of diameter <= `depth`.
struct UniformShallowMinorMap {
  std::vector<Vertex> project;
  int patch_size = 1;
  int depth = 0;
};

/// Empty string when `map` exhibits G as a uniform shallow minor of H.
std::string check_minor_map(const Graph& g, const Graph& h, const UniformShallowMinorMap& map);

/// Graph on V(G) obtained by contracting every patch of H.
Graph contract_patches(const Graph& h, const UniformShallowMinorMap& map, int n);

/// Replaces every edge by a midpoint and every triangle by four, `rounds` times.
/// Old vertices keep their ids; the midpoint of edge e gets id n + e.
RotationSystem hexagonal_subdivide(const RotationSystem& r, int rounds = 1);

struct DegreeReduction {
  RotationSystem rotation;
  UniformShallowMinorMap map;
};

/// Replaces each vertex v by a binary tree on Δ copies (ids v*Δ + i) so the
/// result has maximum degree <= 4 and the same genus. Identity when Δ < 2.
DegreeReduction degree_reduce(const RotationSystem& r);

/// Adds Δ satellites per vertex (ids n + v*Δ + i) and triangulates every
/// face, keeping the genus. Inputs need at least three vertices.
RotationSystem triangulate(const RotationSystem& r);

struct PullbackResult {
  EmbeddingCertificate certificate;
  VerifyReport report;
  int samples_used = 0;
  bool met_expectation = false;
};

inline constexpr int kDefaultPullbackSamples = 64;

/// Transports a one-dimensional certificate on H to G through a uniform
/// shallow minor map. The value grows by exactly 4 * patch_size * (2*depth + 1).
PullbackResult usm_pullback(const Graph& g, const Graph& h, const UniformShallowMinorMap& map,
                            const EmbeddingCertificate& cert_h, int samples = kDefaultPullbackSamples,
                            std::uint64_t seed = 1);

/// Bisected graph with each original vertex blown up into k copies. Copy i of
/// v has id v*k + i; the bisection vertex of edge e has id n*k + e and is
/// adjacent to every copy of both endpoints.
struct ExpansionReduction {
  Graph source;
  Graph graph;
  int k = 0;
  std::string warning;

  /// All copies of S plus the bisection vertices of edges inside S.
  VertexSet forward(std::span<const Vertex> S) const;
  /// Original vertices with at least one copy in the set.
  VertexSet backward(std::span<const Vertex> lifted) const;
  /// forward(backward(lifted)).
  VertexSet normalize(std::span<const Vertex> lifted) const;
};

ExpansionReduction expansion_reduction(const Graph& g, int k);

/// Smallest copy count for which the normalization never hurts: n² + n + 1.
int expansion_reduction_bound(int n);

}  // namespace vsep
