#pragma once

#include <cstdint>
#include <vector>

#include "vsep/certificates.hpp"
#include "vsep/graph.hpp"

namespace vsep {

inline constexpr int kDefaultTrials = 64;

/// Best of `trials` projections onto random Gaussian directions, each
/// re-centered and given its optimal y.
EmbeddingCertificate gaussian_project(const EmbeddingCertificate& cert, const Graph& g,
                                      int trials = kDefaultTrials, std::uint64_t seed = 1);

/// Best single coordinate of f, re-centered with its optimal y.
EmbeddingCertificate best_coordinate(const EmbeddingCertificate& cert, const Graph& g);

struct LineEmbedding {
  std::vector<double> f;
  bool degenerate = false;  // zero-diameter metric
  int scales = 0;
  double lipschitz = 0.0;   // measured before normalization
};

/// Random sum of truncated distance-to-cluster-boundary functions over
/// ball-carving partitions at scales 2^j. The result satisfies
/// |f(u) - f(v)| <= d(u, v) for every pair under the shortest-path metric
/// of the edge lengths, with equality for the stretched pair.
/// `padding` is the truncation divisor (0 selects 64 ln(n + 1)); `levels`
/// limits the number of scales, coarsest first (0 keeps all).
LineEmbedding partition_line_embed(const Graph& g, const std::vector<double>& edge_length,
                                   std::uint64_t seed, int levels = 0, double padding = 0.0);

/// All-pairs shortest path distances under nonnegative edge lengths.
std::vector<std::vector<double>> all_pairs_distances(const Graph& g, const std::vector<double>& edge_length);

/// Line embedding of the metric |f(u) - f(v)|, keeping y up to the
/// normalization change; best of `trials`.
EmbeddingCertificate partition_dimred(const EmbeddingCertificate& cert, const Graph& g,
                                      std::uint64_t seed = 1, int trials = kDefaultTrials);

}  // namespace vsep
