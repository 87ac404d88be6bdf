#pragma once

#include <cstdint>
#include <vector>

#include "vsep/certificates.hpp"
#include "vsep/graph.hpp"

namespace vsep {

/// Vertex weights on the nonnegative part of the unit p-sphere and the spread they give.
struct SpreadWeights {
  std::vector<double> omega;
  int p = 2;
  double value = 0.0;
  std::vector<double> best_history;  // best value after each ascent step
};

/// Ordered-pair sum of vertex-weighted shortest-path distances, where a path
/// costs its interior weights plus half of each endpoint weight.
double spread_value(const Graph& g, const std::vector<double>& omega);

/// Supergradient of the spread at omega: each ordered pair charges one
/// shortest path (smallest-id predecessor ties), interior vertices 1 and endpoints 1/2.
std::vector<double> spread_supergradient(const Graph& g, const std::vector<double>& omega);

/// Projected supergradient ascent from uniform weights; returns the best iterate.
/// `iters` = 0 selects 200.
SpreadWeights maximize_spread(const Graph& g, int p, int iters = 0, std::uint64_t seed = 1);

/// Euclidean projection of z onto {w >= 0, |w|_1 = 1}.
std::vector<double> project_to_simplex(std::vector<double> z);

/// One-dimensional L2 spread certificate y = omega², f the better of a scaled
/// partition line embedding and a scaled single-source distance map.
SpreadEmbeddingCertificate spread_certificate_from_weights(const Graph& g, const SpreadWeights& w,
                                                           std::uint64_t seed = 1);

struct SpreadChainReport {
  double spread = 0.0;            // s2 lower bound
  double spread_sq_over_n2 = 0.0;
  double squared_spread = 0.0;    // Σ d(u, v)² at the same weights, >= the previous line
  double q2_value = 0.0;          // value of the one-dimensional certificate
  double gap = 0.0;               // spread_sq_over_n2 / q2_value
};

SpreadChainReport spread_chain_check(const Graph& g, const SpreadWeights& w,
                                     const SpreadEmbeddingCertificate& cert);

}  // namespace vsep
