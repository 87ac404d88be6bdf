#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vsep/graph.hpp"

namespace vsep {

/// Exact minimum ratio with the lexicographically least minimizing set.
struct RatioWitness {
  double value = 0.0;
  long long numerator = 0;
  long long denominator = 1;
  VertexSet witness;
};

inline constexpr int kBruteExpansionCap = 24;
inline constexpr int kBruteSeparatorCap = 20;
inline constexpr int kDenseLambdaCap = 2000;

/// min |∂S|/|S| over 1 <= |S| <= n/2, by enumeration (n <= 24).
RatioWitness brute_psi(const Graph& g);
/// min |δ(S)|/|S| over 1 <= |S| <= n/2, by enumeration (n <= 24).
RatioWitness brute_phi(const Graph& g);

/// Second smallest Laplacian eigenvalue by full eigendecomposition.
double dense_lambda2(const Graph& g);

/// Second smallest eigenvalue of the weighted Laplacian with edge weights w.
double weighted_lambda2_dense(const Graph& g, const std::vector<double>& w);

/// Orbit id per edge under the automorphism group (backtracking, n <= 10).
std::vector<int> edge_orbits(const Graph& g);

struct Lambda2StarOracle {
  double value = 0.0;               // lambda_2 of the best point found
  std::vector<double> edge_weight;  // off-diagonal reweighting per edge id
  int orbit_count = 0;
  double final_step = 0.0;
};

/// Grid search over orbit-symmetric reweightings followed by compass-pattern
/// refinement. The result is feasible, so `value` is a lower bound on the
/// optimum; symmetric optima exist, so the search is complete up to the
/// refinement tolerance. At most 4 free orbit parameters.
Lambda2StarOracle oracle_lambda2_star(const Graph& g, int grid = 60,
                                      const std::vector<int>* orbits = nullptr);

/// Assigns items to two bins of capacity `cap` (exact subset-sum);
/// returns the bin of each item, or nothing if impossible.
std::optional<std::vector<int>> pack_two_bins(const std::vector<int>& sizes, int cap);

/// Splits V \ S into A and B by packing the components of G - S.
std::optional<Separator> separator_from_set(const Graph& g, const VertexSet& S, double alpha);

/// Minimum size alpha-separator by enumeration (n <= 20).
Separator brute_separator(const Graph& g, double alpha = 2.0 / 3.0);

struct OracleReport {
  RatioWitness psi;
  RatioWitness phi;
  double lambda2 = 0.0;
  std::vector<std::string> notes;
};

OracleReport oracle_report(const Graph& g);

}  // namespace vsep
