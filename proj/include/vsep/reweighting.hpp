#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vsep/certificates.hpp"
#include "vsep/eigs.hpp"
#include "vsep/graph.hpp"

namespace vsep {

/// Symmetric stochastic matrix supported on edges and loops, stored as one
/// weight per edge id plus the loop weight of every vertex.
struct Reweighting {
  std::vector<double> edge;
  std::vector<double> loop;

  Eigen::MatrixXd dense(const Graph& g) const;
};

/// Builds a reweighting from edge weights; loops take the remaining mass.
Reweighting from_edge_weights(const Graph& g, std::vector<double> w);
/// I/2 + A/(2Δ).
Reweighting lazy_walk(const Graph& g);
/// I - L/Δ.
Reweighting max_degree_walk(const Graph& g);
/// Empty string when P is a valid reweighting for g within tol.
std::string check_reweighting(const Graph& g, const Reweighting& P, double tol = 1e-9);

/// I - P as a sparse matrix (the Laplacian of the edge weights).
SparseMatrix reweighted_laplacian(const Graph& g, const std::vector<double>& edge_weight);

/// λ₂(I - P).
double lambda2_of(const Graph& g, const Reweighting& P);

/// Euclidean projection onto {w >= 0, Σ_{e∋v} w_e <= 1}. `dual` holds the
/// vertex multipliers and is reused as a warm start.
std::vector<double> project_edge_weights(const Graph& g, const std::vector<double>& z,
                                         std::vector<double>* dual = nullptr);

struct SolveOptions {
  int iters = 0;            // 0 picks a budget from the graph size
  double step_scale = 0.0;  // c in c/sqrt(t); 0 means 1/Δ
  std::uint64_t seed = 1;
  double tol = 1e-9;        // stop once the best value stalls by less than tol
  int stall_window = 0;     // 0 picks max(200, iters/5)
};

struct SolveTrace {
  std::vector<double> values;  // λ₂ at each iterate
  std::vector<double> best;    // running maximum
  std::vector<double> steps;
  double final_gap = 0.0;      // λ₃ - λ₂ at the best iterate
  std::uint64_t seed = 0;
  int iterations = 0;
  bool stalled = false;        // stopped early by the stall rule
  std::string status;
};

struct SolveResult {
  Reweighting P;
  double value = 0.0;
  SolveTrace trace;
  bool disconnected = false;
};

/// Projected supergradient ascent on λ₂(I - P). The returned value is λ₂ of
/// a feasible P, hence a lower bound on the optimum; it is never below
/// λ₂(G)/Δ because the max-degree walk is always a candidate.
SolveResult solve_lambda2_star(const Graph& g, const SolveOptions& opts = {});

/// Certificate from the eigenvectors of I - P for λ₂..λ_{d+1} with the
/// optimal y. When d > n - 1 the dimension drops to n - 1 and `warning` is set.
EmbeddingCertificate extract_dual_embedding(const Graph& g, const Reweighting& P, int d,
                                            std::string* warning = nullptr);

}  // namespace vsep
