#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vsep/certificates.hpp"
#include "vsep/graph.hpp"

namespace vsep {

struct SweepResult {
  VertexCut cut;
  int family = 0;           // 0: prefix sweep on f, 1: level sets of |f - median|
  int threshold_index = 0;  // position in that family's order
  std::vector<double> prefix_ratios;  // best ratio at each prefix position
  std::vector<double> level_ratios;   // ratio of each two-sided level set
};

/// Evaluates every threshold of both sweep families and returns the cut with
/// minimum vertex expansion (smaller side taken as S). Ties at equal f are
/// broken by vertex id.
SweepResult sweep_vertex_cut(const Graph& g, const EmbeddingCertificate& cert);
/// Same sweep for a plain vector of values.
SweepResult sweep_vertex_cut(const Graph& g, const std::vector<double>& f);

using Cutter = std::function<VertexCut(const Graph&)>;

struct SeparatorOptions {
  double alpha = 2.0 / 3.0;
  int max_size = 0;  // 0: unlimited; otherwise exceeding it throws
};

/// Cuts the largest remaining component and moves the cut's boundary into S
/// until the components pack into two sides of at most alpha n vertices.
Separator separator_from_cutter(const Graph& g, const Cutter& cutter, const SeparatorOptions& opts = {});

enum class DimredMethod { gaussian, coordinate, partition };

DimredMethod parse_dimred_method(const std::string& name);
std::string to_string(DimredMethod m);

struct PipelineOptions {
  int dim = 2;
  DimredMethod method = DimredMethod::gaussian;
  int trials = 16;
  int iters = 0;  // solver iterations, 0 picks a budget from the graph size
  std::uint64_t seed = 1;
  double alpha = 2.0 / 3.0;
};

struct CutAudit {
  int component_size = 0;
  double lambda2 = 0.0;        // Laplacian λ₂ of the component
  int max_degree = 0;
  double lambda2_star = 0.0;   // solver lower bound
  double gamma_d = 0.0;        // best d-dimensional certificate value
  double gamma_1 = 0.0;        // best 1-dimensional certificate value
  double psi_found = 0.0;      // expansion of the sweep cut
  int cut_size = 0;
  int boundary_size = 0;
  bool chain_holds = false;    // λ₂/Δ <= λ₂* <= γ^(d) <= γ^(1), within 1e-6
};

struct PipelineResult {
  Separator separator;
  EmbeddingCertificate certificate_d;
  EmbeddingCertificate certificate_1;
  SweepResult sweep;
  std::vector<CutAudit> audit;  // first entry: the input graph
};

/// One cut by the whole chain: solve λ₂*, extract a d-dimensional
/// certificate, reduce to one dimension and sweep.
struct CutOutcome {
  VertexCut cut;
  EmbeddingCertificate certificate_d;
  EmbeddingCertificate certificate_1;
  SweepResult sweep;
  CutAudit audit;
};
CutOutcome spectral_cut(const Graph& g, const PipelineOptions& opts, std::uint64_t seed);

/// Spectral cut on the input graph, then recursion to a separator.
PipelineResult full_pipeline(const Graph& g, const PipelineOptions& opts = {});

}  // namespace vsep
