#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace vsep {

using Vertex = int;
using VertexSet = std::vector<Vertex>;

/// Base error type for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph with dense vertex ids 0..n-1.
///
/// Neighbor lists are sorted and duplicate-free, and edges are stored once
/// with u < v in lexicographic order. Instances are immutable.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list. Self-loops and parallel edges throw.
  Graph(int n, std::span<const Edge> edges);
  Graph(int n, std::initializer_list<Edge> edges)
      : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  int max_degree() const;

  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  /// Edge ids parallel to neighbors(v).
  const std::vector<int>& incident_edges(Vertex v) const { return inc_[v]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int id) const { return edges_[id]; }

  bool has_edge(Vertex u, Vertex v) const;
  /// Id of edge uv, or -1.
  int edge_id(Vertex u, Vertex v) const;

  bool connected() const;
  /// Component label per vertex and the component count.
  std::pair<std::vector<int>, int> components() const;

  /// Subgraph induced by `keep`; vertex i of the result is keep[i].
  Graph induced(std::span<const Vertex> keep) const;

  /// Canonical text: "n m" header then one "u v" line per edge, u < v.
  std::string canonical_text() const;
  /// FNV-1a 64-bit digest of canonical_text(), as 16 hex digits.
  std::string hash() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::vector<int>> inc_;
  std::vector<Edge> edges_;
};

/// Original input labels for densified vertex ids.
struct LabelMap {
  std::vector<long long> labels;  // dense id -> original label
  long long label(Vertex v) const { return labels.empty() ? v : labels[v]; }
};

struct LoadedGraph {
  Graph graph;
  LabelMap labels;
};

/// Parses the edge-list format: "u v" per line, '#' comments, blank lines.
LoadedGraph parse_edge_list(std::istream& in);
LoadedGraph parse_edge_list_string(const std::string& text);
LoadedGraph load_edge_list(const std::string& path);

void write_edge_list(std::ostream& out, const Graph& g, const LabelMap* labels = nullptr);

/// D - A.
Eigen::MatrixXd laplacian(const Graph& g);

/// Vertices outside S adjacent to some vertex of S, ascending.
VertexSet vertex_boundary(const Graph& g, std::span<const Vertex> S);
/// Number of edges with exactly one endpoint in S.
int edge_boundary_size(const Graph& g, std::span<const Vertex> S);

struct Expansion {
  double psi;  // |∂S| / |S|
  double phi;  // |δ(S)| / |S|
};

/// Requires 1 <= |S| <= floor(n/2).
Expansion expansion_of(const Graph& g, std::span<const Vertex> S);

/// A small vertex set together with its vertex boundary.
class VertexCut {
 public:
  VertexCut() = default;
  /// Throws if S is empty, has duplicates, is out of range, or exceeds n/2.
  VertexCut(const Graph& g, VertexSet S);

  const VertexSet& set() const { return set_; }
  const VertexSet& boundary() const { return boundary_; }
  double ratio() const {
    return static_cast<double>(boundary_.size()) / static_cast<double>(set_.size());
  }

 private:
  VertexSet set_;
  VertexSet boundary_;
};

/// Disjoint (S, A, B) covering V with no A-B edge.
struct Separator {
  VertexSet S, A, B;
  double alpha = 2.0 / 3.0;
};

/// Largest part size allowed by a balance bound alpha on n vertices.
int balance_cap(int n, double alpha);

/// Checks disjointness, coverage, balance and the absence of A-B edges.
/// Returns an empty string when valid, otherwise a description.
std::string check_separator(const Graph& g, const Separator& sep);

/// Normalizes a vertex list: sorted, unique, range-checked.
VertexSet normalize_set(const Graph& g, std::span<const Vertex> S);

// Common families used by tests, the corpus harness and the CLI.
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph star_graph(int leaves);
Graph grid_graph(int rows, int cols);
Graph complete_bipartite(int a, int b);

}  // namespace vsep
