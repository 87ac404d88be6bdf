#pragma once

#include <istream>
#include <string>
#include <vector>

#include "vsep/graph.hpp"

namespace vsep {

/// Directed edge u -> v.
struct Dart {
  Vertex from;
  Vertex to;
  friend bool operator==(const Dart&, const Dart&) = default;
};

/// A closed face walk, listed as the sequence of darts traversed.
using FaceWalk = std::vector<Dart>;

/// Cyclic neighbor orders per vertex describing an orientable embedding.
///
/// Face tracing follows the rule: after dart (u -> v) comes
/// (v -> succ_v(u)), where succ_v is the cyclic successor in v's order.
class RotationSystem {
 public:
  RotationSystem() = default;
  /// Each rotations[v] must be a permutation of the neighbors of v in g.
  RotationSystem(Graph g, std::vector<std::vector<Vertex>> rotations);

  const Graph& graph() const { return graph_; }
  const std::vector<Vertex>& rotation(Vertex v) const { return rot_[v]; }
  const std::vector<std::vector<Vertex>>& rotations() const { return rot_; }

  /// Cyclic successor of u in the rotation at v.
  Vertex succ(Vertex v, Vertex u) const;
  /// Cyclic predecessor of u in the rotation at v.
  Vertex pred(Vertex v, Vertex u) const;

  /// Every dart exactly once, grouped into faces. Deterministic order:
  /// faces are started from the smallest untraced dart (from, then rotation index).
  std::vector<FaceWalk> faces() const;
  int face_count() const { return static_cast<int>(faces().size()); }

  /// Orientable genus (2 - n + m - f) / 2. Throws for disconnected graphs.
  int euler_genus() const;

  /// True when every face walk has length three.
  bool is_triangulation() const;

 private:
  Graph graph_;
  std::vector<std::vector<Vertex>> rot_;
  std::vector<std::vector<int>> pos_;  // pos_[v][i]: index in rot_[v] of neighbors(v)[i]
};

struct LoadedRotation {
  RotationSystem rotation;
  LabelMap labels;
};

/// Parses "v: a b c ..." lines; '#' comments and blank lines are skipped.
LoadedRotation parse_rotation(std::istream& in);
LoadedRotation parse_rotation_string(const std::string& text);
LoadedRotation load_rotation(const std::string& path);

void write_rotation(std::ostream& out, const RotationSystem& r, const LabelMap* labels = nullptr);

/// Builds a rotation system from orders alone (the graph is implied).
RotationSystem rotation_from_orders(std::vector<std::vector<Vertex>> orders);

// Standard embedded families.
RotationSystem tetrahedron();
RotationSystem octahedron();
/// Cycle drawn in the plane (two faces).
RotationSystem planar_cycle(int n);
/// K5 on the torus (five faces).
RotationSystem toroidal_k5();
/// K3,3 on the torus (three hexagonal faces).
RotationSystem toroidal_k33();
/// rows x cols grid on the torus with one diagonal per square; rows, cols >= 3.
RotationSystem torus_triangulation(int rows, int cols);

}  // namespace vsep
