#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "vsep/certificates.hpp"
#include "vsep/graph.hpp"
#include "vsep/rotation.hpp"

namespace vsep {

enum class BallKind { euclidean, geodesic };

/// Closed balls. Euclidean balls live in R^d (centers are n x d); geodesic
/// balls are caps on the unit sphere S^d (centers are n x (d+1) unit rows,
/// radii are angles).
struct BallSystem {
  int d = 2;
  BallKind kind = BallKind::euclidean;
  Eigen::MatrixXd centers;
  std::vector<double> radii;

  int size() const { return static_cast<int>(radii.size()); }
};

/// Edge uv iff the balls meet: distance <= r_u + r_v + slack.
Graph intersection_graph(const BallSystem& b, double slack = 0.0);

struct PlyReport {
  int ply = 0;
  bool exact = false;  // exhaustive probing, otherwise Monte-Carlo
  int probes = 0;
};

/// Largest number of open balls sharing a point. Exact probing for
/// euclidean d <= 2 and for caps on S^2; Monte-Carlo with `samples` points otherwise.
PlyReport ply(const BallSystem& b, int samples = 20000, std::uint64_t seed = 1);

/// Each point joined to its k nearest others (ties go to the smaller index).
Graph knn_graph(const Eigen::MatrixXd& points, int k);

/// Inverse stereographic image of a euclidean system in R^d on S^d.
BallSystem lift_to_sphere(const BallSystem& b);

/// Image of every cap under the sphere automorphism sending `a` (|a| < 1) to the origin.
BallSystem mobius_transform(const BallSystem& b, const Eigen::VectorXd& a);

/// Norm of the mean cap center.
double center_offset(const BallSystem& b);

/// Conformal recentering so the cap centers average to the origin.
/// Throws when some point is covered by ceil(n/2) caps or on non-convergence.
BallSystem sphere_normalize(const BallSystem& b, double target = 1e-12);

struct CirclePacking {
  BallSystem plane;   // euclidean d = 2, outer face circles have radius 1
  BallSystem sphere;  // normalized caps on S^2
  double residual = 0.0;  // worst interior angle-sum error
  int sweeps = 0;
};

inline constexpr double kPackingResidual = 1e-12;
inline constexpr int kPackingSweeps = 100000;

/// Tangency packing of a simple planar triangulation (n >= 4).
CirclePacking circle_pack(const RotationSystem& r);

/// Ball certificate of dimension d+1 from centered caps on S^d: f = centers,
/// s = chordal radii 2 sin(r/2). Throws if an edge of g is not realized.
BallCertificate ballsystem_to_certificate(const BallSystem& b, const Graph& g);

/// Bound (A_d / V_d * k / n)^(2/d) on the ball value of a k-ply system on S^d.
double kply_ball_bound(int d, int k, int n);

/// Delaunay triangulation of three outer corners and n-3 uniform points in
/// the unit disk; every face, including the outer one, is a triangle.
RotationSystem generate_random_triangulation(int n, std::uint64_t seed);

/// Union of k layers of balls in the unit cube, each layer a nearest
/// neighbor system of about n/k disjoint balls; ply at most k.
BallSystem generate_kply_disks(int n, int k, std::uint64_t seed, int d = 2);

/// Uniform points in the unit cube [0,1]^d.
Eigen::MatrixXd random_points(int n, int d, std::uint64_t seed);

nlohmann::json to_json(const BallSystem& b);
BallSystem ball_system_from_json(const nlohmann::json& doc);

}  // namespace vsep
