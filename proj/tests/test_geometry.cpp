#include <doctest.h>

#include <cmath>
#include <numbers>

#include "vsep/geometry.hpp"

using namespace vsep;

namespace {

BallSystem line_balls(std::vector<double> centers, double radius) {
  BallSystem b;
  b.d = 1;
  b.centers.resize(static_cast<Eigen::Index>(centers.size()), 1);
  for (std::size_t i = 0; i < centers.size(); ++i) b.centers(static_cast<Eigen::Index>(i), 0) = centers[i];
  b.radii.assign(centers.size(), radius);
  return b;
}

double max_tangency_error(const BallSystem& b, const Graph& g) {
  double worst = 0.0;
  for (const Edge& e : g.edges()) {
    Eigen::VectorXd a = b.centers.row(e.u), c = b.centers.row(e.v);
    double ang = 2.0 * std::atan2((a - c).norm(), (a + c).norm());
    worst = std::max(worst, std::abs(ang - b.radii[e.u] - b.radii[e.v]));
  }
  return worst;
}

}  // namespace

TEST_SUITE("geometry") {
TEST_CASE("intersection graph on the line") {
  CHECK(intersection_graph(line_balls({0, 1.5}, 1)).m() == 1);
  CHECK(intersection_graph(line_balls({0, 2}, 1)).m() == 1);
  CHECK(intersection_graph(line_balls({0, 2.1}, 1)).m() == 0);
}

TEST_CASE("ply by probing") {
  auto overlap = ply(line_balls({0, 1.5}, 1));
  CHECK(overlap.ply == 2);
  CHECK(overlap.exact);
  CHECK(ply(line_balls({0, 5, 10}, 1)).ply == 1);
  CHECK(ply(line_balls({0, 2}, 1)).ply == 1);

  BallSystem tri;
  tri.d = 2;
  tri.centers.resize(3, 2);
  tri.centers << 0, 0, 1e-3, 0, 0, 1e-3;
  tri.radii = {1, 1, 1};
  CHECK(ply(tri).ply == 3);

  // Lens of two disks: the common region with a third disk only meets near a crossing.
  BallSystem lens;
  lens.d = 2;
  lens.centers.resize(3, 2);
  lens.centers << 0, 0, 1.8, 0, 0.9, 0.9;
  lens.radii = {1, 1, 0.5};
  CHECK(ply(lens).ply == 3);

  BallSystem cube = tri;
  cube.d = 3;
  cube.centers.resize(2, 3);
  cube.centers << 0, 0, 0, 5, 0, 0;
  cube.radii = {1, 1};
  auto mc = ply(cube, 2000);
  CHECK_FALSE(mc.exact);
  CHECK(mc.ply == 1);
}

TEST_CASE("k nearest neighbors") {
  Eigen::MatrixXd line(4, 1);
  line << 0, 1, 2.5, 4.5;
  Graph g = knn_graph(line, 1);
  CHECK(g == path_graph(4));
  Eigen::MatrixXd pts = random_points(6, 2, 3);
  CHECK(knn_graph(pts, 5) == complete_graph(6));
  CHECK(knn_graph(pts, 9) == complete_graph(6));
  Eigen::MatrixXd two(2, 2);
  two << 0, 0, 1, 1;
  CHECK(knn_graph(two, 1).m() == 1);
  Eigen::MatrixXd dup(2, 1);
  dup << 3, 3;
  CHECK_THROWS_AS(knn_graph(dup, 1), Error);
  // Equidistant neighbors: the smaller index wins.
  Eigen::MatrixXd tie(5, 1);
  tie << 0, -1, 1, -1.3, 1.3;
  Graph t = knn_graph(tie, 1);
  CHECK(t.has_edge(0, 1));
  CHECK_FALSE(t.has_edge(0, 2));
}

TEST_CASE("random triangulations") {
  auto r4 = generate_random_triangulation(4, 1);
  CHECK(r4.graph() == complete_graph(4));
  auto a = generate_random_triangulation(100, 5), b = generate_random_triangulation(100, 5);
  CHECK(a.rotations() == b.rotations());
  CHECK(a.is_triangulation());
  CHECK(a.euler_genus() == 0);
  CHECK(a.graph().m() == 3 * 100 - 6);
  CHECK_THROWS_AS(generate_random_triangulation(3, 1), Error);
}

TEST_CASE("packing small polyhedra") {
  auto tet = circle_pack(tetrahedron());
  CHECK(intersection_graph(tet.sphere, 1e-6) == tetrahedron().graph());
  for (double r : tet.sphere.radii) CHECK(r == doctest::Approx(tet.sphere.radii[0]).epsilon(1e-9));
  CHECK(center_offset(tet.sphere) < 1e-9);

  auto oct = circle_pack(octahedron());
  CHECK(oct.residual < 1e-8);
  CHECK(intersection_graph(oct.sphere, 1e-6) == octahedron().graph());
  CHECK(max_tangency_error(oct.sphere, octahedron().graph()) < 1e-9);
  CHECK(ply(oct.sphere).ply == 1);

  CHECK_THROWS_AS(circle_pack(planar_cycle(4)), Error);
  CHECK_THROWS_AS(circle_pack(toroidal_k5()), Error);
}

TEST_CASE("normalization is conformal and centers") {
  auto oct = circle_pack(octahedron());
  auto again = sphere_normalize(oct.sphere);
  CHECK((again.centers - oct.sphere.centers).cwiseAbs().maxCoeff() < 1e-9);

  Eigen::VectorXd shift(3);
  shift << 0.2, -0.1, 0.5;
  auto moved = mobius_transform(oct.sphere, shift);
  CHECK(center_offset(moved) > 0.1);
  CHECK(intersection_graph(moved, 1e-6) == octahedron().graph());
  auto back = sphere_normalize(moved);
  CHECK(center_offset(back) < 1e-7);
  CHECK(intersection_graph(back, 1e-6) == octahedron().graph());

  BallSystem crowd;
  crowd.d = 2;
  crowd.kind = BallKind::geodesic;
  crowd.centers.resize(4, 3);
  crowd.centers << 0, 0, 1, 0.1, 0, std::sqrt(0.99), 0, 0.1, std::sqrt(0.99), -0.1, 0, std::sqrt(0.99);
  crowd.radii = {0.5, 0.5, 0.5, 0.5};
  CHECK_THROWS_AS(sphere_normalize(crowd), Error);
}

TEST_CASE("planar certificates from packings") {
  for (int n : {20, 60, 120}) {
    auto r = generate_random_triangulation(n, 11 + n);
    auto pack = circle_pack(r);
    CHECK(intersection_graph(pack.sphere, 1e-6) == r.graph());
    CHECK(ply(pack.sphere).ply == 1);
    auto ball = ballsystem_to_certificate(pack.sphere, r.graph());
    CHECK(verify(ball, r.graph()).feasible);
    CHECK(ball.value() <= 4.0 / n * 1.05);
    auto emb = ball_to_embedding(ball, r.graph());
    CHECK(verify(emb, r.graph()).feasible);
    CHECK(emb.value() <= 8.0 / n * 1.05);
  }
}

TEST_CASE("k-ply disk systems") {
  CHECK(kply_ball_bound(2, 1, 10) == doctest::Approx(0.4));
  CHECK(kply_ball_bound(3, 1, 8) == doctest::Approx(std::pow(1.5 * std::numbers::pi / 8, 2.0 / 3)));
  for (int k : {1, 3}) {
    const int n = 120;
    auto disks = generate_kply_disks(n, k, 9);
    auto p = ply(disks);
    CHECK(p.ply <= k);
    auto caps = sphere_normalize(lift_to_sphere(disks));
    Graph g = intersection_graph(disks);
    CHECK(intersection_graph(caps, 1e-9).m() >= g.m());
    auto cert = ballsystem_to_certificate(caps, g);
    CHECK(verify(cert, g).feasible);
    CHECK(cert.value() <= kply_ball_bound(2, p.ply, n) * 1.05);
  }
}

TEST_CASE("power mean in higher dimension") {
  Eigen::MatrixXd pts = random_points(40, 3, 4);
  BallSystem b;
  b.d = 3;
  b.centers = pts;
  b.radii.assign(40, 0.0);
  for (int i = 0; i < 40; ++i) {
    double nearest = 1e9;
    for (int j = 0; j < 40; ++j)
      if (j != i) nearest = std::min(nearest, (pts.row(i) - pts.row(j)).norm());
    b.radii[i] = nearest / 2;
  }
  auto caps = sphere_normalize(lift_to_sphere(b));
  auto cert = ballsystem_to_certificate(caps, intersection_graph(b));
  double s2 = 0.0, s3 = 0.0;
  for (double s : cert.s) {
    s2 += s * s;
    s3 += s * s * s;
  }
  CHECK(s2 / 40 <= std::pow(s3 / 40, 2.0 / 3.0) + 1e-15);
  CHECK(cert.value() <= kply_ball_bound(3, 1, 40) * 1.05);
}

TEST_CASE("ball system documents") {
  auto disks = generate_kply_disks(10, 1, 2);
  auto back = ball_system_from_json(to_json(disks));
  CHECK(back.centers == disks.centers);
  CHECK(back.radii == disks.radii);
  auto bad = to_json(disks);
  bad["kind"] = "hyperbolic";
  CHECK_THROWS_AS(ball_system_from_json(bad), Error);

  BallSystem single;
  single.d = 2;
  single.kind = BallKind::geodesic;
  single.centers.resize(1, 3);
  single.centers << 0, 0, 1;
  single.radii = {0.3};
  CHECK_THROWS_AS(ballsystem_to_certificate(single, Graph(1, {})), Error);
}
}
