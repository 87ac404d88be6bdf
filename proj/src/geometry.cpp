#include "vsep/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "vsep/random.hpp"

namespace vsep {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDepthTol = 1e-7;

using Vec = Eigen::VectorXd;

double wrap(double a) {
  a = std::fmod(a, 2.0 * kPi);
  return a < 0 ? a + 2.0 * kPi : a;
}

double angle_between(const Vec& a, const Vec& b) {
  // atan2 form stays accurate for nearly parallel unit vectors.
  return 2.0 * std::atan2((a - b).norm(), (a + b).norm());
}

struct Cap {
  Vec center;
  double radius;
};

// The cap whose trace on the great circle spanned by orthonormal e1, e2 is
// the arc from y1 to y2 passing through `inside`.
Cap cap_from_arc(const Vec& e1, const Vec& e2, const Vec& y1, const Vec& y2, const Vec& inside) {
  double t1 = std::atan2(y1.dot(e2), y1.dot(e1));
  double t2 = std::atan2(y2.dot(e2), y2.dot(e1));
  double tz = std::atan2(inside.dot(e2), inside.dot(e1));
  double len = wrap(t2 - t1);
  double mid;
  if (wrap(tz - t1) <= len) {
    mid = t1 + len / 2;
  } else {
    len = 2.0 * kPi - len;
    mid = t2 + len / 2;
  }
  Vec c = std::cos(mid) * e1 + std::sin(mid) * e2;
  return {c / c.norm(), len / 2};
}

Vec unit_orthogonal(const Vec& z) {
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    Vec e = Vec::Unit(z.size(), i);
    Vec t = e - e.dot(z) * z;
    if (t.norm() > 0.5) return t.normalized();
  }
  Vec t = Vec::Unit(z.size(), 0) - z(0) * z;
  return t.normalized();
}

Vec mobius_point(const Vec& x, const Vec& a) {
  double aa = a.squaredNorm();
  Vec diff = x - a;
  return ((1.0 - aa) * diff - diff.squaredNorm() * a) / (1.0 - 2.0 * a.dot(x) + aa * x.squaredNorm());
}

Cap mobius_cap(const Vec& z, double rho, const Vec& a) {
  Vec tz = mobius_point(z, a);
  tz.normalize();
  if (rho <= 0.0) return {tz, 0.0};
  Vec t = a - a.dot(z) * z;
  t = t.norm() > 1e-14 ? Vec(t.normalized()) : unit_orthogonal(z);
  Vec y1 = mobius_point(std::cos(rho) * z + std::sin(rho) * t, a);
  Vec y2 = mobius_point(std::cos(rho) * z - std::sin(rho) * t, a);
  return cap_from_arc(z, t, y1, y2, tz);
}

Vec inverse_stereographic(const Vec& p) {
  const Eigen::Index d = p.size();
  double s = p.squaredNorm();
  Vec out(d + 1);
  out.head(d) = 2.0 * p / (s + 1.0);
  out(d) = (s - 1.0) / (s + 1.0);
  return out;
}

bool inside_open(const BallSystem& b, int i, const Vec& x) {
  double r = b.radii[i];
  if (b.kind == BallKind::euclidean) return (x - b.centers.row(i).transpose()).norm() < r - kDepthTol * std::max(1.0, r);
  return angle_between(x, b.centers.row(i).transpose()) < r - kDepthTol;
}

int count_at(const BallSystem& b, const Vec& x) {
  int c = 0;
  for (int i = 0; i < b.size(); ++i) c += inside_open(b, i, x);
  return c;
}

double pair_distance(const BallSystem& b, int i, int j) {
  if (b.kind == BallKind::euclidean) return (b.centers.row(i) - b.centers.row(j)).norm();
  return angle_between(b.centers.row(i).transpose(), b.centers.row(j).transpose());
}

// Candidate points of maximal depth: centers, lens midpoints, and points
// nudged into both balls from each pair of boundary crossings.
std::vector<Vec> arrangement_probes(const BallSystem& b) {
  std::vector<Vec> probes;
  const int n = b.size();
  for (int i = 0; i < n; ++i) probes.push_back(b.centers.row(i).transpose());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double ri = b.radii[i], rj = b.radii[j];
      double dist = pair_distance(b, i, j);
      if (dist >= ri + rj || ri <= 0 || rj <= 0) continue;
      Vec ci = b.centers.row(i).transpose(), cj = b.centers.row(j).transpose();
      double lo = std::max(-ri, dist - rj), hi = std::min(ri, dist + rj);
      double at = (lo + hi) / 2;  // signed offset from ci along the center line
      if (b.kind == BallKind::euclidean) {
        Vec dir = dist > 0 ? Vec((cj - ci) / dist) : Vec(Vec::Unit(ci.size(), 0));
        probes.push_back(ci + at * dir);
        if (b.d != 2 || dist <= std::abs(ri - rj)) continue;
        double along = (dist * dist + ri * ri - rj * rj) / (2 * dist);
        double h = std::sqrt(std::max(0.0, ri * ri - along * along));
        Vec base = ci + along * dir;
        Vec perp(2);
        perp << -dir(1), dir(0);
        for (double sgn : {1.0, -1.0}) {
          Vec x = base + sgn * h * perp;
          Vec in = (ci - x).normalized() + (cj - x).normalized();
          if (in.norm() < 1e-12) continue;
          probes.push_back(x + 1e-4 * std::min(ri, rj) * in.normalized());
        }
      } else {
        Vec t = cj - ci.dot(cj) * ci;
        t = t.norm() > 1e-14 ? Vec(t.normalized()) : unit_orthogonal(ci);
        probes.push_back(std::cos(at) * ci + std::sin(at) * t);
        if (b.d != 2 || dist <= std::abs(ri - rj)) continue;
        double g = ci.dot(cj);
        double a = (std::cos(ri) - g * std::cos(rj)) / (1 - g * g);
        double bb = (std::cos(rj) - g * std::cos(ri)) / (1 - g * g);
        Vec base = a * ci + bb * cj;
        Eigen::Vector3d cross = Eigen::Vector3d(ci).cross(Eigen::Vector3d(cj));
        double q = base.squaredNorm();
        if (q > 1.0) continue;
        double gamma = std::sqrt((1.0 - q) / cross.squaredNorm());
        for (double sgn : {1.0, -1.0}) {
          Vec x = base + sgn * gamma * Vec(cross);
          x.normalize();
          Vec ti = ci - ci.dot(x) * x, tj = cj - cj.dot(x) * x;
          if (ti.norm() < 1e-14 || tj.norm() < 1e-14) continue;
          Vec in = ti.normalized() + tj.normalized();
          if (in.norm() < 1e-12) continue;
          Vec p = x + 1e-4 * std::min(ri, rj) * in.normalized();
          probes.push_back(p.normalized());
        }
      }
    }
  }
  return probes;
}

}  // namespace

Graph intersection_graph(const BallSystem& b, double slack) {
  std::vector<Edge> es;
  for (int i = 0; i < b.size(); ++i)
    for (int j = i + 1; j < b.size(); ++j)
      if (pair_distance(b, i, j) <= b.radii[i] + b.radii[j] + slack) es.push_back({i, j});
  return Graph(b.size(), es);
}

PlyReport ply(const BallSystem& b, int samples, std::uint64_t seed) {
  PlyReport out;
  if (b.size() == 0) return out;
  bool exact = (b.kind == BallKind::euclidean && b.d <= 2) || (b.kind == BallKind::geodesic && b.d == 2);
  std::vector<Vec> probes = arrangement_probes(b);
  if (!exact) {
    Rng rng(derive_seed(seed, "ply"));
    std::normal_distribution<double> gauss;
    const int dim = static_cast<int>(b.centers.cols());
    Vec lo = b.centers.colwise().minCoeff().transpose(), hi = b.centers.colwise().maxCoeff().transpose();
    double rmax = *std::max_element(b.radii.begin(), b.radii.end());
    for (int s = 0; s < samples; ++s) {
      Vec x(dim);
      if (b.kind == BallKind::geodesic) {
        for (int i = 0; i < dim; ++i) x(i) = gauss(rng);
        x.normalize();
      } else {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < dim; ++i) x(i) = lo(i) - rmax + (hi(i) - lo(i) + 2 * rmax) * u(rng);
      }
      probes.push_back(std::move(x));
    }
  }
  for (const Vec& x : probes) out.ply = std::max(out.ply, count_at(b, x));
  out.exact = exact;
  out.probes = static_cast<int>(probes.size());
  return out;
}

Graph knn_graph(const Eigen::MatrixXd& points, int k) {
  const int n = static_cast<int>(points.rows());
  if (k < 1) throw Error("k must be positive");
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<double, int>> order;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      double dist = (points.row(i) - points.row(j)).squaredNorm();
      if (dist == 0.0) throw Error("duplicate points " + std::to_string(std::min(i, j)) + " and " +
                                   std::to_string(std::max(i, j)));
      order.push_back({dist, j});
    }
    std::sort(order.begin(), order.end());
    for (int t = 0; t < std::min(k, n - 1); ++t) {
      int j = order[t].second;
      es.push_back({std::min(i, j), std::max(i, j)});
    }
  }
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  return Graph(n, es);
}

BallSystem lift_to_sphere(const BallSystem& b) {
  if (b.kind != BallKind::euclidean) throw Error("lift expects a euclidean system");
  const int d = b.d;
  BallSystem out;
  out.d = d;
  out.kind = BallKind::geodesic;
  out.centers.resize(b.size(), d + 1);
  out.radii.resize(b.size());
  Vec pole = Vec::Unit(d + 1, d);
  for (int i = 0; i < b.size(); ++i) {
    Vec c = b.centers.row(i).transpose();
    double rho = b.radii[i];
    Vec dir = c.norm() > 1e-15 ? Vec(c.normalized()) : Vec(Vec::Unit(d, 0));
    Vec e1 = Vec::Zero(d + 1);
    e1.head(d) = dir;
    Vec inside = inverse_stereographic(c);
    if (rho <= 0.0) {
      out.centers.row(i) = inside.transpose();
      out.radii[i] = 0.0;
      continue;
    }
    Cap cap = cap_from_arc(e1, pole, inverse_stereographic(c + rho * dir), inverse_stereographic(c - rho * dir),
                           inside);
    out.centers.row(i) = cap.center.transpose();
    out.radii[i] = cap.radius;
  }
  return out;
}

BallSystem mobius_transform(const BallSystem& b, const Eigen::VectorXd& a) {
  if (b.kind != BallKind::geodesic) throw Error("sphere automorphisms act on geodesic systems");
  if (a.norm() >= 1.0) throw Error("automorphism parameter must lie in the open unit ball");
  BallSystem out = b;
  for (int i = 0; i < b.size(); ++i) {
    Cap cap = mobius_cap(b.centers.row(i).transpose(), std::min(b.radii[i], kPi), a);
    out.centers.row(i) = cap.center.transpose();
    out.radii[i] = cap.radius;
  }
  return out;
}

double center_offset(const BallSystem& b) { return b.centers.colwise().mean().norm(); }

BallSystem sphere_normalize(const BallSystem& b, double target) {
  if (b.kind != BallKind::geodesic) throw Error("normalization expects caps on a sphere");
  const int n = b.size();
  if (n == 0) throw Error("empty ball system");
  const int half = (n + 1) / 2;
  if (ply(b).ply >= half)
    throw Error("some point lies in " + std::to_string(half) + " caps; no centering exists");
  const Eigen::Index dim = b.centers.cols();
  auto mean_of = [&](const BallSystem& s) -> Vec { return s.centers.colwise().mean().transpose(); };
  BallSystem cur = b;
  Vec F = mean_of(cur);
  for (int iter = 0; iter < 500 && F.norm() > target; ++iter) {
    const double h = 1e-7;
    Eigen::MatrixXd J(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      Vec e = Vec::Unit(dim, k) * h;
      J.col(k) = (mean_of(mobius_transform(cur, e)) - mean_of(mobius_transform(cur, -e))) / (2 * h);
    }
    Vec step = -J.colPivHouseholderQr().solve(F);
    if (!step.allFinite()) step = -F;
    if (step.norm() > 0.5) step *= 0.5 / step.norm();
    bool moved = false;
    for (int halving = 0; halving < 60; ++halving) {
      BallSystem trial = mobius_transform(cur, step);
      Vec Ft = mean_of(trial);
      if (Ft.norm() < F.norm()) {
        cur = std::move(trial);
        F = Ft;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  if (F.norm() > std::max(target, 1e-7))
    throw Error("sphere normalization did not converge (offset " + std::to_string(F.norm()) + ")");
  return cur;
}

CirclePacking circle_pack(const RotationSystem& r) {
  const Graph& g = r.graph();
  const int n = g.n();
  if (n < 4) throw Error("circle packing needs at least four vertices");
  if (!r.is_triangulation()) throw Error("circle packing needs a triangulation");
  if (r.euler_genus() != 0) throw Error("circle packing needs a planar embedding");

  auto faces = r.faces();
  const FaceWalk& outer = faces.front();
  std::vector<char> boundary(n, 0);
  for (const Dart& d : outer) boundary[d.from] = 1;

  std::vector<double> rad(n, 1.0);
  auto angle_sum = [&](Vertex v) {
    const auto& rot = r.rotation(v);
    double total = 0.0;
    const double rv = rad[v];
    for (std::size_t i = 0; i < rot.size(); ++i) {
      double ru = rad[rot[i]], rw = rad[rot[(i + 1) % rot.size()]];
      total += 2.0 * std::asin(std::sqrt(ru * rw / ((rv + ru) * (rv + rw))));
    }
    return total;
  };

  CirclePacking out;
  for (out.sweeps = 0; out.sweeps < kPackingSweeps; ++out.sweeps) {
    double worst = 0.0;
    for (Vertex v = 0; v < n; ++v) {
      if (boundary[v]) continue;
      double theta = angle_sum(v);
      worst = std::max(worst, std::abs(theta - 2.0 * kPi));
      const double k = static_cast<double>(g.degree(v));
      double beta = std::sin(theta / (2.0 * k));
      double delta = std::sin(kPi / k);
      double uniform = rad[v] * beta / (1.0 - beta);
      rad[v] = uniform * (1.0 - delta) / delta;
    }
    out.residual = worst;
    if (worst < kPackingResidual) break;
  }
  if (out.residual >= kPackingResidual)
    throw Error("circle packing did not converge (residual " + std::to_string(out.residual) + ")");

  // Lay out: the outer face runs clockwise, inner faces counterclockwise.
  std::vector<std::optional<Eigen::Vector2d>> pos(n);
  auto corner_angle = [&](Vertex v, Vertex u, Vertex w) {
    return 2.0 * std::asin(std::sqrt(rad[u] * rad[w] / ((rad[v] + rad[u]) * (rad[v] + rad[w]))));
  };
  auto place = [&](Vertex u, Vertex w, Vertex x, double side) {
    Eigen::Vector2d dir = (*pos[w] - *pos[u]).normalized();
    double a = side * corner_angle(u, w, x);
    Eigen::Vector2d rotd(std::cos(a) * dir(0) - std::sin(a) * dir(1), std::sin(a) * dir(0) + std::cos(a) * dir(1));
    pos[x] = *pos[u] + (rad[u] + rad[x]) * rotd;
  };
  Vertex a = outer[0].from, bv = outer[1].from, c = outer[2].from;
  pos[a] = Eigen::Vector2d(0, 0);
  pos[bv] = Eigen::Vector2d(rad[a] + rad[bv], 0);
  place(a, bv, c, -1.0);
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t fi = 1; fi < faces.size(); ++fi) {
      const FaceWalk& f = faces[fi];
      for (int i = 0; i < 3; ++i) {
        Vertex u = f[i].from, w = f[i].to, x = f[(i + 1) % 3].to;
        if (pos[u] && pos[w] && !pos[x]) {
          place(u, w, x, 1.0);
          progress = true;
        }
      }
    }
  }
  for (Vertex v = 0; v < n; ++v)
    if (!pos[v]) throw Error("internal: circle layout left a vertex unplaced");
  for (std::size_t fi = 1; fi < faces.size(); ++fi) {
    const FaceWalk& f = faces[fi];
    Eigen::Vector2d p = *pos[f[0].from], q = *pos[f[1].from], s = *pos[f[2].from];
    double area = (q - p).x() * (s - p).y() - (q - p).y() * (s - p).x();
    if (area <= 0) throw Error("circle layout is not univalent");
  }

  out.plane.d = 2;
  out.plane.kind = BallKind::euclidean;
  out.plane.centers.resize(n, 2);
  for (Vertex v = 0; v < n; ++v) out.plane.centers.row(v) = pos[v]->transpose();
  out.plane.radii = rad;

  // Center and scale before lifting so the caps start well spread.
  BallSystem scaled = out.plane;
  Eigen::RowVector2d mean = scaled.centers.colwise().mean();
  scaled.centers.rowwise() -= mean;
  double spread = std::sqrt(scaled.centers.rowwise().squaredNorm().mean());
  if (spread > 0) {
    scaled.centers /= spread;
    for (double& x : scaled.radii) x /= spread;
  }
  out.sphere = sphere_normalize(lift_to_sphere(scaled));
  return out;
}

BallCertificate ballsystem_to_certificate(const BallSystem& b, const Graph& g) {
  if (b.kind != BallKind::geodesic) throw Error("certificate needs caps on a sphere");
  if (g.n() != b.size()) throw Error("graph and ball system sizes differ");
  if (center_offset(b) > 1e-6) throw Error("cap centers are not centered at the origin");
  for (const Edge& e : g.edges())
    if (pair_distance(b, e.u, e.v) > b.radii[e.u] + b.radii[e.v] + 1e-6)
      throw Error("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " is not realized by the caps");
  BallCertificate c;
  c.d = b.d + 1;
  // A common shift keeps every edge constraint and makes the centering exact.
  c.f = centered(b.centers);
  c.s.resize(b.size());
  for (int i = 0; i < b.size(); ++i) c.s[i] = std::min(2.0, 2.0 * std::sin(std::min(b.radii[i], kPi) / 2.0));
  return c;
}

double kply_ball_bound(int d, int k, int n) {
  double area = 2.0 * std::pow(kPi, (d + 1) / 2.0) / std::tgamma((d + 1) / 2.0);
  double volume = std::pow(kPi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
  return std::pow(area / volume * k / n, 2.0 / d);
}

namespace {

struct Triangle {
  int a, b, c;
  double cx, cy, r2;
};

Triangle make_triangle(const std::vector<Eigen::Vector2d>& p, int a, int b, int c) {
  double ax = p[a].x(), ay = p[a].y(), bx = p[b].x(), by = p[b].y(), cx = p[c].x(), cy = p[c].y();
  double dd = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
  double ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / dd;
  double uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / dd;
  return {a, b, c, ux, uy, (ax - ux) * (ax - ux) + (ay - uy) * (ay - uy)};
}

std::optional<RotationSystem> delaunay(const std::vector<Eigen::Vector2d>& pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<Eigen::Vector2d> p = pts;
  const double big = 1e3;
  for (int i = 0; i < 3; ++i) {
    double a = kPi / 2 + 2 * kPi * i / 3;
    p.emplace_back(big * std::cos(a), big * std::sin(a));
  }
  std::vector<Triangle> tris{make_triangle(p, n, n + 1, n + 2)};
  for (int i = 0; i < n; ++i) {
    std::vector<Triangle> keep;
    std::vector<std::pair<int, int>> edges;
    for (const Triangle& t : tris) {
      double dx = p[i].x() - t.cx, dy = p[i].y() - t.cy;
      if (dx * dx + dy * dy < t.r2) {
        edges.push_back({t.a, t.b});
        edges.push_back({t.b, t.c});
        edges.push_back({t.c, t.a});
      } else {
        keep.push_back(t);
      }
    }
    for (std::size_t e = 0; e < edges.size(); ++e) {
      bool shared = false;
      for (std::size_t f = 0; f < edges.size(); ++f)
        if (e != f && edges[e].first == edges[f].second && edges[e].second == edges[f].first) shared = true;
      if (!shared) keep.push_back(make_triangle(p, edges[e].first, edges[e].second, i));
    }
    tris = std::move(keep);
  }
  std::vector<Edge> es;
  for (const Triangle& t : tris) {
    if (t.a >= n || t.b >= n || t.c >= n) continue;
    for (auto [u, v] : {std::pair{t.a, t.b}, {t.b, t.c}, {t.c, t.a}}) es.push_back({std::min(u, v), std::max(u, v)});
  }
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  if (static_cast<int>(es.size()) != 3 * n - 6) return std::nullopt;
  Graph g(n, es);
  std::vector<std::vector<Vertex>> rot(n);
  for (Vertex v = 0; v < n; ++v) {
    rot[v] = g.neighbors(v);
    std::sort(rot[v].begin(), rot[v].end(), [&](Vertex x, Vertex y) {
      return std::atan2(pts[x].y() - pts[v].y(), pts[x].x() - pts[v].x()) <
             std::atan2(pts[y].y() - pts[v].y(), pts[y].x() - pts[v].x());
    });
  }
  RotationSystem r(std::move(g), std::move(rot));
  if (!r.graph().connected() || !r.is_triangulation() || r.euler_genus() != 0) return std::nullopt;
  return r;
}

}  // namespace

RotationSystem generate_random_triangulation(int n, std::uint64_t seed) {
  if (n < 4) throw Error("random triangulation needs n >= 4");
  for (std::uint64_t attempt = 0; attempt < 32; ++attempt) {
    Rng rng(derive_seed(seed, "delaunay", attempt));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Eigen::Vector2d> pts;
    for (int i = 0; i < 3; ++i) {
      double a = kPi / 2 + 2 * kPi * i / 3;
      pts.emplace_back(3.0 * std::cos(a), 3.0 * std::sin(a));
    }
    while (static_cast<int>(pts.size()) < n) {
      Eigen::Vector2d q(u(rng), u(rng));
      if (q.squaredNorm() < 1.0) pts.push_back(q);
    }
    if (auto r = delaunay(pts)) return *r;
  }
  throw Error("could not generate a non-degenerate triangulation");
}

Eigen::MatrixXd random_points(int n, int d, std::uint64_t seed) {
  Rng rng(derive_seed(seed, "points"));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd p(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) p(i, j) = u(rng);
  return p;
}

BallSystem generate_kply_disks(int n, int k, std::uint64_t seed, int d) {
  if (k < 1 || n < 2 * k) throw Error("need k >= 1 and at least two disks per layer");
  if (d < 1) throw Error("dimension must be positive");
  BallSystem b;
  b.d = d;
  b.kind = BallKind::euclidean;
  b.centers.resize(n, d);
  b.radii.resize(n);
  int row = 0;
  for (int layer = 0; layer < k; ++layer) {
    int size = n / k + (layer < n % k ? 1 : 0);
    Eigen::MatrixXd pts = random_points(size, d, derive_seed(seed, "kply-layer", layer));
    for (int i = 0; i < size; ++i) {
      double nearest = std::numeric_limits<double>::infinity();
      for (int j = 0; j < size; ++j)
        if (j != i) nearest = std::min(nearest, (pts.row(i) - pts.row(j)).norm());
      b.centers.row(row) = pts.row(i);
      b.radii[row] = nearest / 2.0;
      ++row;
    }
  }
  return b;
}

nlohmann::json to_json(const BallSystem& b) {
  nlohmann::json doc;
  doc["d"] = b.d;
  doc["kind"] = b.kind == BallKind::euclidean ? "euclidean" : "geodesic";
  doc["centers"] = nlohmann::json::array();
  for (Eigen::Index i = 0; i < b.centers.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < b.centers.cols(); ++j) row.push_back(b.centers(i, j));
    doc["centers"].push_back(row);
  }
  doc["radii"] = b.radii;
  return doc;
}

BallSystem ball_system_from_json(const nlohmann::json& doc) {
  try {
    BallSystem b;
    b.d = doc.at("d").get<int>();
    std::string kind = doc.at("kind").get<std::string>();
    if (kind == "euclidean") b.kind = BallKind::euclidean;
    else if (kind == "geodesic") b.kind = BallKind::geodesic;
    else throw Error("unknown ball kind '" + kind + "'");
    b.radii = doc.at("radii").get<std::vector<double>>();
    const auto& rows = doc.at("centers");
    const int width = b.kind == BallKind::euclidean ? b.d : b.d + 1;
    if (rows.size() != b.radii.size()) throw Error("centers and radii differ in length");
    b.centers.resize(static_cast<Eigen::Index>(rows.size()), width);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(rows[i].size()) != width) throw Error("center " + std::to_string(i) + " has wrong dimension");
      for (int j = 0; j < width; ++j) b.centers(static_cast<Eigen::Index>(i), j) = rows[i][j].get<double>();
    }
    for (double r : b.radii)
      if (!(r >= 0)) throw Error("negative radius");
    if (b.kind == BallKind::geodesic)
      for (Eigen::Index i = 0; i < b.centers.rows(); ++i)
        if (std::abs(b.centers.row(i).norm() - 1.0) > 1e-9) throw Error("cap center off the unit sphere");
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed ball system: ") + e.what());
  }
}

}  // namespace vsep
