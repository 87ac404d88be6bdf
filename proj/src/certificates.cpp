#include "vsep/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "vsep/covering.hpp"

namespace vsep {

namespace {

void check_rows(const Embedding& f, std::size_t weights, const Graph& g, const char* what) {
  if (f.rows() != g.n() || weights != static_cast<std::size_t>(g.n()))
    throw Error(std::string(what) + " size does not match the graph");
}

void record(VerifyReport& r, std::string constraint, double slack, double tol) {
  if (slack < -tol) {
    r.feasible = false;
    r.violations.push_back({std::move(constraint), slack});
  }
}

std::string edge_name(const Edge& e) { return "edge " + std::to_string(e.u) + "-" + std::to_string(e.v); }

void check_centering(VerifyReport& r, const Embedding& f, double tol) {
  const double n = static_cast<double>(f.rows());
  const double rms = std::sqrt(total_square_norm(f) / std::max(1.0, n));
  const double drift = f.colwise().sum().norm();
  record(r, "centering", tol * n * std::max(1.0, rms) - drift, 0.0);
}

void check_signs(VerifyReport& r, const std::vector<double>& w, double tol) {
  for (std::size_t v = 0; v < w.size(); ++v) record(r, "sign " + std::to_string(v), w[v], tol);
}

}  // namespace

double total_square_norm(const Embedding& f) { return f.squaredNorm(); }

Embedding centered(const Embedding& f) {
  if (f.rows() == 0) return f;
  Eigen::RowVectorXd mean = f.colwise().mean();
  return f.rowwise() - mean;
}

double ordered_pair_sum(const Embedding& f, int p) {
  const double n = static_cast<double>(f.rows());
  if (p == 2) {
    Embedding c = centered(f);
    return 2.0 * n * c.squaredNorm();
  }
  if (p != 1) throw Error("spread exponent must be 1 or 2");
  double total = 0.0;
  for (Eigen::Index j = 0; j < f.cols(); ++j) {
    std::vector<double> x(f.rows());
    for (Eigen::Index i = 0; i < f.rows(); ++i) x[i] = f(i, j);
    std::sort(x.begin(), x.end());
    for (std::size_t i = 0; i < x.size(); ++i) total += x[i] * (2.0 * static_cast<double>(i) - n + 1.0);
  }
  return 2.0 * total;
}

double EmbeddingCertificate::value() const {
  double s = 0;
  for (double v : y) s += v;
  return s;
}

double BallCertificate::value() const {
  double norm = total_square_norm(f);
  double s2 = 0;
  for (double v : s) s2 += v * v;
  if (norm == 0.0) return s2 == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return s2 / norm;
}

double SpreadEmbeddingCertificate::value() const { return ordered_pair_sum(f, p); }

VerifyReport verify(const EmbeddingCertificate& c, const Graph& g, double tol) {
  check_rows(c.f, c.y.size(), g, "embedding certificate");
  VerifyReport r;
  r.value = c.value();
  r.worst_slack = std::numeric_limits<double>::infinity();
  const double norm = total_square_norm(c.f);
  check_centering(r, c.f, tol);
  check_signs(r, c.y, tol);
  for (const Edge& e : g.edges()) {
    double need = norm > 0 ? (c.f.row(e.u) - c.f.row(e.v)).squaredNorm() / norm : 0.0;
    double slack = c.y[e.u] + c.y[e.v] - need;
    r.worst_slack = std::min(r.worst_slack, slack);
    record(r, edge_name(e), slack, tol);
  }
  return r;
}

VerifyReport verify(const BallCertificate& c, const Graph& g, double tol) {
  check_rows(c.f, c.s.size(), g, "ball certificate");
  VerifyReport r;
  r.value = c.value();
  r.worst_slack = std::numeric_limits<double>::infinity();
  const double scale = std::sqrt(total_square_norm(c.f));
  check_centering(r, c.f, tol);
  check_signs(r, c.s, tol);
  for (const Edge& e : g.edges()) {
    double gap = c.s[e.u] + c.s[e.v] - (c.f.row(e.u) - c.f.row(e.v)).norm();
    double slack = scale > 0 ? gap / scale : gap;
    r.worst_slack = std::min(r.worst_slack, slack);
    record(r, edge_name(e), slack, tol);
  }
  return r;
}

VerifyReport verify(const SpreadEmbeddingCertificate& c, const Graph& g, double tol) {
  check_rows(c.f, c.y.size(), g, "spread certificate");
  if (c.p != 1 && c.p != 2) throw Error("spread exponent must be 1 or 2");
  VerifyReport r;
  r.value = c.value();
  r.worst_slack = std::numeric_limits<double>::infinity();
  check_signs(r, c.y, tol);
  double mass = 0;
  for (double v : c.y) mass += v;
  record(r, "mass", 1.0 - mass, tol);
  for (const Edge& e : g.edges()) {
    Eigen::RowVectorXd diff = c.f.row(e.u) - c.f.row(e.v);
    double need = c.p == 2 ? diff.squaredNorm() : diff.lpNorm<1>();
    double slack = c.y[e.u] + c.y[e.v] - need;
    r.worst_slack = std::min(r.worst_slack, slack);
    record(r, edge_name(e), slack, tol);
  }
  return r;
}

VerifyReport verify(const Certificate& c, const Graph& g, double tol) {
  return std::visit([&](const auto& x) { return verify(x, g, tol); }, c);
}

double certificate_value(const Certificate& c) {
  return std::visit([](const auto& x) { return x.value(); }, c);
}

std::vector<double> optimal_y_for_embedding(const Graph& g, const Embedding& f) {
  if (f.rows() != g.n()) throw Error("embedding size does not match the graph");
  const double norm = total_square_norm(f);
  if (!(norm > 0.0)) throw Error("all-zero embedding");
  std::vector<double> demand(g.m());
  for (int e = 0; e < g.m(); ++e)
    demand[e] = (f.row(g.edge(e).u) - f.row(g.edge(e).v)).squaredNorm() / norm;
  return solve_edge_covering(g, demand).y;
}

EmbeddingCertificate certificate_for_embedding(const Graph& g, const Embedding& f) {
  EmbeddingCertificate c;
  c.f = centered(f);
  c.d = static_cast<int>(f.cols());
  c.y = optimal_y_for_embedding(g, c.f);
  return c;
}

EmbeddingCertificate trivial_gamma1(const Graph& g) {
  const int n = g.n();
  if (n < 2) throw Error("trivial certificate needs n >= 2");
  EmbeddingCertificate c;
  c.d = 1;
  c.f = Embedding::Zero(n, 1);
  int half = n / 2;
  for (int v = 0; v < half; ++v) c.f(v, 0) = -1.0;
  for (int v = n - half; v < n; ++v) c.f(v, 0) = 1.0;
  const double y = n % 2 == 0 ? 2.0 / n : 2.0 / (n - 1);
  c.y.assign(n, y);
  return c;
}

BallCertificate embedding_to_ball(const EmbeddingCertificate& c, const Graph& g) {
  if (!verify(c, g).feasible) throw Error("embedding_to_ball: infeasible input certificate");
  BallCertificate b;
  b.d = c.d;
  b.f = c.f;
  const double norm = total_square_norm(c.f);
  b.s.resize(c.y.size());
  for (std::size_t v = 0; v < c.y.size(); ++v) b.s[v] = std::sqrt(std::max(0.0, c.y[v]) * norm);
  return b;
}

EmbeddingCertificate ball_to_embedding(const BallCertificate& c, const Graph& g) {
  if (!verify(c, g).feasible) throw Error("ball_to_embedding: infeasible input certificate");
  EmbeddingCertificate e;
  e.d = c.d;
  e.f = c.f;
  const double norm = total_square_norm(c.f);
  e.y.resize(c.s.size());
  for (std::size_t v = 0; v < c.s.size(); ++v) e.y[v] = norm > 0 ? 2.0 * c.s[v] * c.s[v] / norm : 0.0;
  return e;
}

EmbeddingCertificate spread_to_gamma(const SpreadEmbeddingCertificate& c, const Graph& g) {
  if (c.p != 2) throw Error("spread_to_gamma needs p = 2");
  if (!verify(c, g).feasible) throw Error("spread_to_gamma: infeasible input certificate");
  EmbeddingCertificate e;
  e.d = c.d;
  e.f = centered(c.f);
  const double norm = total_square_norm(e.f);
  if (!(norm > 0.0)) throw Error("spread_to_gamma: degenerate (constant) embedding");
  e.y.resize(c.y.size());
  for (std::size_t v = 0; v < c.y.size(); ++v) e.y[v] = c.y[v] / norm;
  return e;
}

SpreadEmbeddingCertificate gamma_to_spread(const EmbeddingCertificate& c, const Graph& g) {
  if (!verify(c, g).feasible) throw Error("gamma_to_spread: infeasible input certificate");
  const double mass = c.value();
  const double norm = total_square_norm(c.f);
  if (!(mass > 0.0) || !(norm > 0.0)) throw Error("gamma_to_spread: degenerate certificate");
  SpreadEmbeddingCertificate s;
  s.p = 2;
  s.d = c.d;
  s.f = c.f / std::sqrt(mass * norm);
  s.y.resize(c.y.size());
  for (std::size_t v = 0; v < c.y.size(); ++v) s.y[v] = c.y[v] / mass;
  return s;
}

SpreadEmbeddingCertificate q1_to_q2(const SpreadEmbeddingCertificate& c, const Graph& g) {
  if (c.p != 1) throw Error("q1_to_q2 needs p = 1");
  if (!verify(c, g).feasible) throw Error("q1_to_q2: infeasible input certificate");
  SpreadEmbeddingCertificate out;
  out.p = 2;
  out.d = c.d;
  out.f = c.f / std::sqrt(2.0);
  out.y.resize(c.y.size());
  for (std::size_t v = 0; v < c.y.size(); ++v) out.y[v] = c.y[v] * c.y[v];
  return out;
}

EmbeddingCertificate pad_dimension(const EmbeddingCertificate& c, int d) {
  if (d < c.d) throw Error("cannot pad to a smaller dimension");
  EmbeddingCertificate out = c;
  out.d = d;
  out.f = Embedding::Zero(c.f.rows(), d);
  out.f.leftCols(c.d) = c.f;
  return out;
}

namespace {

std::string exact(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double read_number(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::size_t used = 0;
    double x = std::stod(s, &used);
    if (used != s.size()) throw Error("bad number '" + s + "' in certificate");
    return x;
  }
  throw Error("certificate entry is not a number");
}

nlohmann::json vector_json(const std::vector<double>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (double x : v) a.push_back(exact(x));
  return a;
}

nlohmann::json matrix_json(const Embedding& f) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < f.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < f.cols(); ++j) row.push_back(exact(f(i, j)));
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> read_vector(const nlohmann::json& j) {
  std::vector<double> v;
  for (const auto& x : j) v.push_back(read_number(x));
  return v;
}

Embedding read_matrix(const nlohmann::json& j, int d) {
  Embedding f(static_cast<Eigen::Index>(j.size()), d);
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].size() != static_cast<std::size_t>(d)) throw Error("certificate row " + std::to_string(i) + " has wrong dimension");
    for (int k = 0; k < d; ++k) f(static_cast<Eigen::Index>(i), k) = read_number(j[i][k]);
  }
  return f;
}

}  // namespace

nlohmann::json to_json(const Certificate& c, const Graph& g, double tol) {
  nlohmann::json doc;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, EmbeddingCertificate>) {
          doc["kind"] = "gamma";
          doc["y"] = vector_json(x.y);
        } else if constexpr (std::is_same_v<T, BallCertificate>) {
          doc["kind"] = "gamma-dot";
          doc["s"] = vector_json(x.s);
        } else {
          doc["kind"] = "spread";
          doc["p"] = x.p;
          doc["y"] = vector_json(x.y);
        }
        doc["d"] = x.d;
        doc["f"] = matrix_json(x.f);
      },
      c);
  doc["graph-hash"] = g.hash();
  doc["tolerance"] = exact(tol);
  doc["precision"] = 17;
  doc["value"] = exact(certificate_value(c));
  return doc;
}

Certificate certificate_from_json(const nlohmann::json& doc, const Graph* g) {
  if (!doc.is_object() || !doc.contains("kind") || !doc.contains("d") || !doc.contains("f"))
    throw Error("certificate document needs kind, d and f");
  if (g && doc.contains("graph-hash") && doc["graph-hash"].get<std::string>() != g->hash())
    throw Error("certificate graph-hash does not match the graph");
  const std::string kind = doc["kind"].get<std::string>();
  const int d = doc["d"].get<int>();
  Embedding f = read_matrix(doc["f"], d);
  if (kind == "gamma") {
    return EmbeddingCertificate{d, std::move(f), read_vector(doc.at("y"))};
  }
  if (kind == "gamma-dot") {
    return BallCertificate{d, std::move(f), read_vector(doc.at("s"))};
  }
  if (kind == "spread") {
    return SpreadEmbeddingCertificate{doc.at("p").get<int>(), d, std::move(f), read_vector(doc.at("y"))};
  }
  throw Error("unknown certificate kind '" + kind + "'");
}

}  // namespace vsep
