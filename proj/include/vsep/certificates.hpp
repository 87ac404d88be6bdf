#pragma once

#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "vsep/graph.hpp"

namespace vsep {

/// Row v of an n x d matrix is the point f(v).
using Embedding = Eigen::MatrixXd;

/// Feasible point of the dual embedding program: Σf = 0 and
/// y(u) + y(v) >= |f(u) - f(v)|² / Σ|f|² on every edge.
struct EmbeddingCertificate {
  int d = 0;
  Embedding f;
  std::vector<double> y;
  double value() const;
};

/// Ball form: s(u) + s(v) >= |f(u) - f(v)|, value Σs² / Σ|f|².
struct BallCertificate {
  int d = 0;
  Embedding f;
  std::vector<double> s;
  double value() const;
};

/// Spread form: |y|₁ <= 1 and y(u) + y(v) >= |f(u) - f(v)|_p^p on every edge.
/// The value is the ordered-pair sum Σ_{u,v} |f(u) - f(v)|_p^p.
struct SpreadEmbeddingCertificate {
  int p = 2;
  int d = 0;
  Embedding f;
  std::vector<double> y;
  double value() const;
};

using Certificate = std::variant<EmbeddingCertificate, BallCertificate, SpreadEmbeddingCertificate>;

inline constexpr double kCertificateTolerance = 1e-9;

struct Violation {
  std::string constraint;  // "edge u-v", "centering", "mass", "sign v"
  double slack = 0.0;
};

struct VerifyReport {
  bool feasible = true;
  double worst_slack = 0.0;  // minimum edge slack (normalized), +inf without edges
  double value = 0.0;
  std::vector<Violation> violations;
};

VerifyReport verify(const EmbeddingCertificate& c, const Graph& g, double tol = kCertificateTolerance);
VerifyReport verify(const BallCertificate& c, const Graph& g, double tol = kCertificateTolerance);
VerifyReport verify(const SpreadEmbeddingCertificate& c, const Graph& g, double tol = kCertificateTolerance);
VerifyReport verify(const Certificate& c, const Graph& g, double tol = kCertificateTolerance);

/// Σ|f(v)|².
double total_square_norm(const Embedding& f);
/// Ordered-pair sum Σ_{u,v} |f(u) - f(v)|_p^p for p in {1, 2}.
double ordered_pair_sum(const Embedding& f, int p);
/// Subtracts the mean row.
Embedding centered(const Embedding& f);

/// Minimum Σy for a fixed embedding (exact covering program).
std::vector<double> optimal_y_for_embedding(const Graph& g, const Embedding& f);
/// Embedding certificate with the optimal y for f (f is centered first).
EmbeddingCertificate certificate_for_embedding(const Graph& g, const Embedding& f);

/// ±1 split with y = 2/n (even n) or a middle vertex at 0 with y = 2/(n-1) (odd n).
EmbeddingCertificate trivial_gamma1(const Graph& g);

/// s(v) = sqrt(y(v) Σ|f|²).
BallCertificate embedding_to_ball(const EmbeddingCertificate& c, const Graph& g);
/// y(v) = 2 s(v)² / Σ|f|²; the value doubles.
EmbeddingCertificate ball_to_embedding(const BallCertificate& c, const Graph& g);
/// Centers f and divides y by Σ|f_c|²; value 2n|y|₁/Q.
EmbeddingCertificate spread_to_gamma(const SpreadEmbeddingCertificate& c, const Graph& g);
/// Inverse direction: y' = y/Σy and f' = f/sqrt(Σy Σ|f|²), so Q = 2n/Σy.
SpreadEmbeddingCertificate gamma_to_spread(const EmbeddingCertificate& c, const Graph& g);
/// y' = y², f' = f/√2 turns an L1 spread certificate into an L2 one.
SpreadEmbeddingCertificate q1_to_q2(const SpreadEmbeddingCertificate& c, const Graph& g);

/// Pads f with zero columns up to dimension d (still feasible).
EmbeddingCertificate pad_dimension(const EmbeddingCertificate& c, int d);

nlohmann::json to_json(const Certificate& c, const Graph& g, double tol = kCertificateTolerance);
/// Parses a certificate document; numbers may be JSON numbers or decimal strings.
/// When `g` is given the graph hash must match.
Certificate certificate_from_json(const nlohmann::json& doc, const Graph* g = nullptr);
double certificate_value(const Certificate& c);

}  // namespace vsep
