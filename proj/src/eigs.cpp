#include "vsep/eigs.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/SparseCholesky>

#include "vsep/graph.hpp"

namespace vsep {

namespace {

void project_out_ones(Eigen::Ref<Eigen::MatrixXd> X) {
  const double n = static_cast<double>(X.rows());
  for (Eigen::Index j = 0; j < X.cols(); ++j) X.col(j).array() -= X.col(j).sum() / n;
}

// Orthonormalizes the columns in place (two passes of modified Gram-Schmidt
// against the all-ones direction and earlier columns). Near-dependent
// columns are replaced by fresh random directions.
void orthonormalize(Eigen::MatrixXd& X, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    for (int attempt = 0; attempt < 4; ++attempt) {
      for (int pass = 0; pass < 2; ++pass) {
        X.col(j).array() -= X.col(j).mean();
        for (Eigen::Index i = 0; i < j; ++i) X.col(j) -= X.col(i).dot(X.col(j)) * X.col(i);
      }
      double nrm = X.col(j).norm();
      if (nrm > 1e-10) {
        X.col(j) /= nrm;
        break;
      }
      for (Eigen::Index r = 0; r < X.rows(); ++r) X(r, j) = gauss(rng);
    }
  }
}

}  // namespace

EigenPairs smallest_nontrivial_eigs_dense(const Eigen::MatrixXd& L, int k) {
  const int n = static_cast<int>(L.rows());
  if (n < 2) return {Eigen::VectorXd(0), Eigen::MatrixXd(n, 0)};
  k = std::min(k, n - 1);
  // The all-ones direction is pushed above the [0, 2]-ish spectrum.
  const double lift = 2.0 * (L.diagonal().cwiseAbs().maxCoeff() * 2.0 + 1.0);
  Eigen::MatrixXd M = L;
  M.array() += lift / n;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  if (es.info() != Eigen::Success) throw Error("dense eigensolver failed");
  EigenPairs out;
  out.values = es.eigenvalues().head(k);
  out.vectors = es.eigenvectors().leftCols(k);
  return out;
}

EigenPairs smallest_nontrivial_eigs(const SparseMatrix& L, int k, const Eigen::MatrixXd* warm) {
  const int n = static_cast<int>(L.rows());
  if (n <= kDenseEigenLimit || k + 8 >= n) return smallest_nontrivial_eigs_dense(Eigen::MatrixXd(L), k);

  // Shift-invert subspace iteration with Rayleigh-Ritz on the ones-complement.
  const double sigma = 1e-3;
  SparseMatrix shifted = L;
  for (int i = 0; i < n; ++i) shifted.coeffRef(i, i) += sigma;
  shifted.makeCompressed();
  Eigen::SimplicialLDLT<SparseMatrix> ldlt(shifted);
  if (ldlt.info() != Eigen::Success) throw Error("sparse factorization failed");

  const int block = std::min(n - 1, k + std::max(6, k / 2));
  std::mt19937_64 rng(0x5eedULL + static_cast<unsigned long long>(n));
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd X(n, block);
  for (int j = 0; j < block; ++j)
    for (int r = 0; r < n; ++r) X(r, j) = gauss(rng);
  if (warm != nullptr) {
    const int w = static_cast<int>(std::min<Eigen::Index>(warm->cols(), block));
    X.leftCols(w) = warm->leftCols(w);
  }
  orthonormalize(X, rng);

  EigenPairs out;
  Eigen::MatrixXd Y(n, block);
  for (int iter = 0; iter < 400; ++iter) {
    for (int j = 0; j < block; ++j) Y.col(j) = ldlt.solve(X.col(j));
    project_out_ones(Y);
    orthonormalize(Y, rng);
    // Rayleigh-Ritz with L itself.
    Eigen::MatrixXd LY = L * Y;
    Eigen::MatrixXd H = Y.transpose() * LY;
    H = 0.5 * (H + H.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    X = Y * es.eigenvectors();
    Eigen::MatrixXd LX = LY * es.eigenvectors();
    double worst = 0.0;
    for (int j = 0; j < k; ++j) {
      double lam = es.eigenvalues()(j);
      worst = std::max(worst, (LX.col(j) - lam * X.col(j)).norm());
    }
    out.values = es.eigenvalues().head(k);
    out.vectors = X.leftCols(k);
    if (worst < 1e-10) break;
  }
  return out;
}

}  // namespace vsep
