#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace vsep {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Eigenpairs sorted by ascending eigenvalue; columns of `vectors` are unit.
struct EigenPairs {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

/// Graphs up to this many vertices use a dense eigendecomposition.
inline constexpr int kDenseEigenLimit = 200;

/// The k smallest eigenpairs of a symmetric positive semidefinite matrix
/// restricted to the complement of the all-ones vector.
///
/// Intended for Laplacian-like matrices (row sums zero, spectrum in [0, 2]).
/// Small inputs are handled densely; larger ones by shift-invert block
/// subspace iteration with Rayleigh-Ritz. `warm` seeds the starting block.
EigenPairs smallest_nontrivial_eigs(const SparseMatrix& L, int k,
                                    const Eigen::MatrixXd* warm = nullptr);

/// Dense variant; all n-1 nontrivial pairs when k >= n-1.
EigenPairs smallest_nontrivial_eigs_dense(const Eigen::MatrixXd& L, int k);

}  // namespace vsep
