#pragma once

#include "eigenshape/assembly.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCholesky>

namespace eigenshape {

/// Sparse Cholesky factorization that reports indefiniteness instead of throwing.
class SpdFactor {
public:
    /// Returns false if the matrix is not numerically positive definite.
    bool factor(const SpMat& A);
    Eigen::VectorXd solve(const Eigen::VectorXd& b) const { return llt_.solve(b); }

private:
    Eigen::SimplicialLLT<SpMat, Eigen::Lower, Eigen::AMDOrdering<int>> llt_;
    bool analyzed_ = false;
    Eigen::Index pattern_nnz_ = -1;
    Eigen::Index pattern_rows_ = -1;
};

struct LanczosResult {
    double value = 0.0;
    /// Unit vector in the S-inner product.
    Eigen::VectorXd vec;
    int iters = 0;
    bool converged = false;
};

/// Largest eigenvalue of the symmetric-definite pencil  T x = mu S x  with S
/// positive definite (factorized in `S_factor`). Restarted Lanczos in the
/// S-inner product with full reorthogonalization; `start` must not be
/// S-orthogonal to the wanted eigenvector.
LanczosResult largest_pencil_eigen(const SpMat& T, const SpMat& S, const SpdFactor& S_factor,
                                   const Eigen::VectorXd& start, double tol, int max_iters,
                                   int basis_size = 40);

} // namespace eigenshape
