#pragma once

#include "eigenshape/assembly.hpp"

#include <Eigen/Core>

#include <span>

namespace eigenshape {

struct EigenResult {
    double lambda = 0.0;
    /// Vertex values, normalized so that int phi^2 = 1 and int phi > 0.
    Eigen::VectorXd phi;
    /// ||(A - lambda M) phi||_2 / ((||A||_inf + lambda ||M||_inf) ||phi||_2),
    /// where A = K + beta B (reduced to interior vertices under Dirichlet).
    double residual = 0.0;
    /// Krylov steps spent, summed over all shifts tried.
    int iters = 0;
    /// Smallest vertex value of phi after sign normalization.
    double positivity_margin = 0.0;
};

struct EigenOptions {
    /// A previous estimate of lambda; enables a shift at half its value.
    double lambda_hint = 0.0;
    /// Optional full-length starting vector (for example a previous eigenfunction).
    const Eigen::VectorXd* initial = nullptr;
    double tol = 1e-11;
    int max_iters = 4000;
};

/// Positive principal eigenvalue of  -Delta phi = lambda m phi  with the given
/// boundary condition, for the weight w.
///
/// The pencil (K + beta B, M(m)) is shifted by sigma in (lambda^-, lambda) so
/// that K + beta B - sigma M(m) is positive definite; the principal eigenvalue
/// is then the largest eigenvalue mu of  M x = mu (K + beta B - sigma M) x,
/// lambda = sigma + 1/mu. A successful Cholesky factorization of the shifted
/// operator certifies the shift is below the principal eigenvalue.
///
/// Throws NoPositiveEigenvalue if {m > 0} is empty or, under Neumann
/// conditions, if int m >= 0. Throws NumericFailure if no admissible shift is
/// found or the iteration does not converge.
EigenResult principal_eigen(const Discretization& disc, const Weight& w, const BoundaryCondition& bc,
                            const EigenOptions& opts = {});

/// Same solve on a user-supplied pencil (A symmetric positive semidefinite,
/// M symmetric, M0 symmetric positive definite). `semidefinite` marks A as
/// singular on constants, as for Neumann conditions.
EigenResult principal_eigen_pencil(const SpMat& A, const SpMat& M, const SpMat& M0, bool semidefinite,
                                   const EigenOptions& opts = {});

struct SpectralProbe {
    double lam = 0.0;
    /// Smallest eigenvalue of the pencil (K + beta B - lam M, M0).
    double rho = 0.0;
    /// Associated vector, M0-normalized, full length.
    Eigen::VectorXd eigvec;
    int iters = 0;
};

/// Smallest eigenvalue rho(lam) of (K + beta B - lam M, M0) by shift-invert
/// Lanczos. Under Dirichlet conditions the pencil is reduced to interior vertices.
SpectralProbe spectral_rho(const Discretization& disc, const SpMat& M, const BoundaryCondition& bc, double lam);

/// Principal eigenvalue of  -Delta psi = (mu + gamma) psi  with Robin/Dirichlet
/// conditions, for a per-element growth rate mu.
double gamma_eigen(const Discretization& disc, std::span<const double> mu, const BoundaryCondition& bc);

/// (phi^T (K + beta B) phi) / (phi^T M phi).
double rayleigh_quotient(const Discretization& disc, const SpMat& M, const BoundaryCondition& bc,
                         const Eigen::VectorXd& phi);

} // namespace eigenshape
