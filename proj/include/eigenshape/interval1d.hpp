#pragma once

#include "eigenshape/assembly.hpp"

namespace eigenshape {

/// Threshold Robin coefficient separating centered and boundary optimal
/// intervals on (0,1), for resource bound kappa and volume fraction c.
double beta_star(double kappa, double c);

/// Principal eigenvalue on (0,1) of  phi'' + lambda m phi = 0  with
/// m = kappa on [a, a+c] and -1 elsewhere, computed without a mesh.
///
/// The solution is propagated piecewise in closed form (hyperbolic on the
/// m = -1 pieces, trigonometric on the m = kappa piece) with C^1 matching. The
/// boundary mismatch at x = 1 is scanned in steps of 0.1 from lambda = 1e-6
/// and the first sign change is bisected to 1e-12 relative width. The
/// eigenfunction at the root is checked to be positive.
///
/// Throws InvalidArgument for a outside [0, 1-c] and NumericFailure when no
/// root exists below 1e6 or the first root is not principal.
double interval_eigen_1d(double a, double c, double kappa, const BoundaryCondition& bc);

/// Boundary mismatch D(lambda) whose roots are the eigenvalues; exposed for tests.
double interval_mismatch_1d(double lambda, double a, double c, double kappa, const BoundaryCondition& bc);

/// Samples of the (unnormalized) solution of the shooting problem at `x`.
double interval_solution_1d(double x, double lambda, double a, double c, double kappa, const BoundaryCondition& bc);

} // namespace eigenshape
