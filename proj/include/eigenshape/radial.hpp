#pragma once

#include "eigenshape/eigen.hpp"

#include <vector>

namespace eigenshape {

struct RadialResult {
    /// phi is normalized in the r^{N-1}-weighted L2 norm.
    EigenResult eig;
    /// Node radii, uniform on [0, R].
    std::vector<double> r;
};

/// Principal eigenvalue of  U'' + ((N-1)/r) U' + lambda m(r) U = 0  on (0, R)
/// with m = kappa on the rings and -1 elsewhere, no flux at r = 0 and the
/// boundary condition at r = R.
///
/// P1 elements on `n_cells` uniform cells with the measure r^{N-1} dr in every
/// inner product. Element integrals are exact: cells cut by a ring boundary are
/// split and each piece is integrated by Gauss-Legendre quadrature.
RadialResult radial_eigen(int N, const RadialRings& rings, double kappa, const BoundaryCondition& bc,
                          int n_cells);

} // namespace eigenshape
