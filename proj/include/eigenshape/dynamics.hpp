#pragma once

#include "eigenshape/assembly.hpp"

#include <Eigen/Core>

#include <vector>

namespace eigenshape {

struct SimOptions {
    /// Time step; 0 selects 0.1/omega. The last step is shortened to land on t_end.
    double dt = 0.0;
    /// Drops the -u^2 term (linearized growth about u = 0).
    bool linear_only = false;
};

struct SimSample {
    double t = 0.0;
    double linf = 0.0;
    /// int u, with the consistent mass.
    double mass = 0.0;
};

struct SimState {
    Eigen::VectorXd u;
    double t = 0.0;
    double omega = 0.0;
    double dt = 0.0;
};

struct SimResult {
    SimState state;
    /// One sample per step, starting with t = 0.
    std::vector<SimSample> series;
    /// Vertex values clipped from negative to zero, summed over all steps.
    long clipped = 0;
    int steps = 0;
};

/// Semi-implicit time stepping of  u_t = Delta u + omega u (m - u)  with the
/// boundary condition on a Weight m:
///
///   (M0 + dt (K + beta B)) u^{n+1} = M0 u^n + dt omega (L(m) u^n - L u^n u^n)
///
/// where L(m) and L are the row-sum lumped weighted and plain masses. Dirichlet
/// vertices are held at zero. Negative values are clipped to zero and counted.
///
/// Throws InvalidArgument for omega <= 0, t_end <= 0 or a negative or zero
/// u0, and NumericFailure when max u exceeds 10 (kappa + 1) (the step is too large).
SimResult simulate_logistic(const Discretization& disc, const BoundaryCondition& bc, const Weight& w, double omega,
                            const Eigen::VectorXd& u0, double t_end, const SimOptions& opts = {});

/// Relative residual of the discrete steady-state equation,
/// ||(K + beta B) u - omega (L(m) u - L u u)|| / ||omega L(m) u||, over free vertices.
double steady_state_residual(const Discretization& disc, const BoundaryCondition& bc, const Weight& w, double omega,
                             const Eigen::VectorXd& u);

} // namespace eigenshape
