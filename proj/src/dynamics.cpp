#include "eigenshape/dynamics.hpp"

#include "eigenshape/errors.hpp"

#include <Eigen/SparseCholesky>

#include <cmath>
#include <string>

namespace eigenshape {

namespace {

SpMat diffusion_operator(const Discretization& disc, const BoundaryCondition& bc) {
    if (bc.is_dirichlet() || bc.beta == 0.0) return disc.ops.K;
    return disc.ops.K + bc.beta * disc.ops.B;
}

} // namespace

SimResult simulate_logistic(const Discretization& disc, const BoundaryCondition& bc, const Weight& w, double omega,
                            const Eigen::VectorXd& u0, double t_end, const SimOptions& opts) {
    const Mesh& mesh = disc.mesh;
    w.validate(mesh);
    if (!(omega > 0.0)) throw InvalidArgument("simulate: omega must be positive");
    if (!(t_end > 0.0)) throw InvalidArgument("simulate: t_end must be positive");
    if (u0.size() != mesh.num_vertices()) throw InvalidArgument("simulate: u0 length mismatch");
    if (u0.minCoeff() < 0.0 || !(u0.maxCoeff() > 0.0)) throw InvalidArgument("simulate: u0 must be nonnegative and nonzero");

    const double dt_nominal = opts.dt > 0.0 ? opts.dt : 0.1 / omega;
    const int steps = static_cast<int>(std::ceil(t_end / dt_nominal - 1e-12));
    const double dt = t_end / steps;
    const double ceiling = 10.0 * (w.kappa + 1.0);

    const SpMat& M0 = disc.ops.M0;
    SpMat lhs = M0 + dt * diffusion_operator(disc, bc);
    std::vector<char> fixed(mesh.num_vertices(), 0);
    if (bc.is_dirichlet()) {
        fixed = mesh.boundary_vertex_mask();
        // Identity rows and columns on boundary vertices keep the system symmetric.
        lhs.prune([&fixed](Eigen::Index r, Eigen::Index c, double) { return !fixed[r] && !fixed[c]; });
        for (int v = 0; v < mesh.num_vertices(); ++v)
            if (fixed[v]) lhs.coeffRef(v, v) = 1.0;
        lhs.makeCompressed();
    }
    Eigen::SimplicialLDLT<SpMat> solver(lhs);
    if (solver.info() != Eigen::Success) throw NumericFailure("simulate: factorization of the implicit operator failed");

    const Eigen::VectorXd Lm = lumped_weighted_mass(mesh, w.per_element);
    const Eigen::VectorXd L = lumped_weighted_mass(mesh, std::vector<double>(mesh.num_elements(), 1.0));

    SimResult out;
    Eigen::VectorXd u = u0;
    for (int v = 0; v < mesh.num_vertices(); ++v)
        if (fixed[v]) u[v] = 0.0;
    auto sample = [&](double t) { out.series.push_back({t, u.cwiseAbs().maxCoeff(), (M0 * u).sum()}); };
    sample(0.0);

    for (int n = 1; n <= steps; ++n) {
        Eigen::VectorXd reaction = Lm.cwiseProduct(u);
        if (!opts.linear_only) reaction -= L.cwiseProduct(u.cwiseProduct(u));
        Eigen::VectorXd rhs = M0 * u + (dt * omega) * reaction;
        for (int v = 0; v < mesh.num_vertices(); ++v)
            if (fixed[v]) rhs[v] = 0.0;
        u = solver.solve(rhs);
        for (int v = 0; v < u.size(); ++v)
            if (u[v] < 0.0) {
                u[v] = 0.0;
                ++out.clipped;
            }
        if (!opts.linear_only && !(u.maxCoeff() <= ceiling))
            throw NumericFailure("simulate: max u exceeded " + std::to_string(ceiling) + " at step " +
                                 std::to_string(n) + "; use a smaller dt");
        sample(n == steps ? t_end : n * dt);
    }
    out.steps = steps;
    out.state = {u, t_end, omega, dt};
    return out;
}

double steady_state_residual(const Discretization& disc, const BoundaryCondition& bc, const Weight& w, double omega,
                             const Eigen::VectorXd& u) {
    const Mesh& mesh = disc.mesh;
    const Eigen::VectorXd Lm = lumped_weighted_mass(mesh, w.per_element);
    const Eigen::VectorXd L = lumped_weighted_mass(mesh, std::vector<double>(mesh.num_elements(), 1.0));
    Eigen::VectorXd r = diffusion_operator(disc, bc) * u - omega * (Lm.cwiseProduct(u) - L.cwiseProduct(u.cwiseProduct(u)));
    Eigen::VectorXd scale = omega * Lm.cwiseProduct(u);
    if (bc.is_dirichlet()) {
        const auto mask = mesh.boundary_vertex_mask();
        for (int v = 0; v < mesh.num_vertices(); ++v)
            if (mask[v]) r[v] = scale[v] = 0.0;
    }
    return r.norm() / scale.norm();
}

} // namespace eigenshape
