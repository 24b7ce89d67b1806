#include "eigenshape/eigen.hpp"

#include "eigenshape/errors.hpp"
#include "eigenshape/lanczos.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace eigenshape {

namespace {

constexpr double kLambdaCeiling = 1e8;
// Neumann shifts below this are treated as a failed bracket.
constexpr double kNeumannShiftFloor = 1e-6;

double inf_norm(const SpMat& A) {
    Eigen::VectorXd rows = Eigen::VectorXd::Zero(A.rows());
    for (int k = 0; k < A.outerSize(); ++k)
        for (SpMat::InnerIterator it(A, k); it; ++it) rows[it.row()] += std::abs(it.value());
    return rows.size() ? rows.maxCoeff() : 0.0;
}

// Interior-vertex restriction used for Dirichlet conditions.
struct Reduction {
    std::vector<int> free;
    SpMat P; // free x n selection

    static Reduction interior(const Mesh& mesh) {
        Reduction r;
        const auto mask = mesh.boundary_vertex_mask();
        for (int v = 0; v < mesh.num_vertices(); ++v)
            if (!mask[v]) r.free.push_back(v);
        r.P.resize(static_cast<Eigen::Index>(r.free.size()), mesh.num_vertices());
        std::vector<Eigen::Triplet<double>> t;
        for (int i = 0; i < static_cast<int>(r.free.size()); ++i) t.emplace_back(i, r.free[i], 1.0);
        r.P.setFromTriplets(t.begin(), t.end());
        return r;
    }

    SpMat restrict(const SpMat& A) const {
        SpMat out = P * A * SpMat(P.transpose());
        out.makeCompressed();
        return out;
    }
    Eigen::VectorXd restrict(const Eigen::VectorXd& v) const { return P * v; }
    Eigen::VectorXd expand(const Eigen::VectorXd& v) const { return P.transpose() * v; }
};

SpMat robin_operator(const Discretization& disc, const BoundaryCondition& bc) {
    if (bc.is_dirichlet() || bc.beta == 0.0) return disc.ops.K;
    return disc.ops.K + bc.beta * disc.ops.B;
}

void normalize_and_fill(EigenResult& r, const SpMat& A, const SpMat& M, const SpMat& M0) {
    Eigen::VectorXd& phi = r.phi;
    phi /= std::sqrt(phi.dot(M0 * phi));
    if ((M0 * phi).sum() < 0.0) phi = -phi;
    const double num = phi.dot(A * phi);
    const double den = phi.dot(M * phi);
    if (!(den > 0.0)) throw NumericFailure("principal eigenfunction has int m phi^2 <= 0");
    r.lambda = num / den;
    const Eigen::VectorXd res = A * phi - r.lambda * (M * phi);
    r.residual = res.norm() / ((inf_norm(A) + r.lambda * inf_norm(M)) * phi.norm());
    r.positivity_margin = phi.minCoeff();
}

} // namespace

EigenResult principal_eigen_pencil(const SpMat& A, const SpMat& M, const SpMat& M0, bool semidefinite,
                                   const EigenOptions& opts) {
    const Eigen::Index n = A.rows();
    if (M.rows() != n || M0.rows() != n) throw InvalidArgument("principal_eigen: operator sizes differ");

    // Constants are the zero mode under Neumann conditions, so the default
    // start is concentrated where the weight is positive instead.
    Eigen::VectorXd start = (M * Eigen::VectorXd::Ones(n)).cwiseMax(0.0);
    start.array() += 1e-2 * start.maxCoeff() + 1e-300;
    if (opts.initial && opts.initial->size() == n) start = opts.initial->cwiseAbs();

    EigenResult result;
    SpdFactor factor;
    double sigma = 0.0;
    double hint = opts.lambda_hint > 0.0 ? opts.lambda_hint : 0.0;
    // Without a hint, a first pass at a crude shift finds an estimate and the
    // second pass re-shifts to half of it; this separates the wanted end of
    // the spectrum from the eigenvalues at or below zero.
    for (int pass = 0; pass < 2; ++pass) {
        if (hint > 0.0)
            sigma = 0.5 * hint;
        else
            sigma = semidefinite ? 1.0 : 0.0;

        bool ok = false;
        while (!ok) {
            const SpMat S = sigma == 0.0 ? A : SpMat(A - sigma * M);
            ok = factor.factor(S);
            if (ok) break;
            if (semidefinite) {
                sigma *= 0.25;
                if (sigma < kNeumannShiftFloor)
                    throw NumericFailure("principal_eigen: no positive-definite shift above " +
                                         std::to_string(kNeumannShiftFloor));
            } else if (sigma > 0.0) {
                sigma = sigma > 1e-3 * hint ? sigma * 0.25 : 0.0;
            } else {
                throw NumericFailure("principal_eigen: K + beta B is not positive definite");
            }
        }
        const SpMat S = sigma == 0.0 ? A : SpMat(A - sigma * M);
        const bool final_pass = hint > 0.0 || pass == 1;
        const double tol = final_pass ? opts.tol : 1e-4;
        const auto lz = largest_pencil_eigen(M, S, factor, start, tol, opts.max_iters);
        result.iters += lz.iters;
        if (!lz.converged) throw NumericFailure("principal_eigen: Lanczos did not converge at shift " +
                                                std::to_string(sigma));
        if (!(lz.value > 0.0)) throw NoPositiveEigenvalue("principal_eigen: pencil has no positive eigenvalue");
        const double lambda = sigma + 1.0 / lz.value;
        if (!(lambda < kLambdaCeiling)) throw NumericFailure("principal_eigen: eigenvalue above 1e8");
        start = lz.vec;
        if (final_pass) {
            result.phi = lz.vec;
            break;
        }
        hint = lambda;
    }
    normalize_and_fill(result, A, M, M0);
    return result;
}

EigenResult principal_eigen(const Discretization& disc, const Weight& w, const BoundaryCondition& bc,
                            const EigenOptions& opts) {
    const Mesh& mesh = disc.mesh;
    w.validate(mesh);
    if (bc.is_neumann() && !(w.integral(mesh) < 0.0))
        throw NoPositiveEigenvalue("Neumann problem needs int m < 0 for a positive principal eigenvalue");

    const SpMat A = robin_operator(disc, bc);
    const SpMat M = weighted_mass(mesh, w);
    if (!bc.is_dirichlet()) return principal_eigen_pencil(A, M, disc.ops.M0, bc.is_neumann(), opts);

    const auto red = Reduction::interior(mesh);
    EigenOptions local = opts;
    Eigen::VectorXd init;
    if (opts.initial && opts.initial->size() == mesh.num_vertices()) {
        init = red.restrict(*opts.initial);
        local.initial = &init;
    } else {
        local.initial = nullptr;
    }
    EigenResult r = principal_eigen_pencil(red.restrict(A), red.restrict(M), red.restrict(disc.ops.M0), false, local);
    r.phi = red.expand(r.phi);
    r.positivity_margin = r.phi.minCoeff();
    return r;
}

SpectralProbe spectral_rho(const Discretization& disc, const SpMat& M, const BoundaryCondition& bc, double lam) {
    const Mesh& mesh = disc.mesh;
    if (M.rows() != disc.ops.n) throw InvalidArgument("spectral_rho: operator sizes differ");
    SpMat H = robin_operator(disc, bc) - lam * M;
    SpMat M0 = disc.ops.M0;
    std::optional<Reduction> red;
    if (bc.is_dirichlet()) {
        red = Reduction::interior(mesh);
        H = red->restrict(H);
        M0 = red->restrict(M0);
    }

    // H - tau M0 is positive definite once tau is below the smallest
    // eigenvalue; a successful factorization certifies the choice.
    SpdFactor factor;
    double scale = 1.0;
    double tau = 0.0;
    for (int attempt = 0;; ++attempt) {
        tau = -(std::abs(lam) * scale + 1.0);
        if (factor.factor(SpMat(H - tau * M0))) break;
        scale *= 4.0;
        if (attempt > 40) throw NumericFailure("spectral_rho: factorization breakdown at lam=" + std::to_string(lam));
    }
    const SpMat S = H - tau * M0;
    const Eigen::VectorXd start = Eigen::VectorXd::Ones(H.rows());
    const auto lz = largest_pencil_eigen(M0, S, factor, start, 1e-13, 4000);
    if (!lz.converged || !(lz.value > 0.0))
        throw NumericFailure("spectral_rho: iteration failed at lam=" + std::to_string(lam));

    SpectralProbe probe;
    probe.lam = lam;
    Eigen::VectorXd v = lz.vec;
    v /= std::sqrt(v.dot(M0 * v));
    if ((M0 * v).sum() < 0.0) v = -v;
    probe.rho = v.dot(H * v);
    probe.iters = lz.iters;
    probe.eigvec = red ? red->expand(v) : v;
    return probe;
}

double gamma_eigen(const Discretization& disc, std::span<const double> mu, const BoundaryCondition& bc) {
    return spectral_rho(disc, weighted_mass(disc.mesh, mu), bc, 1.0).rho;
}

double rayleigh_quotient(const Discretization& disc, const SpMat& M, const BoundaryCondition& bc,
                         const Eigen::VectorXd& phi) {
    return phi.dot(robin_operator(disc, bc) * phi) / phi.dot(M * phi);
}

} // namespace eigenshape
