#include "eigenshape/lanczos.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <vector>

namespace eigenshape {

bool SpdFactor::factor(const SpMat& A) {
    if (!analyzed_ || A.nonZeros() != pattern_nnz_ || A.rows() != pattern_rows_) {
        llt_.analyzePattern(A);
        analyzed_ = true;
        pattern_nnz_ = A.nonZeros();
        pattern_rows_ = A.rows();
    }
    llt_.factorize(A);
    return llt_.info() == Eigen::Success;
}

LanczosResult largest_pencil_eigen(const SpMat& T, const SpMat& S, const SpdFactor& S_factor,
                                   const Eigen::VectorXd& start, double tol, int max_iters, int basis_size) {
    const Eigen::Index n = S.rows();
    const int m = static_cast<int>(std::min<Eigen::Index>(basis_size, n));
    LanczosResult out;

    auto s_norm = [&S](const Eigen::VectorXd& v) { return std::sqrt(std::max(0.0, v.dot(S * v))); };

    Eigen::VectorXd x = start;
    double nx = s_norm(x);
    if (!(nx > 0.0)) {
        x = Eigen::VectorXd::Ones(n);
        nx = s_norm(x);
    }
    x /= nx;

    Eigen::MatrixXd Q(n, m + 1);
    std::vector<double> alpha, beta;
    alpha.reserve(m);
    beta.reserve(m);

    while (out.iters < max_iters) {
        Q.col(0) = x;
        alpha.clear();
        beta.clear();
        int j = 0;
        double theta = 0.0;
        Eigen::VectorXd ritz;
        bool done = false;
        bool exhausted = false;
        for (; j < m && out.iters < max_iters; ++j) {
            ++out.iters;
            const Eigen::VectorXd tq = T * Q.col(j);
            Eigen::VectorXd w = S_factor.solve(tq);
            alpha.push_back(Q.col(j).dot(tq));
            // Two passes of classical Gram-Schmidt in the S-inner product.
            for (int pass = 0; pass < 2; ++pass) {
                const Eigen::VectorXd sw = S * w;
                const Eigen::VectorXd coef = Q.leftCols(j + 1).transpose() * sw;
                w.noalias() -= Q.leftCols(j + 1) * coef;
            }
            const double b = s_norm(w);
            beta.push_back(b);

            const int k = j + 1;
            Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k, k);
            for (int i = 0; i < k; ++i) {
                tri(i, i) = alpha[i];
                if (i + 1 < k) tri(i, i + 1) = tri(i + 1, i) = beta[i];
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
            theta = es.eigenvalues()(k - 1);
            ritz = es.eigenvectors().col(k - 1);
            const double est = std::abs(b * ritz(k - 1));
            const double scale = std::max(std::abs(theta), es.eigenvalues().cwiseAbs().maxCoeff() * 1e-3);
            if (est <= tol * scale) {
                done = true;
                j = k;
                break;
            }
            if (b <= 1e-14 * scale) {
                // Invariant subspace: the Ritz pair is exact.
                exhausted = true;
                j = k;
                break;
            }
            Q.col(k) = w / b;
        }
        const int k = static_cast<int>(alpha.size());
        x = Q.leftCols(k) * ritz;
        x /= s_norm(x);
        out.value = theta;
        if (done || exhausted) {
            out.converged = true;
            break;
        }
    }
    out.vec = x;
    return out;
}

} // namespace eigenshape
