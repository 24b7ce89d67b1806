#include "eigenshape/radial.hpp"

#include "eigenshape/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace eigenshape {

namespace {

// 8-point Gauss-Legendre on [-1, 1]; exact to degree 15.
constexpr std::array<double, 8> kNodes = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                          -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                          0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kWeights = {0.1012285362903763, 0.2223810344533745, 0.3137066615205848,
                                            0.3626837833783620, 0.3626837833783620, 0.3137066615205848,
                                            0.2223810344533745, 0.1012285362903763};

struct LocalMatrices {
    std::array<double, 4> K{};
    std::array<double, 4> M0{};
    std::array<double, 4> M{};
};

// Integrates over [lo, hi] inside the cell [r0, r1] with constant weight m.
void accumulate(LocalMatrices& L, double r0, double r1, double lo, double hi, double m, int N) {
    const double h = r1 - r0;
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (std::size_t q = 0; q < kNodes.size(); ++q) {
        const double r = mid + half * kNodes[q];
        const double w = kWeights[q] * half * std::pow(r, N - 1);
        const std::array<double, 2> phi = {(r1 - r) / h, (r - r0) / h};
        const std::array<double, 2> dphi = {-1.0 / h, 1.0 / h};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                L.K[2 * i + j] += w * dphi[i] * dphi[j];
                L.M0[2 * i + j] += w * phi[i] * phi[j];
                L.M[2 * i + j] += w * m * phi[i] * phi[j];
            }
    }
}

} // namespace

RadialResult radial_eigen(int N, const RadialRings& rings, double kappa, const BoundaryCondition& bc,
                          int n_cells) {
    if (N < 1) throw InvalidArgument("radial_eigen: N must be at least 1");
    if (n_cells < 2) throw InvalidArgument("radial_eigen: n_cells must be at least 2");
    if (!(kappa > 0.0)) throw InvalidArgument("radial_eigen: kappa must be positive");
    rings.validate();
    if (rings.rings.empty()) throw NoPositiveEigenvalue("radial_eigen: the set {m > 0} is empty");

    const double R = rings.R;
    const double h = R / n_cells;
    const int n = n_cells + 1;
    RadialResult out;
    out.r.resize(n);
    for (int i = 0; i < n; ++i) out.r[i] = i * h;
    out.r.back() = R;

    std::vector<Eigen::Triplet<double>> tk, tm0, tm;
    double weight_integral = 0.0;
    for (int c = 0; c < n_cells; ++c) {
        const double r0 = out.r[c], r1 = out.r[c + 1];
        std::vector<double> cuts = {r0, r1};
        for (const auto& [lo, hi] : rings.rings)
            for (double b : {lo, hi})
                if (b > r0 && b < r1) cuts.push_back(b);
        std::sort(cuts.begin(), cuts.end());
        LocalMatrices L;
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            const double m = rings.contains_radius(0.5 * (cuts[k] + cuts[k + 1])) ? kappa : -1.0;
            accumulate(L, r0, r1, cuts[k], cuts[k + 1], m, N);
            weight_integral += m * (std::pow(cuts[k + 1], N) - std::pow(cuts[k], N)) / N;
        }
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                tk.emplace_back(c + i, c + j, L.K[2 * i + j]);
                tm0.emplace_back(c + i, c + j, L.M0[2 * i + j]);
                tm.emplace_back(c + i, c + j, L.M[2 * i + j]);
            }
    }
    if (!bc.is_dirichlet() && bc.beta > 0.0) tk.emplace_back(n - 1, n - 1, bc.beta * std::pow(R, N - 1));
    if (bc.is_neumann() && !(weight_integral < 0.0))
        throw NoPositiveEigenvalue("radial_eigen: Neumann problem needs int m < 0");

    const int nf = bc.is_dirichlet() ? n - 1 : n;
    auto build = [&](std::vector<Eigen::Triplet<double>>& t) {
        std::erase_if(t, [nf](const auto& e) { return e.row() >= nf || e.col() >= nf; });
        SpMat A(nf, nf);
        A.setFromTriplets(t.begin(), t.end());
        return A;
    };
    const SpMat K = build(tk), M0 = build(tm0), M = build(tm);
    out.eig = principal_eigen_pencil(K, M, M0, bc.is_neumann());
    if (bc.is_dirichlet()) {
        out.eig.phi.conservativeResize(n);
        out.eig.phi[n - 1] = 0.0;
        out.eig.positivity_margin = out.eig.phi.minCoeff();
    }
    return out;
}

} // namespace eigenshape
