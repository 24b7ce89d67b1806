#include "eigenshape/assembly.hpp"
#include "eigenshape/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace eigenshape;

namespace {

double quad(const SpMat& A, const Eigen::VectorXd& v) { return v.dot(A * v); }

Eigen::VectorXd ones(const Mesh& m) { return Eigen::VectorXd::Ones(m.num_vertices()); }

// Fraction of uniform samples in B(0,R) that fall inside the cap.
double monte_carlo_cap_fraction(const DiskCap& cap, int samples) {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(-cap.R, cap.R);
    int inside = 0, hits = 0;
    while (inside < samples) {
        const Point x = {u(rng), u(rng)};
        if (std::hypot(x[0], x[1]) >= cap.R) continue;
        ++inside;
        if (std::hypot(x[0] - cap.center_distance, x[1]) < cap.r_c) ++hits;
    }
    return static_cast<double>(hits) / samples;
}

} // namespace

TEST(Operators, ConstantsInStiffnessKernel) {
    for (const Mesh& m : {gen_interval(2), gen_rectangle(1, 2, 3, 4), gen_disk(1, 5)}) {
        const auto ops = assemble_operators(m);
        const Eigen::VectorXd rows = ops.K * ones(m);
        EXPECT_LT(rows.cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_NEAR(quad(ops.K, ones(m)), 0.0, 1e-12);
    }
}

TEST(Operators, PartitionOfUnity) {
    for (const Mesh& m : {gen_interval(9), gen_rectangle(2, 1, 5, 3), gen_disk(0.7, 6)}) {
        const auto ops = assemble_operators(m);
        EXPECT_NEAR(quad(ops.M0, ones(m)), m.total_measure(), 1e-10 * m.total_measure());
        EXPECT_NEAR(quad(ops.B, ones(m)), m.boundary_measure(), 1e-10 * m.boundary_measure());
    }
    EXPECT_DOUBLE_EQ(gen_interval(9).boundary_measure(), 2.0);
}

TEST(Operators, SymmetricAndDefinite) {
    const Mesh m = gen_disk(1, 4);
    const auto ops = assemble_operators(m);
    for (const SpMat* A : {&ops.K, &ops.B, &ops.M0}) EXPECT_LT((SpMat(A->transpose()) - *A).norm(), 1e-14);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    for (int t = 0; t < 20; ++t) {
        Eigen::VectorXd v(m.num_vertices());
        for (auto& x : v) x = g(rng);
        EXPECT_GE(quad(ops.K, v), -1e-12);
        EXPECT_GE(quad(ops.B, v), -1e-12);
        EXPECT_GT(quad(ops.M0, v), 0.0);
    }
}

TEST(Operators, BoundaryMassOnlyOnBoundary) {
    const Mesh m = gen_rectangle(1, 1, 4, 4);
    const auto ops = assemble_operators(m);
    const auto mask = m.boundary_vertex_mask();
    for (int k = 0; k < ops.B.outerSize(); ++k)
        for (SpMat::InnerIterator it(ops.B, k); it; ++it) {
            EXPECT_TRUE(mask[it.row()]);
            EXPECT_TRUE(mask[it.col()]);
        }
}

TEST(Operators, RayleighQuotientOfSineConvergesQuadratically) {
    double prev = 0.0;
    for (int n : {16, 32, 64, 128}) {
        const Mesh m = gen_interval(n);
        const auto ops = assemble_operators(m);
        Eigen::VectorXd v(m.num_vertices());
        for (int i = 0; i < m.num_vertices(); ++i) v[i] = std::sin(std::numbers::pi * m.vertices[i][0]);
        const double err = std::abs(quad(ops.K, v) / quad(ops.M0, v) - std::numbers::pi * std::numbers::pi);
        if (prev > 0.0) { EXPECT_NEAR(prev / err, 4.0, 0.2); }
        prev = err;
    }
}

TEST(Operators, DegenerateElementReportsIndex) {
    Mesh m = gen_interval(4);
    m.vertices[2] = m.vertices[1];
    EXPECT_THROW(finalize_mesh(m), AssemblyFailure);
}

TEST(WeightedMass, ReducesToPlainMass) {
    const Mesh m = gen_disk(1, 4);
    const auto ops = assemble_operators(m);
    EXPECT_LT((weighted_mass(m, std::vector<double>(m.num_elements(), 1.0)) - ops.M0).norm(), 1e-15);
    EXPECT_LT((weighted_mass(m, std::vector<double>(m.num_elements(), -1.0)) + ops.M0).norm(), 1e-15);
}

TEST(WeightedMass, BangBangIntegral) {
    const Mesh m = gen_rectangle(1, 1, 6, 6);
    std::vector<char> sel(m.num_elements());
    double area_e = 0.0;
    for (int e = 0; e < m.num_elements(); ++e) {
        sel[e] = m.centroid(e)[0] < 0.4;
        if (sel[e]) area_e += m.element_measure[e];
    }
    const double kappa = 0.5;
    const Weight w = bang_bang(sel, kappa);
    EXPECT_NEAR(quad(weighted_mass(m, w), ones(m)), kappa * area_e - (1.0 - area_e), 1e-12);
    EXPECT_NEAR(w.integral(m), kappa * area_e - (1.0 - area_e), 1e-12);
    EXPECT_NEAR(w.positive_volume(m), area_e, 1e-14);
}

TEST(WeightedMass, Linear) {
    const Mesh m = gen_disk(1, 3);
    std::vector<double> a(m.num_elements()), b(m.num_elements()), ab(m.num_elements());
    for (int e = 0; e < m.num_elements(); ++e) {
        a[e] = std::sin(e);
        b[e] = std::cos(3.0 * e);
        ab[e] = 2.0 * a[e] - 0.5 * b[e];
    }
    const SpMat lhs = weighted_mass(m, ab);
    const SpMat rhs = 2.0 * weighted_mass(m, a) - 0.5 * weighted_mass(m, b);
    EXPECT_LT((lhs - rhs).norm(), 1e-14);
}

TEST(WeightedMass, LengthMismatch) {
    const Mesh m = gen_interval(4);
    EXPECT_THROW(weighted_mass(m, std::vector<double>(3, 1.0)), InvalidArgument);
}

TEST(Weight, Validation) {
    const Mesh m = gen_interval(4);
    Weight w = bang_bang({1, 0, 0, 0}, 2.0);
    EXPECT_NO_THROW(w.validate(m));
    w.per_element[1] = 2.5;
    EXPECT_THROW(w.validate(m), InvalidArgument);
    EXPECT_THROW(bang_bang({0, 0, 0, 0}, 2.0).validate(m), NoPositiveEigenvalue);
    EXPECT_THROW(bang_bang({1, 0, 0}, 2.0).validate(m), InvalidArgument);
}

TEST(BoundaryConditionTest, RejectsNegativeBeta) {
    EXPECT_THROW(BoundaryCondition::robin(-1.0), InvalidArgument);
    EXPECT_TRUE(BoundaryCondition::robin(0.0).is_neumann());
    EXPECT_FALSE(BoundaryCondition::dirichlet().is_neumann());
}

TEST(Descriptor, WholeInterval) {
    const Mesh m = gen_interval(16);
    const Weight w = weight_from_descriptor(m, Interval{0.0, 1.0}, 0.7);
    for (double v : w.per_element) EXPECT_EQ(v, 0.7);
}

TEST(Descriptor, CenteredBallVolumeConverges) {
    const double r0 = 0.45;
    double prev = 1.0;
    for (int n : {16, 64, 256}) {
        const Mesh m = gen_disk(1.0, n);
        const double v = weight_from_descriptor(m, RadialRings{{{0.0, r0}}, 1.0}, 1.0).positive_volume(m);
        const double err = std::abs(v - std::numbers::pi * r0 * r0);
        // Centroid membership misplaces at most a band of one ring width along the circle.
        EXPECT_LT(err, 2.0 * std::numbers::pi * r0 / n);
        prev = err;
    }
    EXPECT_LT(prev, 5e-3 * std::numbers::pi * r0 * r0);
}

TEST(Descriptor, CapFractionMatchesMonteCarlo) {
    const double R = 1.0 / std::sqrt(std::numbers::pi);
    const DiskCap cap = DiskCap::make(R, 0.6234);
    const double mc = monte_carlo_cap_fraction(cap, 400000);
    // The closed-form area agrees with sampling to a few standard errors.
    EXPECT_NEAR(cap.area() / (std::numbers::pi * R * R), mc, 3e-3);
    const Mesh m = gen_disk(R, 128);
    const double frac = weight_from_descriptor(m, cap, 0.5).positive_volume(m) / m.total_measure();
    EXPECT_NEAR(frac, mc, 4e-3);
}

TEST(Coordinate, ExportFormat) {
    const auto ops = assemble_operators(gen_interval(2));
    std::ostringstream os;
    write_coordinate(os, ops.K);
    std::istringstream is(os.str());
    int i, j, count = 0;
    double v;
    double sum = 0.0;
    while (is >> i >> j >> v) {
        ++count;
        sum += v;
        EXPECT_GE(i, 0);
        EXPECT_LT(j, 3);
    }
    EXPECT_EQ(count, 7);
    EXPECT_NEAR(sum, 0.0, 1e-14);
}
