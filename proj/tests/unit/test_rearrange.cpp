#include "eigenshape/errors.hpp"
#include "eigenshape/rearrange.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace eigenshape;

namespace {

double side_sum(const std::vector<double>& v, const std::vector<double>& mu, int lo, int hi) {
    double s = 0.0;
    for (int i = lo; i < hi; ++i) s += v[i] * mu[i];
    return s;
}

// Independent closed-form area of the cap intersected with B(0,R).
double cap_area(double R, double rc) {
    const double h = std::sqrt(R * R + rc * rc);
    return R * R * std::asin(rc / h) + rc * rc * std::asin(R / h) - rc * R;
}

} // namespace

TEST(Bathtub, GreedyPicksLargest) {
    const std::vector<double> mu{0.5, 0.3, 0.2};
    const std::vector<double> v{3, 2, 1};
    const auto r = bathtub_select(v, mu, 0.5);
    EXPECT_EQ(r.selected, (std::vector<char>{1, 0, 0}));
    EXPECT_EQ(r.alpha, 3.0);
    EXPECT_DOUBLE_EQ(r.volume, 0.5);
}

TEST(Bathtub, TiesFollowIndexOrder) {
    const std::vector<double> mu(10, 0.1);
    const std::vector<double> v(10, 2.0);
    const auto r = bathtub_select(v, mu, 0.35);
    EXPECT_EQ(r.selected, (std::vector<char>{1, 1, 1, 1, 0, 0, 0, 0, 0, 0}));
    EXPECT_EQ(r.alpha, 2.0);
}

TEST(Bathtub, NearFullTarget) {
    const std::vector<double> mu{0.1, 0.4, 0.2, 0.3};
    const std::vector<double> v{4, 1, 3, 2};
    const auto r = bathtub_select(v, mu, 1.0 - 1e-3);
    EXPECT_EQ(r.selected, (std::vector<char>{1, 1, 1, 1}));
    const auto s = bathtub_select(v, mu, 0.55);
    EXPECT_EQ(s.selected, (std::vector<char>{1, 0, 1, 1}));
    EXPECT_LE(s.volume - 0.55, 0.4);
}

TEST(Bathtub, RandomInvariants) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 200;
        std::vector<double> v(n), mu(n);
        for (int i = 0; i < n; ++i) {
            v[i] = std::floor(20.0 * u(rng));
            mu[i] = 0.01 + u(rng);
        }
        double total = 0.0;
        for (double m : mu) total += m;
        const double target = u(rng) * total;
        const auto r = bathtub_select(v, mu, target);
        EXPECT_GE(r.volume, target * (1.0 - 1e-12));
        EXPECT_LE(r.volume - target, *std::max_element(mu.begin(), mu.end()));
        int last_tied = -1;
        for (int i = 0; i < n; ++i) {
            if (r.selected[i]) {
                EXPECT_GE(v[i], r.alpha);
                if (v[i] == r.alpha) last_tied = i;
            }
        }
        for (int i = 0; i < n; ++i) {
            if (r.selected[i]) continue;
            EXPECT_LE(v[i], r.alpha);
            if (v[i] == r.alpha) { EXPECT_GT(i, last_tied); }
        }
    }
}

TEST(Bathtub, ThresholdUsesCentroidValues) {
    const Mesh m = gen_interval(4);
    Eigen::VectorXd phi(5);
    phi << 0.0, 1.0, 4.0, 1.0, 0.0;
    EXPECT_EQ(centroid_values(m, phi), (std::vector<double>{0.5, 2.5, 2.5, 0.5}));
    const auto r = bathtub_threshold(m, phi, 0.5);
    EXPECT_EQ(r.selected, (std::vector<char>{0, 1, 1, 0}));
    EXPECT_DOUBLE_EQ(r.alpha, 2.5);
}

TEST(MonotoneTwoSided, SortsEachSide) {
    const std::vector<double> mu{1, 1, 1};
    const auto r = monotone_two_sided_1d(std::vector<double>{1, 3, 2}, mu, 2);
    EXPECT_EQ(r.values, (std::vector<double>{1, 2, 3}));
    const std::vector<double> uni{0.1, 0.5, 0.9, 0.7, 0.2};
    const auto same = monotone_two_sided_1d(uni, std::vector<double>(5, 0.2), 2);
    EXPECT_EQ(same.values, uni);
}

TEST(MonotoneTwoSided, Equimeasurable) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 101;
        std::vector<double> v(n), mu(n);
        for (int i = 0; i < n; ++i) {
            v[i] = u(rng);
            mu[i] = u(rng);
        }
        const int peak = trial * 5;
        const auto r = monotone_two_sided_1d(v, mu, peak);
        EXPECT_NEAR(side_sum(r.values, r.measures, 0, peak + 1), side_sum(v, mu, 0, peak + 1), 1e-12);
        EXPECT_NEAR(side_sum(r.values, r.measures, peak + 1, n), side_sum(v, mu, peak + 1, n), 1e-12);
        EXPECT_TRUE(std::is_sorted(r.values.begin(), r.values.begin() + peak + 1));
        EXPECT_TRUE(std::is_sorted(r.values.begin() + peak + 1, r.values.end(), std::greater<>()));
        auto a = v, b = r.values;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        EXPECT_EQ(a, b);
    }
}

TEST(MonotoneTwoSided, RejectsBadPeak) {
    const std::vector<double> v{1, 2};
    EXPECT_THROW(monotone_two_sided_1d(v, v, 2), InvalidArgument);
    EXPECT_THROW(monotone_two_sided_1d(v, v, -1), InvalidArgument);
}

TEST(Schwarz, AnnulusToBall) {
    const auto r = schwarz_radial(RadialRings{{{0.5, 0.7}}, 1.0}, 2);
    ASSERT_EQ(r.rings.size(), 1u);
    EXPECT_EQ(r.rings[0].first, 0.0);
    EXPECT_NEAR(r.rings[0].second, std::sqrt(0.7 * 0.7 - 0.5 * 0.5), 1e-15);
    const RadialRings ball{{{0.0, 0.3}}, 1.0};
    EXPECT_NEAR(schwarz_radial(ball, 3).rings[0].second, 0.3, 1e-15);
}

TEST(Schwarz, PreservesVolume) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int N = 1; N <= 4; ++N) {
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> cuts(6);
            for (double& x : cuts) x = u(rng);
            std::sort(cuts.begin(), cuts.end());
            RadialRings rr{{{cuts[0], cuts[1]}, {cuts[2], cuts[3]}, {cuts[4], cuts[5]}}, 1.0};
            EXPECT_NEAR(schwarz_radial(rr, N).normalized_volume(N), rr.normalized_volume(N), 1e-12);
        }
    }
}

TEST(Stretch, WholeBallIsFixed) {
    const RadialRings all{{{0.0, 1.0}}, 1.0};
    const Mesh m = gen_disk(1.0, 16);
    const Weight w = stretch_weight(m, all, 2.0);
    for (double v : w.per_element) EXPECT_EQ(v, 2.0);
}

TEST(Stretch, MembershipMap) {
    const RadialRings ball{{{0.0, 0.4}}, 1.0};
    // x' = 0: y1 = (x1 + 1)/2 lies in the ball iff x1 <= -0.2.
    EXPECT_TRUE(stretch_contains(ball, {-0.21, 0.0}));
    EXPECT_FALSE(stretch_contains(ball, {-0.19, 0.0}));
    // The far endpoint maps to the center, so the stretched set reaches the boundary.
    EXPECT_TRUE(stretch_contains(ball, {-1.0, 0.0}));
    EXPECT_TRUE(stretch_contains(ball, {-1.0 + 1e-9, 0.0}));
    EXPECT_THROW(stretch_contains(ball, {0.8, 0.8}), InvalidArgument);
    EXPECT_THROW(stretch_contains(RadialRings{{{0.0, 0.4}}, 2.0}, {0.0, 0.0}), InvalidArgument);
}

TEST(Stretch, VolumeMatchesMonteCarlo) {
    const double r0 = std::sqrt(0.2);
    const RadialRings ball{{{0.0, r0}}, 1.0};
    const double exact = std::numbers::pi * r0 * r0;

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    long inside = 0, hits = 0;
    while (inside < 400000) {
        const Point p{u(rng), u(rng)};
        if (p[0] * p[0] + p[1] * p[1] > 1.0) continue;
        ++inside;
        if (stretch_contains(ball, p)) ++hits;
    }
    EXPECT_NEAR(std::numbers::pi * static_cast<double>(hits) / static_cast<double>(inside), exact, 0.01 * exact);

    // First order in the ring width: the error is a band of width O(1/n) along the stretched boundary.
    double err = 0.0;
    for (int n : {32, 64, 128}) {
        const Mesh m = gen_disk(1.0, n);
        err = std::abs(stretch_weight(m, ball, 1.0).positive_volume(m) - exact);
        EXPECT_LT(err * n, 0.1);
    }
    EXPECT_LT(err, 0.01 * exact);
}

TEST(CapRadius, PublishedValues) {
    const double R = 1.0 / std::sqrt(std::numbers::pi);
    EXPECT_NEAR(cap_radius_from_fraction(R, 0.1).r_c, 0.3408, 5e-4);
    EXPECT_NEAR(cap_radius_from_fraction(R, 0.25).r_c, 0.8166, 5e-4);
    EXPECT_NEAR(cap_radius_from_fraction(R, 0.4).r_c, 2.3408, 5e-4);
}

TEST(CapRadius, AreaRoundTrip) {
    for (double R : {0.3, 1.0, 5.0}) {
        for (double c : {0.01, 0.1, 0.3, 0.45, 0.49}) {
            const DiskCap cap = cap_radius_from_fraction(R, c);
            EXPECT_NEAR(cap_area(R, cap.r_c), c * std::numbers::pi * R * R, 1e-10 * R * R);
            EXPECT_NEAR(cap.area(), c * std::numbers::pi * R * R, 1e-10 * R * R);
            EXPECT_NEAR(cap.center_distance, std::hypot(R, cap.r_c), 1e-14 * cap.center_distance);
        }
    }
    EXPECT_THROW(cap_radius_from_fraction(1.0, 0.5), InvalidArgument);
    EXPECT_THROW(cap_radius_from_fraction(1.0, 0.0), InvalidArgument);
}

TEST(StretchConstant, LowestTerms) {
    EXPECT_EQ(stretch_constant(1), (Rational{1, 4}));
    EXPECT_EQ(stretch_constant(2), (Rational{3, 4}));
    EXPECT_EQ(stretch_constant(3), (Rational{11, 12}));
    EXPECT_EQ(stretch_constant(4), (Rational{1, 1}));
    EXPECT_DOUBLE_EQ(stretch_constant(3).value(), 11.0 / 12.0);
}
