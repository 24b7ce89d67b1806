#pragma once

#include "eigenshape/assembly.hpp"

#include <Eigen/Core>

#include <span>
#include <vector>

namespace eigenshape {

struct BathtubResult {
    std::vector<char> selected;
    /// Value of the last element taken; every selected value is >= alpha.
    double alpha = 0.0;
    double volume = 0.0;
};

/// Greedy superlevel set of per-element values: elements in decreasing value
/// order (ties by ascending index) are taken until the selected measure first
/// reaches `target_volume`.
BathtubResult bathtub_select(std::span<const double> values, std::span<const double> measures,
                             double target_volume);

/// bathtub_select on the element-centroid values of a vertex field.
BathtubResult bathtub_threshold(const Mesh& mesh, const Eigen::VectorXd& phi, double target_volume);

/// Mean of the vertex values of each element (the P1 centroid value).
std::vector<double> centroid_values(const Mesh& mesh, const Eigen::VectorXd& phi);

struct Rearranged {
    std::vector<double> values;
    std::vector<double> measures;
};

/// Elements [0, peak] are reordered by ascending value and (peak, end) by
/// descending value; each (value, measure) pair travels together. Ties keep
/// their original order.
Rearranged monotone_two_sided_1d(std::span<const double> values, std::span<const double> measures,
                                 int peak_index);

/// Centered ball [0, r0] with the same N-volume as the ring set.
RadialRings schwarz_radial(const RadialRings& rings, int N);

/// Membership in the stretched set: (x1, x') belongs to it iff
/// ((x1 + f(x')) / 2, x') lies in the ring set, f(x') = sqrt(1 - |x'|^2).
/// Requires rings.R == 1; throws InvalidArgument outside the closed unit ball.
bool stretch_contains(const RadialRings& rings, const Point& x);

/// Bang-bang weight of the stretched set on a mesh of the unit disk, by
/// element-centroid membership.
Weight stretch_weight(const Mesh& mesh, const RadialRings& rings, double kappa);

/// The cap of the disk B(0,R) whose area is c*pi*R^2. The cap area stays below
/// half the disk for every r_c, so c >= 0.5 is rejected.
DiskCap cap_radius_from_fraction(double R, double c);

struct Rational {
    long num = 0;
    long den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational&) const = default;
};

/// (5N - 4) / (4N), the eigenvalue ratio bound of the stretch construction,
/// in lowest terms.
Rational stretch_constant(int N);

} // namespace eigenshape
