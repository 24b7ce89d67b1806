#pragma once

#include "eigenshape/mesh.hpp"

#include <utility>
#include <variant>
#include <vector>

namespace eigenshape {

/// The interval [a, a + length] inside (0,1).
struct Interval {
    double a = 0.0;
    double length = 0.0;

    bool contains(double x) const { return x >= a && x <= a + length; }
    bool operator==(const Interval&) const = default;
};

/// A union of concentric rings [r_lo, r_hi) about the origin, inside B(0,R).
struct RadialRings {
    std::vector<std::pair<double, double>> rings;
    double R = 1.0;

    /// Throws InvalidArgument unless rings are sorted, disjoint and inside [0,R].
    void validate() const;
    /// Half-open rings, except that a ring reaching R also contains R.
    bool contains_radius(double r) const;
    /// N-dimensional volume of the set divided by the volume of the unit N-ball.
    double normalized_volume(int N) const;
    bool operator==(const RadialRings&) const = default;
};

/// The set {x : |x - p| < r_c} inside B(0,R), with p = (center_distance, 0)
/// and center_distance = sqrt(R^2 + r_c^2), so that the cap boundary meets the
/// circle orthogonally.
struct DiskCap {
    double R = 1.0;
    double r_c = 0.0;
    double center_distance = 0.0;

    static DiskCap make(double R, double r_c);
    Point center() const { return {center_distance, 0.0}; }
    bool contains(const Point& x) const;
    /// Exact area of the cap intersected with the disk.
    double area() const;
    bool operator==(const DiskCap&) const = default;
};

struct CustomSet {
    bool operator==(const CustomSet&) const = default;
};

using SetDescriptor = std::variant<CustomSet, Interval, RadialRings, DiskCap>;

/// Membership test of a point in an analytic set (CustomSet contains nothing).
bool descriptor_contains(const SetDescriptor& d, const Point& x);

} // namespace eigenshape
