#include "eigenshape/descriptors.hpp"

#include "eigenshape/errors.hpp"

#include <cmath>
#include <type_traits>

namespace eigenshape {

void RadialRings::validate() const {
    if (!(R > 0.0)) throw InvalidArgument("RadialRings: R must be positive");
    double prev = 0.0;
    for (const auto& [lo, hi] : rings) {
        if (!(lo >= prev) || !(hi > lo) || hi > R * (1.0 + 1e-12))
            throw InvalidArgument("RadialRings: rings must be sorted, disjoint and inside [0,R]");
        prev = hi;
    }
}

bool RadialRings::contains_radius(double r) const {
    for (const auto& [lo, hi] : rings)
        if (r >= lo && (r < hi || (hi >= R && r <= R))) return true;
    return false;
}

double RadialRings::normalized_volume(int N) const {
    double v = 0.0;
    for (const auto& [lo, hi] : rings) v += std::pow(hi, N) - std::pow(lo, N);
    return v;
}

DiskCap DiskCap::make(double R, double r_c) {
    if (!(R > 0.0) || !(r_c > 0.0)) throw InvalidArgument("DiskCap: R and r_c must be positive");
    return DiskCap{R, r_c, std::sqrt(R * R + r_c * r_c)};
}

bool DiskCap::contains(const Point& x) const {
    return std::hypot(x[0] - center_distance, x[1]) < r_c;
}

double DiskCap::area() const {
    const double d = center_distance;
    return R * R * std::asin(r_c / d) + r_c * r_c * std::asin(R / d) - r_c * R;
}

bool descriptor_contains(const SetDescriptor& d, const Point& x) {
    return std::visit(
        [&x](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, CustomSet>)
                return false;
            else if constexpr (std::is_same_v<T, Interval>)
                return s.contains(x[0]);
            else if constexpr (std::is_same_v<T, RadialRings>)
                return s.contains_radius(std::hypot(x[0], x[1]));
            else
                return s.contains(x);
        },
        d);
}

} // namespace eigenshape
