#include "eigenshape/rearrange.hpp"

#include "eigenshape/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace eigenshape {

BathtubResult bathtub_select(std::span<const double> values, std::span<const double> measures,
                             double target_volume) {
    if (values.size() != measures.size()) throw InvalidArgument("bathtub: values and measures differ in length");
    const std::size_t n = values.size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return values[a] > values[b]; });

    BathtubResult out;
    out.selected.assign(n, 0);
    // Relative slack so that a target equal to a sum of measures is not
    // overshot by roundoff.
    const double reach = target_volume * (1.0 - 1e-12);
    for (int e : order) {
        if (out.volume >= reach) break;
        out.selected[e] = 1;
        out.volume += measures[e];
        out.alpha = values[e];
    }
    return out;
}

std::vector<double> centroid_values(const Mesh& mesh, const Eigen::VectorXd& phi) {
    if (phi.size() != mesh.num_vertices()) throw InvalidArgument("centroid_values: field length mismatch");
    const int k = mesh.vertices_per_element();
    std::vector<double> out(mesh.num_elements());
    for (int e = 0; e < mesh.num_elements(); ++e) {
        double s = 0.0;
        for (int i = 0; i < k; ++i) s += phi[mesh.elements[e][i]];
        out[e] = s / k;
    }
    return out;
}

BathtubResult bathtub_threshold(const Mesh& mesh, const Eigen::VectorXd& phi, double target_volume) {
    const auto values = centroid_values(mesh, phi);
    return bathtub_select(values, mesh.element_measure, target_volume);
}

Rearranged monotone_two_sided_1d(std::span<const double> values, std::span<const double> measures,
                                 int peak_index) {
    if (values.size() != measures.size()) throw InvalidArgument("monotone_two_sided_1d: length mismatch");
    if (peak_index < 0 || peak_index >= static_cast<int>(values.size()))
        throw InvalidArgument("monotone_two_sided_1d: peak index out of range");
    std::vector<int> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    const auto split = order.begin() + peak_index + 1;
    std::stable_sort(order.begin(), split, [&](int a, int b) { return values[a] < values[b]; });
    std::stable_sort(split, order.end(), [&](int a, int b) { return values[a] > values[b]; });
    Rearranged out;
    for (int i : order) {
        out.values.push_back(values[i]);
        out.measures.push_back(measures[i]);
    }
    return out;
}

RadialRings schwarz_radial(const RadialRings& rings, int N) {
    if (N < 1) throw InvalidArgument("schwarz_radial: N must be at least 1");
    rings.validate();
    RadialRings out;
    out.R = rings.R;
    if (rings.rings.size() == 1 && rings.rings[0].first == 0.0) {
        out.rings = rings.rings;
        return out;
    }
    const double v = rings.normalized_volume(N);
    if (v > 0.0) out.rings.emplace_back(0.0, std::pow(v, 1.0 / N));
    return out;
}

bool stretch_contains(const RadialRings& rings, const Point& x) {
    if (std::abs(rings.R - 1.0) > 1e-12) throw InvalidArgument("stretch_contains: domain must be the unit ball");
    const double rest = x[1] * x[1];
    const double r2 = x[0] * x[0] + rest;
    if (r2 > 1.0 + 1e-12) throw InvalidArgument("stretch_contains: point outside the unit ball");
    const double f = std::sqrt(std::max(0.0, 1.0 - rest));
    const double y1 = 0.5 * (x[0] + f);
    return rings.contains_radius(std::sqrt(y1 * y1 + rest));
}

Weight stretch_weight(const Mesh& mesh, const RadialRings& rings, double kappa) {
    std::vector<char> sel(mesh.num_elements());
    for (int e = 0; e < mesh.num_elements(); ++e) sel[e] = stretch_contains(rings, mesh.centroid(e));
    return bang_bang(sel, kappa);
}

DiskCap cap_radius_from_fraction(double R, double c) {
    if (!(R > 0.0)) throw InvalidArgument("cap_radius_from_fraction: R must be positive");
    if (!(c > 0.0 && c < 0.5))
        throw InvalidArgument("cap_radius_from_fraction: c must lie in (0, 0.5); larger caps do not exist");
    const double target = c * std::numbers::pi * R * R;
    auto area = [R](double rc) { return DiskCap::make(R, rc).area(); };
    double lo = 0.0;
    double hi = 10.0 * R * c / (1.0 - c);
    while (area(hi) < target) {
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi)) throw NumericFailure("cap_radius_from_fraction: no bracket");
    }
    while (hi - lo > 1e-12 * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        (area(mid) < target ? lo : hi) = mid;
    }
    return DiskCap::make(R, 0.5 * (lo + hi));
}

Rational stretch_constant(int N) {
    if (N < 1) throw InvalidArgument("stretch_constant: N must be at least 1");
    const long num = 5L * N - 4, den = 4L * N;
    const long g = std::gcd(num, den);
    return {num / g, den / g};
}

} // namespace eigenshape
