#include "eigenshape/assembly.hpp"

#include "eigenshape/errors.hpp"
#include "eigenshape/field_io.hpp"

#include <cmath>
#include <ostream>

namespace eigenshape {

void Weight::validate(const Mesh& mesh) const {
    if (!(kappa > 0.0)) throw InvalidArgument("weight: kappa must be positive");
    if (static_cast<int>(per_element.size()) != mesh.num_elements())
        throw InvalidArgument("weight: length does not match element count");
    bool any_positive = false;
    for (double m : per_element) {
        if (!(m >= -1.0) || !(m <= kappa)) throw InvalidArgument("weight: value outside [-1, kappa]");
        any_positive = any_positive || m > 0.0;
    }
    if (!any_positive) throw NoPositiveEigenvalue("weight: the set {m > 0} is empty");
}

double Weight::integral(const Mesh& mesh) const {
    double s = 0.0;
    for (int e = 0; e < mesh.num_elements(); ++e) s += per_element[e] * mesh.element_measure[e];
    return s;
}

double Weight::positive_volume(const Mesh& mesh) const {
    double s = 0.0;
    for (int e = 0; e < mesh.num_elements(); ++e)
        if (per_element[e] > 0.0) s += mesh.element_measure[e];
    return s;
}

std::vector<char> Weight::indicator() const {
    std::vector<char> out(per_element.size());
    for (std::size_t e = 0; e < per_element.size(); ++e) out[e] = per_element[e] > 0.0;
    return out;
}

Weight bang_bang(const std::vector<char>& selected, double kappa, SetDescriptor descriptor) {
    Weight w;
    w.kappa = kappa;
    w.descriptor = std::move(descriptor);
    w.per_element.resize(selected.size());
    for (std::size_t e = 0; e < selected.size(); ++e) w.per_element[e] = selected[e] ? kappa : -1.0;
    return w;
}

Weight weight_from_descriptor(const Mesh& mesh, const SetDescriptor& descriptor, double kappa) {
    std::vector<char> sel(mesh.num_elements());
    for (int e = 0; e < mesh.num_elements(); ++e) sel[e] = descriptor_contains(descriptor, mesh.centroid(e));
    return bang_bang(sel, kappa, descriptor);
}

BoundaryCondition BoundaryCondition::robin(double beta) {
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw InvalidArgument("Robin coefficient must be finite and >= 0");
    return {Kind::Robin, beta};
}

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

// Gradients of the P1 basis on a triangle, scaled by 2|T|.
struct TriangleGeometry {
    double area;
    double b[3];
    double c[3];
};

TriangleGeometry triangle_geometry(const Mesh& mesh, int e) {
    const auto& el = mesh.elements[e];
    const auto& p0 = mesh.vertices[el[0]];
    const auto& p1 = mesh.vertices[el[1]];
    const auto& p2 = mesh.vertices[el[2]];
    TriangleGeometry g{};
    g.b[0] = p1[1] - p2[1];
    g.b[1] = p2[1] - p0[1];
    g.b[2] = p0[1] - p1[1];
    g.c[0] = p2[0] - p1[0];
    g.c[1] = p0[0] - p2[0];
    g.c[2] = p1[0] - p0[0];
    g.area =0.5 * ((p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]));
    return g;
}

void add_local_mass(Triplets& t, const Mesh& mesh, int e, double scale) {
    const auto& el = mesh.elements[e];
    const double h = mesh.element_measure[e];
    if (mesh.dim == 1) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) t.emplace_back(el[i], el[j], scale * h * (i == j ? 2.0 : 1.0) / 6.0);
        return;
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t.emplace_back(el[i], el[j], scale * h * (i == j ? 2.0 : 1.0) / 12.0);
}

SpMat from_triplets(int n, const Triplets& t) {
    SpMat A(n, n);
    A.setFromTriplets(t.begin(), t.end());
    A.makeCompressed();
    return A;
}

} // namespace

OperatorBundle assemble_operators(const Mesh& mesh) {
    const int n = mesh.num_vertices();
    const int ne = mesh.num_elements();
    Triplets tk, tm, tb;
    tk.reserve(static_cast<std::size_t>(ne) * 9);
    tm.reserve(static_cast<std::size_t>(ne) * 9);

    for (int e = 0; e < ne; ++e) {
        const auto& el = mesh.elements[e];
        const double h = mesh.element_measure[e];
        if (!(h > 0.0) || !std::isfinite(h)) throw AssemblyFailure("degenerate element", e);
        if (mesh.dim == 1) {
            const double k = 1.0 / h;
            tk.emplace_back(el[0], el[0], k);
            tk.emplace_back(el[1], el[1], k);
            tk.emplace_back(el[0], el[1], -k);
            tk.emplace_back(el[1], el[0], -k);
        } else {
            const auto g = triangle_geometry(mesh, e);
            if (!(g.area > 0.0)) throw AssemblyFailure("degenerate element", e);
            const double s = 1.0 / (4.0 * g.area);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) tk.emplace_back(el[i], el[j], s * (g.b[i] * g.b[j] + g.c[i] * g.c[j]));
        }
        add_local_mass(tm, mesh, e, 1.0);
    }

    for (int b = 0; b < static_cast<int>(mesh.boundary_edges.size()); ++b) {
        const auto& edge = mesh.boundary_edges[b];
        if (mesh.dim == 1) {
            tb.emplace_back(edge[0], edge[0], 1.0);
            continue;
        }
        const double L = mesh.boundary_facet_measure(b);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) tb.emplace_back(edge[i], edge[j], L * (i == j ? 2.0 : 1.0) / 6.0);
    }

    OperatorBundle ops;
    ops.n = n;
    ops.K = from_triplets(n, tk);
    ops.M0 = from_triplets(n, tm);
    ops.B = from_triplets(n, tb);
    return ops;
}

SpMat weighted_mass(const Mesh& mesh, std::span<const double> per_element) {
    if (static_cast<int>(per_element.size()) != mesh.num_elements())
        throw InvalidArgument("weighted_mass: weight length does not match element count");
    Triplets t;
    t.reserve(per_element.size() * 9);
    for (int e = 0; e < mesh.num_elements(); ++e) add_local_mass(t, mesh, e, per_element[e]);
    return from_triplets(mesh.num_vertices(), t);
}

SpMat weighted_mass(const Mesh& mesh, const Weight& w) {
    return weighted_mass(mesh, std::span<const double>(w.per_element));
}

Eigen::VectorXd lumped_weighted_mass(const Mesh& mesh, std::span<const double> per_element) {
    if (static_cast<int>(per_element.size()) != mesh.num_elements())
        throw InvalidArgument("lumped_weighted_mass: weight length does not match element count");
    Eigen::VectorXd d = Eigen::VectorXd::Zero(mesh.num_vertices());
    const int nv = mesh.vertices_per_element();
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const double share = per_element[e] * mesh.element_measure[e] / nv;
        for (int k = 0; k < nv; ++k) d[mesh.elements[e][k]] += share;
    }
    return d;
}

Discretization Discretization::build(Mesh mesh) {
    Discretization d;
    d.ops = assemble_operators(mesh);
    d.mesh = std::move(mesh);
    return d;
}

void write_coordinate(std::ostream& os, const SpMat& A) {
    for (int k = 0; k < A.outerSize(); ++k)
        for (SpMat::InnerIterator it(A, k); it; ++it)
            os << it.row() << ' ' << it.col() << ' ' << format_real(it.value()) << '\n';
}

} // namespace eigenshape
