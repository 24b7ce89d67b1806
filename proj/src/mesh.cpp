#include "eigenshape/mesh.hpp"

#include "eigenshape/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace eigenshape {

namespace {

double signed_area(const Point& a, const Point& b, const Point& c) {
    return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]));
}

double distance(const Point& a, const Point& b) {
    return std::hypot(a[0] - b[0], a[1] - b[1]);
}

} // namespace

Point Mesh::centroid(int e) const {
    const auto& el = elements[e];
    const int nv = vertices_per_element();
    Point c{0.0, 0.0};
    for (int k = 0; k < nv; ++k) {
        c[0] += vertices[el[k]][0];
        c[1] += vertices[el[k]][1];
    }
    c[0] /= nv;
    c[1] /= nv;
    return c;
}

double Mesh::total_measure() const {
    double s = 0.0;
    for (double m : element_measure) s += m;
    return s;
}

double Mesh::boundary_facet_measure(int b) const {
    if (dim == 1) return 1.0;
    const auto& edge = boundary_edges[b];
    return distance(vertices[edge[0]], vertices[edge[1]]);
}

double Mesh::boundary_measure() const {
    double s = 0.0;
    for (int b = 0; b < static_cast<int>(boundary_edges.size()); ++b) s += boundary_facet_measure(b);
    return s;
}

std::vector<char> Mesh::boundary_vertex_mask() const {
    std::vector<char> mask(vertices.size(), 0);
    for (const auto& edge : boundary_edges) {
        mask[edge[0]] = 1;
        mask[edge[1]] = 1;
    }
    return mask;
}

std::vector<int> Mesh::boundary_vertices() const {
    const auto mask = boundary_vertex_mask();
    std::vector<int> out;
    for (int v = 0; v < num_vertices(); ++v)
        if (mask[v]) out.push_back(v);
    return out;
}

double Mesh::max_element_diameter() const {
    double h = 0.0;
    const int nv = vertices_per_element();
    for (const auto& el : elements)
        for (int i = 0; i < nv; ++i)
            for (int j = i + 1; j < nv; ++j)
                h = std::max(h, distance(vertices[el[i]], vertices[el[j]]));
    return h;
}

void finalize_mesh(Mesh& mesh) {
    const int ne = mesh.num_elements();
    const int nv = mesh.num_vertices();
    mesh.element_measure.assign(ne, 0.0);
    for (int e = 0; e < ne; ++e) {
        const auto& el = mesh.elements[e];
        for (int k = 0; k < mesh.vertices_per_element(); ++k)
            if (el[k] < 0 || el[k] >= nv) throw AssemblyFailure("vertex index out of range", e);
        double m = 0.0;
        if (mesh.dim == 1)
            m = mesh.vertices[el[1]][0] - mesh.vertices[el[0]][0];
        else
            m = signed_area(mesh.vertices[el[0]], mesh.vertices[el[1]], mesh.vertices[el[2]]);
        if (!(m > 0.0)) throw AssemblyFailure("nonpositive element measure", e);
        mesh.element_measure[e] = m;
    }

    mesh.boundary_edges.clear();
    if (mesh.dim == 1) {
        std::vector<int> count(nv, 0);
        for (const auto& el : mesh.elements) {
            ++count[el[0]];
            ++count[el[1]];
        }
        for (int v = 0; v < nv; ++v)
            if (count[v] == 1) mesh.boundary_edges.push_back({v, v});
        return;
    }

    // An edge is on the boundary iff exactly one element uses it; the owning
    // element's counterclockwise orientation gives the outward traversal.
    std::map<std::pair<int, int>, int> use;
    for (const auto& el : mesh.elements)
        for (int k = 0; k < 3; ++k) {
            const int a = el[k], b = el[(k + 1) % 3];
            ++use[{std::min(a, b), std::max(a, b)}];
        }
    for (const auto& el : mesh.elements)
        for (int k = 0; k < 3; ++k) {
            const int a = el[k], b = el[(k + 1) % 3];
            if (use[{std::min(a, b), std::max(a, b)}] == 1) mesh.boundary_edges.push_back({a, b});
        }
}

Mesh gen_interval(int n_cells) {
    if (n_cells < 2) throw InvalidArgument("gen_interval: n_cells must be >= 2");
    Mesh mesh;
    mesh.dim = 1;
    mesh.vertices.reserve(n_cells + 1);
    for (int i = 0; i <= n_cells; ++i)
        mesh.vertices.push_back({static_cast<double>(i) / n_cells, 0.0});
    mesh.vertices.back()[0] = 1.0;
    for (int i = 0; i < n_cells; ++i) mesh.elements.push_back({i, i + 1, -1});
    finalize_mesh(mesh);
    return mesh;
}

Mesh gen_rectangle(double lx, double ly, int nx, int ny) {
    if (!(lx > 0.0) || !(ly > 0.0)) throw InvalidArgument("gen_rectangle: dimensions must be positive");
    if (nx < 2 || ny < 2) throw InvalidArgument("gen_rectangle: nx and ny must be >= 2");
    Mesh mesh;
    mesh.dim = 2;
    const int px = nx + 1;
    mesh.vertices.reserve(static_cast<std::size_t>(px) * (ny + 1));
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i)
            mesh.vertices.push_back({lx * i / nx, ly * j / ny});
    auto vid = [px](int i, int j) { return j * px + i; };
    mesh.elements.reserve(2 * static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const int v00 = vid(i, j), v10 = vid(i + 1, j), v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
            mesh.elements.push_back({v00, v10, v11});
            mesh.elements.push_back({v00, v11, v01});
        }
    finalize_mesh(mesh);
    return mesh;
}

Mesh gen_disk(double radius, int n_rings) {
    if (!(radius > 0.0)) throw InvalidArgument("gen_disk: radius must be positive");
    if (n_rings < 2) throw InvalidArgument("gen_disk: n_rings must be >= 2");
    Mesh mesh;
    mesh.dim = 2;
    const double two_pi = 2.0 * std::numbers::pi;
    mesh.vertices.push_back({0.0, 0.0});
    for (int i = 1; i <= n_rings; ++i) {
        const double r = radius * i / n_rings;
        const int count = 6 * i;
        for (int k = 0; k < count; ++k) {
            const double t = two_pi * k / count;
            mesh.vertices.push_back({r * std::cos(t), r * std::sin(t)});
        }
    }
    // First vertex of ring i (ring 0 is the center).
    auto ring_start = [](int i) { return i == 0 ? 0 : 1 + 3 * i * (i - 1); };

    auto add = [&mesh](int a, int b, int c) {
        if (signed_area(mesh.vertices[a], mesh.vertices[b], mesh.vertices[c]) < 0.0) std::swap(b, c);
        mesh.elements.push_back({a, b, c});
    };

    for (int k = 0; k < 6; ++k) add(0, 1 + k, 1 + (k + 1) % 6);
    for (int i = 2; i <= n_rings; ++i) {
        const int n_in = 6 * (i - 1), n_out = 6 * i;
        const int s_in = ring_start(i - 1), s_out = ring_start(i);
        auto in = [&](int idx) { return s_in + idx % n_in; };
        auto out = [&](int idx) { return s_out + idx % n_out; };
        for (int sector = 0; sector < 6; ++sector) {
            const int a0 = sector * (i - 1), b0 = sector * i;
            for (int j = 0; j < i; ++j) {
                add(in(a0 + j), out(b0 + j), out(b0 + j + 1));
                if (j + 1 < i) add(in(a0 + j), out(b0 + j + 1), in(a0 + j + 1));
            }
        }
    }
    finalize_mesh(mesh);
    return mesh;
}

} // namespace eigenshape
