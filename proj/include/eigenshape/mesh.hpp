#pragma once

#include <array>
#include <vector>

namespace eigenshape {

using Point = std::array<double, 2>;

/// Conforming simplicial mesh of an interval (dim 1) or a planar domain (dim 2).
///
/// In 1D the second coordinate of every vertex is zero and the third entry of
/// every element is -1. Boundary facets are stored as vertex pairs: in 2D they
/// are the edges traversed counterclockwise (outward normal on the right), in
/// 1D both entries are the same endpoint.
struct Mesh {
    int dim = 1;
    std::vector<Point> vertices;
    std::vector<std::array<int, 3>> elements;
    std::vector<std::array<int, 2>> boundary_edges;
    std::vector<double> element_measure;

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_elements() const { return static_cast<int>(elements.size()); }
    int vertices_per_element() const { return dim + 1; }

    Point centroid(int e) const;
    double total_measure() const;
    /// Length of the discrete boundary (2D) or number of endpoints (1D).
    double boundary_measure() const;
    double boundary_facet_measure(int b) const;
    std::vector<int> boundary_vertices() const;
    std::vector<char> boundary_vertex_mask() const;
    /// Longest edge over all elements.
    double max_element_diameter() const;

    bool operator==(const Mesh&) const = default;
};

/// Uniform partition of (0,1) into `n_cells` intervals.
Mesh gen_interval(int n_cells);

/// Uniform nx-by-ny grid of (0,lx)x(0,ly); every cell is split along the same
/// diagonal into two counterclockwise triangles.
Mesh gen_rectangle(double lx, double ly, int nx, int ny);

/// Structured polar triangulation of the disk B(0,radius): ring i carries 6i
/// equally spaced vertices at radius i*radius/n_rings.
Mesh gen_disk(double radius, int n_rings);

/// Recomputes element measures and boundary facets from vertices/elements.
/// Throws AssemblyFailure on a nonpositive element measure.
void finalize_mesh(Mesh& mesh);

} // namespace eigenshape
