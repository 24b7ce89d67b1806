#pragma once

#include "eigenshape/descriptors.hpp"
#include "eigenshape/mesh.hpp"

#include <Eigen/SparseCore>

#include <iosfwd>
#include <span>
#include <vector>

namespace eigenshape {

using SpMat = Eigen::SparseMatrix<double>;

/// Piecewise-constant weight, one value per mesh element.
struct Weight {
    std::vector<double> per_element;
    double kappa = 1.0;
    SetDescriptor descriptor = CustomSet{};

    /// Throws InvalidArgument if a value leaves [-1, kappa], the length does
    /// not match the mesh, or no element carries a positive value.
    void validate(const Mesh& mesh) const;
    /// Integral of the weight over the domain.
    double integral(const Mesh& mesh) const;
    /// Measure of {m > 0}.
    double positive_volume(const Mesh& mesh) const;
    std::vector<char> indicator() const;
};

/// kappa on selected elements, -1 elsewhere.
Weight bang_bang(const std::vector<char>& selected, double kappa, SetDescriptor descriptor = CustomSet{});

/// Element e gets kappa iff its centroid lies in the set.
Weight weight_from_descriptor(const Mesh& mesh, const SetDescriptor& descriptor, double kappa);

/// Operators of the Rayleigh quotient on the P1 space.
struct OperatorBundle {
    SpMat K;  ///< stiffness, int grad u . grad v
    SpMat B;  ///< boundary mass, int_{boundary} u v
    SpMat M0; ///< mass, int u v
    int n = 0;
};

struct BoundaryCondition {
    enum class Kind { Robin, Dirichlet };
    Kind kind = Kind::Robin;
    double beta = 0.0;

    static BoundaryCondition neumann() { return {Kind::Robin, 0.0}; }
    static BoundaryCondition robin(double beta);
    static BoundaryCondition dirichlet() { return {Kind::Dirichlet, 0.0}; }

    bool is_dirichlet() const { return kind == Kind::Dirichlet; }
    bool is_neumann() const { return kind == Kind::Robin && beta == 0.0; }
    bool operator==(const BoundaryCondition&) const = default;
};

OperatorBundle assemble_operators(const Mesh& mesh);

/// int m u v with m constant per element. Values are not range-checked so the
/// same routine serves the growth-rate weights of the auxiliary problem.
SpMat weighted_mass(const Mesh& mesh, std::span<const double> per_element);
SpMat weighted_mass(const Mesh& mesh, const Weight& w);

/// Lumped (row-sum) weighted mass as a vertex vector.
Eigen::VectorXd lumped_weighted_mass(const Mesh& mesh, std::span<const double> per_element);

/// A mesh together with its assembled operators.
struct Discretization {
    Mesh mesh;
    OperatorBundle ops;

    static Discretization build(Mesh mesh);
};

/// Coordinate text export, one `i j value` line per stored entry (0-based).
void write_coordinate(std::ostream& os, const SpMat& A);

} // namespace eigenshape
