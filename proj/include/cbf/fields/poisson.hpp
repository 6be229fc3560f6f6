/// @file poisson.hpp
/// @brief Poisson and Laplacian solvers on the staggered grid.
///
/// Two independent routes are provided and cross-checked in the tests:
///   - "fast": tensor-product eigendecomposition of the one-dimensional
///     stencils (cosine basis for Neumann cell data, sine bases for
///     Dirichlet cell and node data), applied as dense orthonormal matrix
///     transforms along each axis, O(n^{dim+1}) work,
///   - "cg": matrix-free conjugate gradients on the same stencil.
/// Both verify the residual of every solve and throw numerical_error when
/// it exceeds rel_tol * max(|rhs|_2, floor).

#pragma once

#include <functional>
#include <vector>

#include "cbf/fields/field.hpp"

namespace cbf::fields {

enum class PoissonMethod { fast, cg };

struct PoissonResult {
    ScalarField q;          ///< zero-mean solution
    double residual = 0.0;  ///< |laplacian(q) - rhs|_2 after the solve
    double mean_removed = 0.0;  ///< mean subtracted from rhs for solvability
    int iterations = 0;         ///< 0 for the fast route
};

/// Cell-centered Poisson solver with homogeneous Neumann walls (mirror
/// ghosts), the pressure companion of the staggered gradient/divergence
/// pair.  The rhs mean is removed (and reported) before solving; the
/// solution is zero-mean.
class PoissonSolver {
public:
    explicit PoissonSolver(const Grid& g, PoissonMethod method = PoissonMethod::fast,
                           double rel_tol = 1e-10, double abs_floor = 1e-13);

    PoissonResult solve(const ScalarField& rhs) const;

    const Grid& grid() const { return grid_; }
    PoissonMethod method() const { return method_; }

    /// Apply the cell-centered Neumann Laplacian stencil (used by the cg
    /// route and by the residual checks).
    static ScalarField apply_neumann_laplacian(const ScalarField& q);

private:
    Grid grid_;
    PoissonMethod method_;
    double rel_tol_;
    double abs_floor_;
    std::vector<double> basis_;  ///< n x n orthonormal cosine basis, row k = mode k
    std::vector<double> eig_;    ///< eigenvalues of -d2/dx2, ascending with k
};

/// Solve -laplacian(u) = rhs for a vector field with homogeneous walls
/// (the inverse of the component Laplacian in ops.hpp).  Boundary-normal
/// entries of rhs are ignored; the solution has zero boundary-normal faces.
/// Uses node-interior sine transforms along the normal axis and cell sine
/// transforms along tangential axes.
class VectorLaplacianSolver {
public:
    explicit VectorLaplacianSolver(const Grid& g, double rel_tol = 1e-10,
                                   double abs_floor = 1e-13);

    VectorField solve(const VectorField& rhs) const;

private:
    Grid grid_;
    double rel_tol_;
    double abs_floor_;
    std::vector<double> node_basis_;  ///< (n-1) x (n-1) interior sine basis
    std::vector<double> node_eig_;
    std::vector<double> cell_basis_;  ///< n x n shifted sine basis
    std::vector<double> cell_eig_;
};

/// Matrix-free preconditioner-less conjugate gradients.  apply must
/// implement a symmetric positive (semi)definite operator on packed
/// vectors; dot is the sequential euclidean inner product.  Returns the
/// iteration count, throws numerical_error when max_iter is reached before
/// |r|_2 <= rel_tol * max(|b|_2, abs_floor).
int conjugate_gradient(const std::function<void(const std::vector<double>&, std::vector<double>&)>& apply,
                       const std::vector<double>& b, std::vector<double>& x, double rel_tol,
                       double abs_floor, int max_iter, const char* label);

/// Orthonormal one-dimensional eigenbases of the second-difference
/// stencils, exposed for the spectral-identity tests.
/// Rows are modes; entry (k, j) multiplies sample j.
std::vector<double> neumann_cell_basis(int n);   ///< cosine, modes k = 0..n-1
std::vector<double> dirichlet_cell_basis(int n); ///< shifted sine, modes m = 1..n
std::vector<double> dirichlet_node_basis(int n); ///< interior sine, (n-1)^2 entries
std::vector<double> neumann_cell_eigs(int n, double h);
std::vector<double> dirichlet_cell_eigs(int n, double h);
std::vector<double> dirichlet_node_eigs(int n, double h);

}  // namespace cbf::fields
