/// @file ops.hpp
/// @brief Staggered-grid differential and nonlinear operators.
///
/// Boundary conventions (shared by all operators):
///   - boundary-normal face values are part of the arrays and are treated
///     as Dirichlet data (zero for no-slip fields),
///   - tangential behaviour at walls uses reflection ghosts
///     (ghost = -first interior value), the second-order realisation of a
///     zero wall trace for cell-offset samples,
///   - operators that produce face data write zeros on boundary-normal
///     faces; those entries are constrained, not evolved.

#pragma once

#include "cbf/fields/field.hpp"

namespace cbf::fields {

/// Divergence at cell centers: sum_a (u_a(i+1) - u_a(i)) / h.
ScalarField divergence(const VectorField& u);

/// Gradient at faces: (s(i) - s(i-1)) / h on interior faces, zero on
/// boundary-normal faces.  Negative adjoint of divergence for fields with
/// zero boundary-normal faces.
VectorField gradient(const ScalarField& s);

/// Component-wise 5/7-point Laplacian with reflection ghosts on tangential
/// walls.  Boundary-normal entries of the result are zero.
VectorField laplacian(const VectorField& u);

/// Skew-symmetric advection N(u, w), the transport of w by u.  Discretely
/// <N(u, w), w> == 0 for every u (telescoping flux form); it is consistent
/// with (u . grad) w when div u = 0.
VectorField advect(const VectorField& u, const VectorField& w);

/// Damping alpha * u + beta * |u|^{r-1} u evaluated at faces.  The
/// magnitude at a face combines the face's own value with the orthogonal
/// components interpolated by successive two-point averages.  Throws
/// parameter_error for r < 1.
VectorField damping(const VectorField& u, double r, double beta, double alpha);

/// Magnitude |u| collocated at the faces of component a (the same
/// interpolation damping uses).  The result has the shape of comp(a).
std::vector<double> face_magnitude(const VectorField& u, int a);

}  // namespace cbf::fields
