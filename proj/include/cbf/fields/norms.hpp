/// @file norms.hpp
/// @brief Discrete norms and inner products on the staggered grid.
///
/// Quadrature conventions:
///   - cell-centered scalars use the midpoint rule, weight h^dim per cell,
///   - face values use weight h^dim, halved on boundary-normal faces, so
///     that the constant field (1,0,...) has l2 norm exactly 1,
///   - h1_semi uses forward differences with zero extension past the
///     boundary; the first and last tangential differences span the half
///     cell between the wall and the first sample, so they use spacing h/2
///     and weight h/2.  With that choice the identity
///         <-laplacian(u), u> == h1_semi(u)^2
///     holds to roundoff for fields with zero boundary-normal faces, which
///     ties the energy audits to the dissipation the scheme actually sees.
///   - lp norms (p != 2) collocate components at cell centers by averaging
///     the two adjacent faces, matching the magnitude used by the damping
///     term.
///
/// All reductions are plain sequential loops in storage order, so results
/// are bit-identical run to run regardless of the thread setting.

#pragma once

#include "cbf/fields/field.hpp"

namespace cbf::fields {

double dot(const ScalarField& x, const ScalarField& y);
double dot(const VectorField& x, const VectorField& y);

double l2(const ScalarField& x);
double l2(const VectorField& x);

/// Seminorm |u|_{H^1}: sqrt of the summed squared forward differences of
/// each component along each axis, zero-extended past the walls.
double h1_semi(const VectorField& x);

/// L^p norm with components collocated at cell centers, p >= 1.
double lp(const VectorField& x, double p);

/// The p-th power of lp (the integral itself, no final root).
double lp_pow(const VectorField& x, double p);

double linf(const VectorField& x);

/// Pointwise magnitude sqrt(sum_a u_a^2) collocated at cell centers.
ScalarField magnitude_at_cells(const VectorField& u);

}  // namespace cbf::fields
