/// @file lambda1.hpp
/// @brief Smallest eigenvalue of the projected negative Laplacian.
///
/// The operator is S u = leray(-laplacian(u)) restricted to discrete
/// divergence-free no-slip fields; its smallest eigenvalue enters the
/// admissibility thresholds and the Poincare inequality.  Estimated by
/// preconditioned inverse iteration: each step applies the unconstrained
/// inverse Laplacian to the projected residual and takes the best
/// eigenvector in span{current, preconditioned residual, previous
/// correction} (a three-point Rayleigh-Ritz step, so the plain inverse
/// power method is recovered when the extra directions add nothing).

#pragma once

#include <cstdint>

#include "cbf/fields/field.hpp"

namespace cbf::inverse {

using fields::Grid;
using fields::VectorField;

struct EigenEstimate {
    double lambda1;
    double rayleigh_residual;  ///< |S y - lambda1 y|_2 for the unit eigenvector y
    int iterations;
    VectorField eigenvector;
};

/// Estimate to relative eigenvalue tolerance rel_tol; the iteration also
/// requires the Rayleigh residual to drop below rel_tol * lambda1 before
/// reporting.  Throws numerical_error when max_iter steps do not converge.
EigenEstimate estimate_lambda1(const Grid& g, double rel_tol = 1e-6, int max_iter = 400,
                               std::uint64_t seed = 0x5eed);

}  // namespace cbf::inverse
