/// @file projection.hpp
/// @brief Discrete Leray projection onto divergence-free fields.
///
/// project(w) solves laplacian(q) = divergence(w) with Neumann walls,
/// subtracts gradient(q) from w and reports the pieces.  Because gradient
/// and -divergence are exact discrete adjoints, the two parts are exactly
/// l2-orthogonal and the projection is idempotent to solver accuracy.

#pragma once

#include "cbf/fields/poisson.hpp"

namespace cbf::fields {

struct ProjectionResult {
    VectorField u;        ///< divergence-free part
    VectorField grad_q;   ///< curl-free part, u + grad_q == input
    ScalarField q;        ///< zero-mean potential
    double div_residual = 0.0;   ///< |divergence(u)|_2 after projection
    double mean_removed = 0.0;   ///< mean of divergence(w) removed for solvability
};

class LerayProjector {
public:
    explicit LerayProjector(const Grid& g, PoissonMethod method = PoissonMethod::fast);

    ProjectionResult project(const VectorField& w) const;

    /// Convenience wrapper returning only the divergence-free part.
    VectorField apply(const VectorField& w) const { return project(w).u; }

    const Grid& grid() const { return poisson_.grid(); }

    /// Underlying Neumann solver, reusable for pressure initialisation.
    const PoissonSolver& poisson() const { return poisson_; }

private:
    PoissonSolver poisson_;
};

}  // namespace cbf::fields
