/// @file projection.cpp
/// @brief Leray projection through the Neumann pressure solve.

#include "cbf/fields/projection.hpp"

#include "cbf/fields/norms.hpp"
#include "cbf/fields/ops.hpp"

namespace cbf::fields {

LerayProjector::LerayProjector(const Grid& g, PoissonMethod method) : poisson_(g, method) {}

ProjectionResult LerayProjector::project(const VectorField& w) const {
    const Grid& g = poisson_.grid();
    if (w.grid() != g)
        throw structural_error("project: field grid does not match the projector grid");
    ScalarField div = divergence(w);
    PoissonResult p = poisson_.solve(div);
    ProjectionResult out{w, VectorField(g), std::move(p.q), 0.0, p.mean_removed};
    out.grad_q = gradient(out.q);
    axpy(out.u, -1.0, out.grad_q);
    out.div_residual = l2(divergence(out.u));
    return out;
}

}  // namespace cbf::fields
