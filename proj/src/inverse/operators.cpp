/// @file operators.cpp
/// @brief Evaluation of the maps A and B.

#include "cbf/inverse/operators.hpp"

#include <climits>
#include <cmath>
#include <cstdio>

#include "cbf/fields/norms.hpp"
#include "cbf/fields/ops.hpp"

namespace cbf::inverse {

using fields::axpy;

OverdeterminationData::OverdeterminationData(VectorField phi_, VectorField grad_psi_,
                                             ScalarField g_at_T_, double floor)
    : phi(std::move(phi_)),
      grad_psi(std::move(grad_psi_)),
      g_at_T(std::move(g_at_T_)),
      g_T_floor(floor) {
    if (grad_psi.grid() != phi.grid() || g_at_T.grid() != phi.grid())
        throw cbf::structural_error("overdetermination data fields live on different grids");
}

void OverdeterminationData::validate(double div_tol, double wall_tol) const {
    if (!(g_T_floor > 0.0))
        throw cbf::data_error("overdetermination data: modulation floor must be positive");
    double gmin = HUGE_VAL;
    for (double v : g_at_T.data()) gmin = std::min(gmin, std::abs(v));
    if (gmin < g_T_floor) {
        char msg[128];
        std::snprintf(msg, sizeof msg,
                      "overdetermination data: min |g(., T)| = %.3e is below the floor %.3e",
                      gmin, g_T_floor);
        throw cbf::data_error(msg);
    }
    const double wall = phi.max_boundary_normal();
    if (wall > wall_tol) {
        char msg[128];
        std::snprintf(msg, sizeof msg,
                      "overdetermination data: phi has boundary-normal faces up to %.3e", wall);
        throw cbf::data_error(msg);
    }
    double dmax = 0.0;
    for (double v : fields::divergence(phi).data()) dmax = std::max(dmax, std::abs(v));
    if (dmax > div_tol) {
        char msg[128];
        std::snprintf(msg, sizeof msg,
                      "overdetermination data: max |div phi| = %.3e exceeds %.3e", dmax, div_tol);
        throw cbf::data_error(msg);
    }
}

double OverdeterminationData::phi_l4() const { return fields::lp(phi, 4.0); }

double OverdeterminationData::gradient_consistency() const {
    fields::LerayProjector proj(grid());
    return fields::l2(proj.apply(grad_psi));
}

namespace {

direct::StepControls lean_controls() {
    direct::StepControls c;
    c.record_ut = false;
    c.snapshot_stride = INT_MAX;
    return c;
}

}  // namespace

BOperator::BOperator(OverdeterminationData data, VectorField u0, direct::Params params,
                     direct::SourceProfile modulation,
                     std::optional<direct::StepControls> controls, double div_tol,
                     double wall_tol)
    : data_(std::move(data)),
      u0_(std::move(u0)),
      params_(params),
      mod_(std::move(modulation)),
      controls_(controls ? *controls : lean_controls()),
      proj_(data_.grid()),
      stationary_(data_.grid()) {
    params_.validate(data_.grid().dim());
    if (u0_.grid() != data_.grid() || mod_.grid() != data_.grid())
        throw cbf::structural_error("operator inputs live on different grids");
    data_.validate(div_tol, wall_tol);

    stationary_ = fields::advect(data_.phi, data_.phi);
    axpy(stationary_, 1.0, data_.grad_psi);
    axpy(stationary_, -params_.mu, fields::laplacian(data_.phi));
    axpy(stationary_, 1.0, fields::damping(data_.phi, params_.r, params_.beta, params_.alpha));
    if (!mod_.extra.empty()) axpy(stationary_, -1.0, mod_.extra.at(params_.T));
}

VectorField BOperator::apply_a(const VectorField& f) const {
    direct::SourceProfile src = mod_;
    src.f() = f;
    direct::Trajectory traj = direct::DirectSolver(data_.grid(), params_, controls_).solve(u0_, src);
    return std::move(traj.ut_final);
}

VectorField BOperator::apply_b(const VectorField& f) const {
    VectorField num = apply_a(f);
    axpy(num, 1.0, stationary_);
    return fields::divide_center_scalar(num, data_.g_at_T, data_.g_T_floor);
}

VectorField BOperator::initial_guess() const {
    VectorField guess =
        fields::divide_center_scalar(stationary_, data_.g_at_T, data_.g_T_floor);
    return proj_.apply(guess);
}

VectorField apply_A(const VectorField& f, const VectorField& u0, const direct::Params& params,
                    const direct::SourceProfile& modulation) {
    direct::SourceProfile src = modulation;
    src.f() = f;
    direct::Trajectory traj =
        direct::DirectSolver(u0.grid(), params, lean_controls()).solve(u0, src);
    return std::move(traj.ut_final);
}

VectorField apply_B(const VectorField& f, const OverdeterminationData& data,
                    const VectorField& u0, const direct::Params& params,
                    const direct::SourceProfile& modulation) {
    return BOperator(data, u0, params, modulation).apply_b(f);
}

AdmissibilityVerdict check_admissibility(const direct::Params& params,
                                         const OverdeterminationData& data, double lambda1) {
    return check_admissibility(data.grid().dim(), params.mu, params.beta, params.r,
                               data.phi_l4(), lambda1);
}

}  // namespace cbf::inverse
