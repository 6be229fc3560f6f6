/// @file solver.hpp
/// @brief Semi-implicit projection solver for the damped momentum system.
///
/// One step from (u_n, p_n) to t_{n+1} = t_n + dt:
///   (1 + dt (alpha + beta |u_n|^{r-1})) u* - dt mu lap u*
///       = u_n + dt (f g(t_{n+1}) - N(u_n) - grad p_n),
///   (u_{n+1}, grad q) = leray(u*),   p_{n+1} = p_n + q / dt,
/// with diffusion and damping coefficients implicit (the damping magnitude
/// frozen at u_n), advection explicit, and the pressure handled by
/// incremental projection.  solve() sharpens the advection term to a
/// two-step Adams extrapolation after the first step.  The plain step()
/// entry point uses the non-incremental form (no grad p_n in the right side
/// and p = q / dt), matching the textbook splitting.

#pragma once

#include "cbf/direct/source.hpp"
#include "cbf/direct/trajectory.hpp"
#include "cbf/fields/projection.hpp"

namespace cbf::direct {

struct StepControls {
    double cfl = 0.5;          ///< max allowed dt |u|_inf / h
    int snapshot_stride = 0;   ///< steps between stored snapshots, 0 = auto
    bool record_ut = true;     ///< store residual-form u_t at snapshots
    double ut_warn_threshold = 0.1;
    fields::PoissonMethod poisson = fields::PoissonMethod::fast;
    bool init_pressure_poisson = true;  ///< start from the momentum-consistent p0
    bool ab2 = true;                    ///< Adams extrapolation of advection
    double helmholtz_tol = 1e-12;
    int helmholtz_max_iter = 20000;
    bool check_cfl = true;
};

class DirectSolver {
public:
    DirectSolver(const Grid& grid, const Params& params, const StepControls& controls = {});

    /// March from u0 to T.  u0 is projected onto the discrete
    /// divergence-free space first (the removed part is reported in the
    /// trajectory); boundary-normal faces are zeroed.
    Trajectory solve(const VectorField& u0, const SourceProfile& src) const;

    /// One non-incremental step (see the file comment); advances u and p in
    /// place from time t_n.
    void step(VectorField& u, ScalarField& p, double t_n, double dt,
              const SourceProfile& src) const;

    /// Residual-form time derivative at state (u, grad_p) and time t:
    /// leray(f g + extra + mu lap u - N(u) - damping(u) - grad_p).
    VectorField ut_residual(const VectorField& u, const VectorField& grad_p, double t,
                            const SourceProfile& src) const;

    const fields::LerayProjector& projector() const { return proj_; }
    const Grid& grid() const { return grid_; }
    const Params& params() const { return params_; }
    const StepControls& controls() const { return controls_; }

private:
    VectorField helmholtz_solve(const VectorField& rhs, const VectorField& coeff_state,
                                double dt, const VectorField& guess) const;
    void advance(VectorField& u, ScalarField& p, VectorField& grad_p, VectorField& adv_prev,
                 bool have_prev, double t_next, double dt, const SourceProfile& src,
                 bool incremental) const;

    Grid grid_;
    Params params_;
    StepControls controls_;
    fields::LerayProjector proj_;
};

/// Convenience wrapper constructing the solver.
Trajectory solve_direct(const Grid& grid, const Params& params, const VectorField& u0,
                        const SourceProfile& src, const StepControls& controls = {});

/// Residual-form u_t at the final state of a solve, recomputed from the
/// stored fields (matches trajectory.ut_final).
VectorField extract_ut(const Trajectory& traj, const Params& params, const SourceProfile& src);

/// The initial time derivative: leray(mu lap u0 - N(u0) - damping(u0)
/// + f g(0) + extra(0)).  u0 is assumed divergence free.
VectorField v0_formula(const VectorField& u0, const Params& params, const SourceProfile& src);

}  // namespace cbf::direct
