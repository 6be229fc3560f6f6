/// @file solver.cpp
/// @brief Time marching for the damped momentum system.

#include "cbf/direct/solver.hpp"

#include <cmath>
#include <cstdio>

#include "cbf/fields/norms.hpp"
#include "cbf/fields/ops.hpp"

namespace cbf::direct {

using fields::axpy;
using fields::conjugate_gradient;
using fields::divergence;
using fields::gradient;
using fields::h1_semi;
using fields::l2;
using fields::laplacian;
using fields::lp_pow;
using fields::scale;

namespace {

/// y = c x - dt mu lap_a x on interior faces of component a; identity on
/// the constrained boundary-normal faces.
void helmholtz_apply(const Grid& g, int a, const std::vector<double>& c, double dtmu,
                     const std::vector<double>& x, std::vector<double>& y) {
    const int n = g.n();
    const int dim = g.dim();
    const double h2 = g.h() * g.h();
    const int ex = g.ext(a, 0);
    const int ey = g.ext(a, 1);
    auto id = [&](int i, int j, int k) {
        return (static_cast<std::size_t>(k) * ey + j) * ex + i;
    };
    std::size_t idx = 0;
    fields::for_each_face(g, a, [&](int i, int j, int k) {
        const int coord[3] = {i, j, k};
        if (coord[a] == 0 || coord[a] == n) {
            y[idx] = x[idx];
            ++idx;
            return;
        }
        const double center = x[idx];
        double lap = 0.0;
        for (int d = 0; d < dim; ++d) {
            const int len = g.ext(a, d);
            const int m = coord[d];
            int lo[3] = {i, j, k};
            int hi[3] = {i, j, k};
            lo[d] = m - 1;
            hi[d] = m + 1;
            double vlo, vhi;
            if (d == a) {
                vlo = x[id(lo[0], lo[1], lo[2])];
                vhi = x[id(hi[0], hi[1], hi[2])];
            } else {
                vlo = (m == 0) ? -center : x[id(lo[0], lo[1], lo[2])];
                vhi = (m == len - 1) ? -center : x[id(hi[0], hi[1], hi[2])];
            }
            lap += (vlo - 2.0 * center + vhi) / h2;
        }
        y[idx] = c[idx] * center - dtmu * lap;
        ++idx;
    });
}

double max_abs(const ScalarField& s) {
    double m = 0.0;
    for (double v : s.data()) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

DirectSolver::DirectSolver(const Grid& grid, const Params& params, const StepControls& controls)
    : grid_(grid), params_(params), controls_(controls), proj_(grid, controls.poisson) {
    params_.validate(grid.dim());
}

VectorField DirectSolver::helmholtz_solve(const VectorField& rhs, const VectorField& coeff_state,
                                          double dt, const VectorField& guess) const {
    VectorField out(grid_);
    for (int a = 0; a < grid_.dim(); ++a) {
        const std::vector<double> mag = fields::face_magnitude(coeff_state, a);
        std::vector<double> c(mag.size());
        for (std::size_t i = 0; i < mag.size(); ++i) {
            double factor;
            if (params_.r == 1.0)
                factor = 1.0;
            else if (params_.r == 3.0)
                factor = mag[i] * mag[i];
            else
                factor = std::pow(mag[i], params_.r - 1.0);
            c[i] = 1.0 + dt * (params_.alpha + params_.beta * factor);
        }
        const double dtmu = dt * params_.mu;
        auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
            helmholtz_apply(grid_, a, c, dtmu, x, y);
        };
        // Zero the constrained entries of rhs and guess so the identity
        // rows stay exactly satisfied.
        std::vector<double> b = rhs.comp(a);
        std::vector<double> x = guess.comp(a);
        std::size_t idx = 0;
        const int n = grid_.n();
        fields::for_each_face(grid_, a, [&](int i, int j, int k) {
            const int along = (a == 0 ? i : a == 1 ? j : k);
            if (along == 0 || along == n) {
                b[idx] = 0.0;
                x[idx] = 0.0;
            }
            ++idx;
        });
        // Floor the target at helmholtz_tol absolute so noise-scale right
        // sides terminate instead of chasing an unreachable residual.
        conjugate_gradient(apply, b, x, controls_.helmholtz_tol, 1.0,
                           controls_.helmholtz_max_iter, "helmholtz");
        out.comp(a) = std::move(x);
    }
    return out;
}

void DirectSolver::advance(VectorField& u, ScalarField& p, VectorField& grad_p,
                           VectorField& adv_prev, bool have_prev, double t_next, double dt,
                           const SourceProfile& src, bool incremental) const {
    VectorField adv = fields::advect(u, u);
    VectorField rhs = src.forcing_at(t_next);
    if (controls_.ab2 && have_prev && incremental) {
        axpy(rhs, -1.5, adv);
        axpy(rhs, 0.5, adv_prev);
    } else {
        axpy(rhs, -1.0, adv);
    }
    if (incremental) axpy(rhs, -1.0, grad_p);
    scale(rhs, dt);
    axpy(rhs, 1.0, u);

    VectorField ustar = helmholtz_solve(rhs, u, dt, u);
    ustar.enforce_noslip();
    fields::ProjectionResult pr = proj_.project(ustar);

    u = std::move(pr.u);
    if (incremental) {
        fields::axpy(p, 1.0 / dt, pr.q);
        p.make_zero_mean();
    } else {
        p = std::move(pr.q);
        scale(p, 1.0 / dt);
    }
    grad_p = gradient(p);
    adv_prev = std::move(adv);
}

void DirectSolver::step(VectorField& u, ScalarField& p, double t_n, double dt,
                        const SourceProfile& src) const {
    if (u.grid() != grid_ || p.grid() != grid_)
        throw cbf::structural_error("step: state grid does not match the solver grid");
    VectorField grad_p = gradient(p);
    VectorField adv_prev(grid_);
    advance(u, p, grad_p, adv_prev, false, t_n + dt, dt, src, false);
}

VectorField DirectSolver::ut_residual(const VectorField& u, const VectorField& grad_p, double t,
                                      const SourceProfile& src) const {
    VectorField rhs = src.forcing_at(t);
    axpy(rhs, params_.mu, laplacian(u));
    axpy(rhs, -1.0, fields::advect(u, u));
    axpy(rhs, -1.0, fields::damping(u, params_.r, params_.beta, params_.alpha));
    axpy(rhs, -1.0, grad_p);
    return proj_.apply(rhs);
}

Trajectory DirectSolver::solve(const VectorField& u0, const SourceProfile& src) const {
    if (u0.grid() != grid_ || src.grid() != grid_)
        throw cbf::structural_error("solve: field grids do not match the solver grid");

    const int steps = static_cast<int>(std::ceil(params_.T / params_.dt - 1e-12));
    const double dt = params_.T / steps;

    Trajectory traj(grid_, params_);
    traj.steps = steps;
    traj.dt_eff = dt;
    traj.snapshot_stride =
        controls_.snapshot_stride > 0 ? controls_.snapshot_stride : std::max(1, steps / 64);

    VectorField u = u0;
    u.enforce_noslip();
    {
        fields::ProjectionResult pr = proj_.project(u);
        traj.u0_projection_change = l2(pr.grad_q);
        u = std::move(pr.u);
    }

    auto check_cfl = [&](const VectorField& v, double t) {
        if (!controls_.check_cfl) return;
        const double vmax = fields::linf(v);
        if (dt * vmax / grid_.h() > controls_.cfl) {
            char msg[160];
            std::snprintf(msg, sizeof msg,
                          "cfl violation at t = %.6g: dt |u|_inf / h = %.3g > %.3g; "
                          "reduce dt to at most %.3e",
                          t, dt * vmax / grid_.h(), controls_.cfl,
                          controls_.cfl * grid_.h() / vmax);
            throw cbf::parameter_error(msg);
        }
    };
    check_cfl(u, 0.0);

    ScalarField p(grid_);
    if (controls_.init_pressure_poisson) {
        VectorField r0 = src.forcing_at(0.0);
        axpy(r0, params_.mu, laplacian(u));
        axpy(r0, -1.0, fields::advect(u, u));
        axpy(r0, -1.0, fields::damping(u, params_.r, params_.beta, params_.alpha));
        p = proj_.poisson().solve(divergence(r0)).q;
    }
    VectorField grad_p = gradient(p);

    auto energy_of = [&](double t, const VectorField& v) {
        EnergySample s;
        s.t = t;
        s.h2 = fields::dot(v, v);
        const double semi = h1_semi(v);
        s.v2 = semi * semi;
        s.lr = lp_pow(v, params_.r + 1.0);
        return s;
    };
    traj.energy.push_back(energy_of(0.0, u));

    auto push_snapshot = [&](double t, const VectorField& v, const VectorField& gp) {
        traj.snapshot_times.push_back(t);
        traj.snapshots.push_back(v);
        traj.grad_p_snapshots.push_back(gp);
        if (controls_.record_ut) {
            VectorField ut = ut_residual(v, gp, t, src);
            UtSample s;
            s.t = t;
            s.h2 = fields::dot(ut, ut);
            const double semi = h1_semi(ut);
            s.v2 = semi * semi;
            traj.ut_samples.push_back(s);
        }
    };
    push_snapshot(0.0, u, grad_p);

    VectorField adv_prev(grid_);
    bool have_prev = false;
    VectorField u_m1 = u;  // state one step back
    VectorField u_m2 = u;  // state two steps back

    for (int k = 1; k <= steps; ++k) {
        const double t_next = (k == steps) ? params_.T : dt * k;
        u_m2 = std::move(u_m1);
        u_m1 = u;
        advance(u, p, grad_p, adv_prev, have_prev, t_next, dt, src, true);
        have_prev = true;
        check_cfl(u, t_next);
        traj.energy.push_back(energy_of(t_next, u));
        traj.max_div = std::max(traj.max_div, max_abs(divergence(u)));
        if (k % traj.snapshot_stride == 0 || k == steps) push_snapshot(t_next, u, grad_p);
    }

    traj.u_final = u;
    traj.grad_p_final = grad_p;
    traj.ut_final = ut_residual(u, grad_p, params_.T, src);

    if (steps >= 2) {
        // Backward-difference cross-check from the last three time levels.
        VectorField bdf = u;
        scale(bdf, 3.0);
        axpy(bdf, -4.0, u_m1);
        axpy(bdf, 1.0, u_m2);
        scale(bdf, 1.0 / (2.0 * dt));
        axpy(bdf, -1.0, traj.ut_final);
        const double ref = std::max(l2(traj.ut_final), 1e-12);
        traj.ut_bdf_discrepancy = l2(bdf) / ref;
        traj.ut_warning = traj.ut_bdf_discrepancy > controls_.ut_warn_threshold;
    }

    traj.g_sup = src.g_sup(params_.T, std::max(256, steps));
    traj.gt_sup = src.gt_sup(params_.T, std::max(256, steps));
    traj.f_l2 = l2(src.f());
    return traj;
}

Trajectory solve_direct(const Grid& grid, const Params& params, const VectorField& u0,
                        const SourceProfile& src, const StepControls& controls) {
    return DirectSolver(grid, params, controls).solve(u0, src);
}

VectorField extract_ut(const Trajectory& traj, const Params& params, const SourceProfile& src) {
    DirectSolver solver(traj.grid, params);
    return solver.ut_residual(traj.u_final, traj.grad_p_final, params.T, src);
}

VectorField v0_formula(const VectorField& u0, const Params& params, const SourceProfile& src) {
    fields::LerayProjector proj(u0.grid());
    VectorField rhs = src.forcing_at(0.0);
    axpy(rhs, params.mu, laplacian(u0));
    axpy(rhs, -1.0, fields::advect(u0, u0));
    axpy(rhs, -1.0, fields::damping(u0, params.r, params.beta, params.alpha));
    return proj.apply(rhs);
}

}  // namespace cbf::direct
