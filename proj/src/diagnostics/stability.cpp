#include "cbf/diagnostics/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cbf/diagnostics/energy.hpp"
#include "cbf/fields/norms.hpp"
#include "cbf/fields/ops.hpp"

namespace cbf::diagnostics {

namespace {

double field_max_abs(const ScalarField& a, const ScalarField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

/// sup over sampled times of max_x |s1(t) - s2(t)| for a pair of modulation
/// accessors (g_at or gt_at).
template <class At>
double modulation_distance(const direct::SourceProfile& m1, const direct::SourceProfile& m2,
                           double T, int nsamples, At&& at) {
    double m = 0.0;
    for (int k = 0; k <= nsamples; ++k) {
        const double t = T * static_cast<double>(k) / nsamples;
        m = std::max(m, field_max_abs(at(m1, t), at(m2, t)));
    }
    return m;
}

}  // namespace

StabilityReport stability_experiment(const DataBundle& b1, const DataBundle& b2,
                                     const direct::Params& params,
                                     const inverse::FixedPointOptions& fp,
                                     const direct::StepControls& controls) {
    const Grid& g = b1.u0.grid();
    b1.u0.check_same_grid(b2.u0, "stability experiment");
    b1.data.phi.check_same_grid(b2.data.phi, "stability experiment");
    if (b1.modulation.has_gt() != b2.modulation.has_gt())
        throw data_error(
            "stability experiment: one modulation has a time derivative and the other does not");

    StabilityReport rep;

    // Reconstruction keeps the operator's lean inner solves; the caller's
    // controls shape only the re-simulations whose snapshots feed the norms.
    inverse::BOperator op1(b1.data, b1.u0, params, b1.modulation);
    inverse::BOperator op2(b2.data, b2.u0, params, b2.modulation);
    inverse::ReconstructionReport r1 = inverse::fixed_point_solve(op1, fp);
    inverse::ReconstructionReport r2 = inverse::fixed_point_solve(op2, fp);
    rep.converged1 = r1.converged;
    rep.converged2 = r2.converged;
    rep.iterations1 = r1.iterations;
    rep.iterations2 = r2.iterations;
    rep.fhat1_norm = r1.ball_norm;
    rep.fhat2_norm = r2.ball_norm;
    rep.complete = r1.converged && r2.converged;

    direct::SourceProfile src1 = b1.modulation;
    direct::SourceProfile src2 = b2.modulation;
    src1.f() = r1.f_hat;
    src2.f() = r2.f_hat;
    direct::Trajectory t1 = direct::solve_direct(g, params, b1.u0, src1, controls);
    direct::Trajectory t2 = direct::solve_direct(g, params, b2.u0, src2, controls);
    if (t1.snapshot_times.size() != t2.snapshot_times.size())
        throw structural_error("stability experiment: snapshot series disagree");
    rep.snapshot_stride = t1.snapshot_stride;

    std::vector<double> times = t1.snapshot_times;
    std::vector<double> v2(times.size(), 0.0), lr(times.size(), 0.0);
    for (std::size_t k = 0; k < times.size(); ++k) {
        VectorField d = t1.snapshots[k];
        fields::axpy(d, -1.0, t2.snapshots[k]);
        rep.sup_h = std::max(rep.sup_h, fields::l2(d));
        const double sv = fields::h1_semi(d);
        v2[k] = sv * sv;
        lr[k] = fields::lp_pow(d, params.r + 1.0);
    }
    rep.l2_v = std::sqrt(integrate_samples(times, v2));
    rep.lrp1 = std::pow(integrate_samples(times, lr), 1.0 / (params.r + 1.0));
    {
        VectorField df = r1.f_hat;
        fields::axpy(df, -1.0, r2.f_hat);
        rep.f_diff = fields::l2(df);
    }
    rep.lhs = rep.sup_h + rep.l2_v + rep.lrp1 + rep.f_diff;

    {
        VectorField du0 = b1.u0;
        fields::axpy(du0, -1.0, b2.u0);
        rep.data_u0 = h2capv_norm(du0);
    }
    const int nsamples = std::max(256, t1.steps);
    rep.data_g = modulation_distance(
        b1.modulation, b2.modulation, params.T, nsamples,
        [](const direct::SourceProfile& m, double t) { return m.g_at(t); });
    if (b1.modulation.has_gt())
        rep.data_gt = modulation_distance(
            b1.modulation, b2.modulation, params.T, nsamples,
            [](const direct::SourceProfile& m, double t) { return m.gt_at(t); });
    {
        VectorField dphi = b1.data.phi;
        fields::axpy(dphi, -1.0, b2.data.phi);
        rep.data_phi_grad = fields::h1_semi(dphi);
        VectorField pres = b1.data.grad_psi;
        fields::axpy(pres, -1.0, b2.data.grad_psi);
        fields::axpy(pres, -params.mu, fields::laplacian(dphi));
        rep.data_pressure = fields::l2(pres);
    }
    rep.rhs = rep.data_u0 + rep.data_g + rep.data_gt + rep.data_phi_grad + rep.data_pressure;

    rep.exact_zero = rep.lhs == 0.0 && rep.rhs == 0.0;
    if (rep.rhs > 0.0)
        rep.implied_c = rep.lhs / rep.rhs;
    else
        rep.implied_c = rep.exact_zero ? 0.0 : std::numeric_limits<double>::infinity();
    return rep;
}

double sweep_spread(const std::vector<double>& implied_cs) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (double c : implied_cs) {
        if (!(c > 0.0) || !std::isfinite(c)) return std::numeric_limits<double>::infinity();
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    if (implied_cs.empty()) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

}  // namespace cbf::diagnostics
