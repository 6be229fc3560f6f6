/// @file fixed_point.cpp
/// @brief The reconstruction iteration.

#include "cbf/inverse/fixed_point.hpp"

#include <cmath>
#include <cstdio>

#include "cbf/fields/norms.hpp"
#include "cbf/inverse/lambda1.hpp"

namespace cbf::inverse {

using fields::axpy;
using fields::l2;
using fields::scale;

ReconstructionReport fixed_point_solve(const BOperator& op, const FixedPointOptions& opts) {
    if (!(opts.omega > 0.0) || opts.omega > 1.0)
        throw cbf::parameter_error("fixed point: omega must lie in (0, 1]");
    if (opts.max_iter < 1) throw cbf::parameter_error("fixed point: max_iter must be positive");

    ReconstructionReport rep(op.grid());

    if (opts.require_admissible) {
        const double lam =
            opts.lambda1 > 0.0 ? opts.lambda1 : estimate_lambda1(op.grid()).lambda1;
        rep.admissibility = check_admissibility(op.params(), op.data(), lam);
        rep.admissibility_checked = true;
        rep.admissibility_overridden = opts.override_admissibility;
        if (!rep.admissibility.admissible && !opts.override_admissibility) {
            char msg[128];
            std::snprintf(msg, sizeof msg,
                          "fixed point: admissibility fails at mu = %.4g (lambda1 = %.4g); "
                          "pass override_admissibility to proceed",
                          op.params().mu, lam);
            throw cbf::parameter_error(msg);
        }
    }

    VectorField f = opts.f_init ? op.projector().apply(*opts.f_init) : op.initial_guess();
    auto clip_to_ball = [&](VectorField& v) {
        const double n = l2(v);
        if (opts.rescale_to_ball && n > 1.0) {
            scale(v, 1.0 / n);
            return 1.0;
        }
        return n;
    };
    double fnorm = clip_to_ball(f);
    rep.ball_history.push_back(fnorm);

    for (int k = 0; k < opts.max_iter; ++k) {
        VectorField bf = op.projector().apply(op.apply_b(f));
        VectorField next = f;
        scale(next, 1.0 - opts.omega);
        axpy(next, opts.omega, bf);
        const double next_norm = clip_to_ball(next);
        VectorField d = next;
        axpy(d, -1.0, f);
        const double resid = l2(d);

        rep.residual_history.push_back(resid);
        rep.ball_history.push_back(next_norm);
        const double prev_norm = fnorm;
        f = std::move(next);
        fnorm = next_norm;
        if (resid <= opts.tol * std::max(1.0, prev_norm)) {
            rep.converged = true;
            break;
        }
    }

    rep.iterations = static_cast<int>(rep.residual_history.size());
    rep.f_hat = std::move(f);
    rep.ball_norm = fnorm;
    for (double b : rep.ball_history)
        if (b > 1.0) rep.left_ball = true;

    VectorField bf = op.projector().apply(op.apply_b(rep.f_hat));
    axpy(bf, -1.0, rep.f_hat);
    rep.fixed_point_defect = l2(bf);
    return rep;
}

ReconstructionReport fixed_point_solve(const OverdeterminationData& data, const VectorField& u0,
                                       const direct::Params& params,
                                       const direct::SourceProfile& modulation,
                                       const FixedPointOptions& opts) {
    return fixed_point_solve(BOperator(data, u0, params, modulation), opts);
}

}  // namespace cbf::inverse
