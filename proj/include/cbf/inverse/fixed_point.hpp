/// @file fixed_point.hpp
/// @brief Damped successive approximation on the second-kind map.
///
/// Iterates f_{k+1} = (1 - omega) f_k + omega leray(B f_k) from the
/// stationary initial guess (or a caller-supplied one).  Convergence is
/// reported, never assumed: the driver stops on a relative update
/// tolerance or the iteration cap, and the report carries the full
/// residual and norm histories plus the defect of the returned iterate.
/// Iterates are kept divergence free because the physical force is; the
/// unit-ball constraint from the existence theory is monitored and only
/// enforced when rescale_to_ball is set.

#pragma once

#include "cbf/inverse/operators.hpp"

namespace cbf::inverse {

struct FixedPointOptions {
    double omega = 1.0;  ///< damping weight in (0, 1]
    double tol = 1e-8;   ///< stop when |f_{k+1} - f_k| <= tol max(1, |f_k|)
    int max_iter = 30;
    std::optional<VectorField> f_init;
    bool require_admissible = true;  ///< check thresholds before iterating
    bool override_admissibility = false;  ///< run anyway, recorded in the report
    double lambda1 = 0.0;  ///< for the check; <= 0 means estimate from the grid
    bool rescale_to_ball = false;  ///< project iterates onto the unit ball
};

struct ReconstructionReport {
    VectorField f_hat;
    int iterations = 0;
    std::vector<double> residual_history;  ///< |f_{k+1} - f_k| per iteration
    std::vector<double> ball_history;      ///< |f_k|, starting with the initial guess
    double fixed_point_defect = 0.0;       ///< |f_hat - leray(B f_hat)|
    double ball_norm = 0.0;                ///< |f_hat|
    bool converged = false;
    bool left_ball = false;  ///< some iterate had |f_k| > 1
    bool admissibility_checked = false;
    bool admissibility_overridden = false;
    AdmissibilityVerdict admissibility;  ///< filled when checked

    ReconstructionReport(const Grid& g) : f_hat(g) {}
};

/// Throws parameter_error when the admissibility precondition fails and no
/// override is set; direct-solver failures propagate.
ReconstructionReport fixed_point_solve(const BOperator& op, const FixedPointOptions& opts = {});

/// Convenience overload constructing the operator in place.
ReconstructionReport fixed_point_solve(const OverdeterminationData& data, const VectorField& u0,
                                       const direct::Params& params,
                                       const direct::SourceProfile& modulation,
                                       const FixedPointOptions& opts = {});

}  // namespace cbf::inverse
