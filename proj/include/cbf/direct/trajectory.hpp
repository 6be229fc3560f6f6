/// @file trajectory.hpp
/// @brief Result bundle of a direct solve.

#pragma once

#include <vector>

#include "cbf/direct/params.hpp"
#include "cbf/fields/field.hpp"

namespace cbf::direct {

using fields::Grid;
using fields::ScalarField;
using fields::VectorField;

/// Per-step energy functionals: |u|_H^2, |u|_V^2 and the (r+1)-th power of
/// the L^{r+1} norm, recorded after every step (index 0 is the initial
/// state).
struct EnergySample {
    double t = 0.0;
    double h2 = 0.0;
    double v2 = 0.0;
    double lr = 0.0;
};

/// Energy functionals of the residual-form time derivative at snapshot
/// times.
struct UtSample {
    double t = 0.0;
    double h2 = 0.0;
    double v2 = 0.0;
};

struct Trajectory {
    Trajectory(const Grid& g, const Params& p)
        : grid(g),
          params(p),
          u_final(g),
          grad_p_final(g),
          ut_final(g) {}

    Grid grid;
    Params params;

    double dt_eff = 0.0;  ///< T / steps, the step actually used
    int steps = 0;
    int snapshot_stride = 1;

    std::vector<double> snapshot_times;
    std::vector<VectorField> snapshots;
    std::vector<VectorField> grad_p_snapshots;

    std::vector<EnergySample> energy;
    std::vector<UtSample> ut_samples;

    VectorField u_final;
    VectorField grad_p_final;
    VectorField ut_final;  ///< residual-form u_t at the final time

    /// Relative gap between the residual-form ut_final and the backward
    /// difference of the last three time levels; flagged above the
    /// configured threshold but never fatal.
    double ut_bdf_discrepancy = 0.0;
    bool ut_warning = false;

    double u0_projection_change = 0.0;  ///< |u0 - P u0|_2 removed at start
    double max_div = 0.0;               ///< max over steps of max_x |div u|
    double g_sup = 0.0;                 ///< sup |g| seen over the run
    double gt_sup = 0.0;                ///< sup |g_t| (0 when unavailable)
    double f_l2 = 0.0;
};

}  // namespace cbf::direct
