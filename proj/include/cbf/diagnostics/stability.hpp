/// @file stability.hpp
/// @brief Two-solution stability experiment for the reconstruction map.
///
/// Given two data bundles, reconstruct a source from each, re-run the
/// forward solver with the recovered sources, and compare the distance
/// between the two solutions (plus the recovered sources) against the
/// distance between the data.  The continuous theory bounds
///   sup_t |u1 - u2|_H + |u1 - u2|_{L^2 V} + |u1 - u2|_{L^{r+1}}
///     + |f1 - f2|_H
/// by a generic constant times
///   |u01 - u02|_{H2 cap V} + |g1 - g2|_0 + |(g1 - g2)_t|_0
///     + |grad(phi1 - phi2)|_H + |grad(psi1 - psi2) - mu lap(phi1 - phi2)|_H,
/// so the experiment reports the implied constant; a sweep over
/// perturbation sizes shows whether that constant behaves like one.

#pragma once

#include "cbf/inverse/fixed_point.hpp"

namespace cbf::diagnostics {

using fields::Grid;
using fields::ScalarField;
using fields::VectorField;

/// One measurement set: initial state, final-time data, and the modulation
/// (whose f template is ignored; reconstruction supplies the source).
struct DataBundle {
    VectorField u0;
    inverse::OverdeterminationData data;
    direct::SourceProfile modulation;
};

struct StabilityReport {
    // Left side: solution and source distances.
    double sup_h = 0.0;   ///< sup over snapshots of |u1 - u2|_H
    double l2_v = 0.0;    ///< sqrt(int |u1 - u2|_V^2 dt)
    double lrp1 = 0.0;    ///< (int |u1 - u2|^{r+1} dt)^{1/(r+1)}
    double f_diff = 0.0;  ///< |f1 - f2|_H
    double lhs = 0.0;     ///< sum of the four

    // Right side: data distances.
    double data_u0 = 0.0;        ///< |u01 - u02|_{H2 cap V}
    double data_g = 0.0;         ///< sup_t max_x |g1 - g2|
    double data_gt = 0.0;        ///< sup_t max_x |(g1 - g2)_t|, 0 when absent
    double data_phi_grad = 0.0;  ///< |grad(phi1 - phi2)|_H
    double data_pressure = 0.0;  ///< |grad(psi1 - psi2) - mu lap(phi1 - phi2)|_H
    double rhs = 0.0;            ///< sum of the five

    double implied_c = 0.0;   ///< lhs / rhs, zero in the exact-zero case
    bool exact_zero = false;  ///< identical bundles: both sides zero

    bool complete = false;  ///< both reconstructions converged
    bool converged1 = false, converged2 = false;
    int iterations1 = 0, iterations2 = 0;
    double fhat1_norm = 0.0, fhat2_norm = 0.0;
    int snapshot_stride = 1;  ///< sampling stride behind sup and integrals
};

/// Runs fixed_point_solve on both bundles, re-simulates with the recovered
/// sources, and fills the report.  A non-convergent reconstruction leaves
/// complete false; the norms are still reported.  Admissibility handling
/// follows fp (checked by default).  Bundles must share one grid
/// (structural_error otherwise); a modulation-derivative mismatch between
/// the bundles is a data_error.
StabilityReport stability_experiment(const DataBundle& b1, const DataBundle& b2,
                                     const direct::Params& params,
                                     const inverse::FixedPointOptions& fp = {},
                                     const direct::StepControls& controls = {});

/// max / min of a sweep of implied constants; infinite when any entry is
/// nonpositive or nonfinite.  The sweep "behaves like a constant" when the
/// returned ratio is at most two.
double sweep_spread(const std::vector<double>& implied_cs);

}  // namespace cbf::diagnostics
