/// @file admissibility.hpp
/// @brief Viscosity thresholds under which the reconstruction is backed by
/// theory.
///
/// Four conditions, selected by dimension and damping exponent:
///   planar       (d = 2, r >= 1):  |phi|_L4 (2 / lambda1)^{1/4} < mu
///   supercritical(d = 3, r > 3):   (r-3) / (lambda1 mu (r-1))
///                                    * (2 / (beta mu (r-1)))^{2/(r-3)} < mu
///   critical     (d = 3, r = 3):   1 / (2 beta) < mu
///   alternative  (d = 3, r >= 3):  mu > max(1/beta, 1/sqrt(lambda1)) / 2
/// The alternative can stand in for either three-dimensional condition, so
/// the overall verdict is "primary passes, or the alternative applies and
/// passes".  Margins are reported as mu minus the threshold.

#pragma once

#include "cbf/direct/params.hpp"

namespace cbf::inverse {

struct ConditionCheck {
    bool applicable = false;
    bool pass = false;
    double threshold = 0.0;  ///< the expression mu must exceed
    double margin = 0.0;     ///< mu - threshold (0 when not applicable)
};

struct AdmissibilityVerdict {
    int dim = 0;
    double mu = 0.0, beta = 0.0, r = 0.0;
    double lambda1 = 0.0;
    double phi_l4 = 0.0;  ///< |phi|_{L^4} of the measured final state

    ConditionCheck planar;
    ConditionCheck supercritical;
    ConditionCheck critical;
    ConditionCheck alternative;

    bool admissible = false;
};

/// Pure threshold arithmetic on explicit values.
AdmissibilityVerdict check_admissibility(int dim, double mu, double beta, double r,
                                         double phi_l4, double lambda1);

}  // namespace cbf::inverse
