/// @file admissibility.cpp
/// @brief Threshold arithmetic for the viscosity conditions.

#include "cbf/inverse/admissibility.hpp"

#include <cmath>

namespace cbf::inverse {

AdmissibilityVerdict check_admissibility(int dim, double mu, double beta, double r,
                                         double phi_l4, double lambda1) {
    if (dim != 2 && dim != 3) throw cbf::parameter_error("admissibility: dim must be 2 or 3");
    if (mu <= 0.0 || beta <= 0.0 || r < 1.0 || lambda1 <= 0.0 || phi_l4 < 0.0)
        throw cbf::parameter_error("admissibility: inputs out of range");

    AdmissibilityVerdict v;
    v.dim = dim;
    v.mu = mu;
    v.beta = beta;
    v.r = r;
    v.lambda1 = lambda1;
    v.phi_l4 = phi_l4;

    auto evaluate = [mu](ConditionCheck& c, double threshold) {
        c.applicable = true;
        c.threshold = threshold;
        c.margin = mu - threshold;
        c.pass = threshold < mu;
    };

    if (dim == 2) {
        evaluate(v.planar, phi_l4 * std::pow(2.0 / lambda1, 0.25));
    } else {
        if (r > 3.0) {
            const double lead = (r - 3.0) / (lambda1 * mu * (r - 1.0));
            const double power = std::pow(2.0 / (beta * mu * (r - 1.0)), 2.0 / (r - 3.0));
            evaluate(v.supercritical, lead * power);
        } else if (r == 3.0) {
            evaluate(v.critical, 1.0 / (2.0 * beta));
        }
        if (r >= 3.0)
            evaluate(v.alternative, 0.5 * std::max(1.0 / beta, 1.0 / std::sqrt(lambda1)));
    }

    const bool primary =
        (v.planar.applicable && v.planar.pass) ||
        (v.supercritical.applicable && v.supercritical.pass) ||
        (v.critical.applicable && v.critical.pass);
    v.admissible = primary || (v.alternative.applicable && v.alternative.pass);
    return v;
}

}  // namespace cbf::inverse
