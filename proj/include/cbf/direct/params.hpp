/// @file params.hpp
/// @brief Physical and run parameters for the flow model.

#pragma once

#include "cbf/fields/errors.hpp"

namespace cbf::direct {

/// Coefficients of the momentum balance
///   u_t - mu lap u + (u . grad) u + alpha u + beta |u|^{r-1} u + grad p = f g
/// on (0, T], marched with step dt.
struct Params {
    double mu = 0.1;     ///< viscosity, > 0
    double alpha = 1.0;  ///< linear damping, > 0
    double beta = 1.0;   ///< nonlinear damping, > 0
    double r = 3.0;      ///< damping exponent, >= 1 (>= 3 in three dimensions)
    double T = 1.0;      ///< final time, > 0
    double dt = 1e-3;    ///< time step, in (0, T]

    /// Throws parameter_error on any violated constraint.  dim is the grid
    /// dimension; three-dimensional runs restrict the exponent range and,
    /// at the critical exponent r = 3, require 2 beta mu >= 1.
    void validate(int dim) const;
};

}  // namespace cbf::direct
