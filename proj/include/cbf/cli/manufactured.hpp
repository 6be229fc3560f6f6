/// @file manufactured.hpp
/// @brief Closed-form reference cases shared by the batch modes.
///
/// Three catalog entries, each carrying the initial state, the separable
/// source factor, a ready-to-run source profile, and exact final-time
/// measurements:
///   decaying-vortex   exponentially decaying vortex; zero separable
///                     source, the momentum residual carried as known
///                     forcing shapes
///   steady-state      discrete balanced state: the source is exactly the
///                     advection + damping - diffusion balance, so the
///                     march must hold the state fixed
///   separable-source  the decaying vortex again, with a smooth bump
///                     source f(x) (1 + t) present and cancelled inside
///                     the known-forcing channel, making f a fixed point
///                     of the reconstruction map
/// All three are two-dimensional; asking for one on a 3-d grid is a
/// parameter error, as is an unknown case id.

#pragma once

#include <string>

#include "cbf/cli/config.hpp"
#include "cbf/direct/source.hpp"
#include "cbf/inverse/operators.hpp"

namespace cbf::cli {

using fields::Grid;
using fields::ScalarField;
using fields::VectorField;

/// Curl of the stream a sin^2(pi x) sin^2(pi y): smooth, divergence free,
/// no slip.  Two dimensions only.
VectorField vortex_field(const Grid& g, double a);

/// Curl of the stream a sin^3(pi x) sin^3(pi y), the smooth bump used as a
/// reconstruction target.  Two dimensions only.
VectorField bump_field(const Grid& g, double a);

/// Constant cell-centered field.
ScalarField const_field(const Grid& g, double v);

struct ManufacturedCase {
    std::string case_id;
    VectorField u0;
    VectorField f_true;             ///< separable factor (zero field when absent)
    direct::SourceProfile source;   ///< f slot holds f_true; extra carries known forcing
    inverse::OverdeterminationData exact_final;
};

ManufacturedCase make_manufactured(const std::string& case_id, const Grid& g,
                                   const direct::Params& params, const SourceSpec& spec);

}  // namespace cbf::cli
