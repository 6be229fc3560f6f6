/// @file operators.hpp
/// @brief The source-to-derivative map A and the second-kind map B whose
/// fixed points solve the reconstruction problem.
///
/// A f is u_t(., T) of the direct solve forced by f g.  B assembles the
/// final-time momentum balance from the measured data:
///   B f = (A f + (phi . grad) phi + grad_psi - mu lap phi + alpha phi
///          + beta |phi|^{r-1} phi - known_forcing(T)) / g(., T),
/// so a source reproducing the measurements satisfies f = B f.  The
/// division is guarded by the certified floor on |g(., T)|.

#pragma once

#include <optional>

#include "cbf/direct/solver.hpp"
#include "cbf/inverse/admissibility.hpp"

namespace cbf::inverse {

using fields::Grid;
using fields::ScalarField;
using fields::VectorField;

/// Final-time measurements: velocity, pressure gradient, and the source
/// modulation with its certified lower bound.
struct OverdeterminationData {
    VectorField phi;       ///< measured u(., T)
    VectorField grad_psi;  ///< measured grad p(., T)
    ScalarField g_at_T;    ///< g(., T) samples at cell centers
    double g_T_floor;      ///< certified lower bound on |g(., T)|, > 0

    OverdeterminationData(VectorField phi_, VectorField grad_psi_, ScalarField g_at_T_,
                          double floor);

    const Grid& grid() const { return phi.grid(); }

    /// Checks the data invariants: phi divergence-free (max pointwise
    /// divergence at most div_tol) with zero boundary-normal faces (at most
    /// wall_tol), floor positive, and min |g_at_T| at least the floor.
    /// Throws data_error on violation.
    void validate(double div_tol = 1e-8, double wall_tol = 1e-12) const;

    double phi_l4() const;

    /// Diagnostic only: the divergence-free component the pressure data
    /// should not have, |leray(grad_psi)|_2.  Zero for an exact discrete
    /// gradient; small but nonzero for restricted or measured data.
    double gradient_consistency() const;
};

/// B with its f-independent part cached.  The modulation template supplies
/// g (and any known extra forcing); its f entry is replaced per call.
class BOperator {
public:
    /// Validates data with the given tolerances.  controls defaults to a
    /// memory-lean direct solve (endpoint snapshots only, no residual
    /// sampling along the way).
    BOperator(OverdeterminationData data, VectorField u0, direct::Params params,
              direct::SourceProfile modulation,
              std::optional<direct::StepControls> controls = std::nullopt,
              double div_tol = 1e-8, double wall_tol = 1e-12);

    /// u_t(., T) of the direct solve with source f g plus the template's
    /// extra channel.
    VectorField apply_a(const VectorField& f) const;

    /// (apply_a(f) + stationary) / g(., T).
    VectorField apply_b(const VectorField& f) const;

    /// The f-independent numerator terms, including the known-forcing
    /// subtraction.
    const VectorField& stationary() const { return stationary_; }

    /// Divergence-free part of B with the A term zeroed, the default start
    /// of the fixed-point iteration.
    VectorField initial_guess() const;

    const OverdeterminationData& data() const { return data_; }
    const direct::Params& params() const { return params_; }
    const Grid& grid() const { return data_.grid(); }
    const fields::LerayProjector& projector() const { return proj_; }

private:
    OverdeterminationData data_;
    VectorField u0_;
    direct::Params params_;
    direct::SourceProfile mod_;
    direct::StepControls controls_;
    fields::LerayProjector proj_;
    VectorField stationary_;
};

/// One-shot wrappers matching the operator definitions.
VectorField apply_A(const VectorField& f, const VectorField& u0, const direct::Params& params,
                    const direct::SourceProfile& modulation);
VectorField apply_B(const VectorField& f, const OverdeterminationData& data,
                    const VectorField& u0, const direct::Params& params,
                    const direct::SourceProfile& modulation);

/// Threshold check wired to measured data: phi_l4 from data.phi.
AdmissibilityVerdict check_admissibility(const direct::Params& params,
                                         const OverdeterminationData& data, double lambda1);

}  // namespace cbf::inverse
