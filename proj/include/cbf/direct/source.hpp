/// @file source.hpp
/// @brief Source profiles: the separable body force f(x) g(x, t).
///
/// The modulation g is either spatially uniform (a time closure, the common
/// case) or a set of sampled scalar fields interpolated linearly in time.
/// An optional extra forcing channel (spatial shapes times time weights)
/// carries manufactured-solution residuals; it is additive instrumentation
/// on top of the separable source and stays empty in production runs.

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cbf/fields/field.hpp"

namespace cbf::direct {

using fields::Grid;
using fields::ScalarField;
using fields::VectorField;

struct ForcingChannel {
    std::vector<VectorField> shapes;
    std::vector<std::function<double(double)>> weights;

    bool empty() const { return shapes.empty(); }

    /// sum_i weights[i](t) * shapes[i]; grid taken from the first shape.
    VectorField at(double t) const;
};

class SourceProfile {
public:
    /// Spatially uniform modulation g(t) with optional time derivative.
    SourceProfile(VectorField f, std::function<double(double)> g,
                  std::function<double(double)> g_t = {});

    /// Sampled modulation: fields g_k at ascending times t_k, linearly
    /// interpolated (clamped outside the range).  g_t samples optional.
    SourceProfile(VectorField f, std::vector<double> times, std::vector<ScalarField> g,
                  std::vector<ScalarField> g_t = {});

    static SourceProfile zero(const Grid& g);

    const Grid& grid() const { return f_.grid(); }
    const VectorField& f() const { return f_; }
    VectorField& f() { return f_; }

    bool uniform() const { return static_cast<bool>(g_fn_); }
    bool has_gt() const;

    double g_uniform_at(double t) const;  ///< throws structural_error unless uniform
    ScalarField g_at(double t) const;
    ScalarField gt_at(double t) const;  ///< throws data_error when unavailable

    /// f g(t) at faces (cell-to-face interpolation for sampled g) plus the
    /// extra channel.
    VectorField forcing_at(double t) const;

    /// sup over [0, T] of max_x |g| (resp. |g_t|), from nsamples + 1 evenly
    /// spaced evaluations; exact for monotone uniform modulations.
    double g_sup(double T, int nsamples = 256) const;
    double gt_sup(double T, int nsamples = 256) const;

    ForcingChannel extra;

private:
    VectorField f_;
    std::function<double(double)> g_fn_, gt_fn_;
    std::vector<double> times_;
    std::vector<ScalarField> g_samples_, gt_samples_;

    ScalarField interp(const std::vector<ScalarField>& samples, double t) const;
};

}  // namespace cbf::direct
