/// @file source.cpp
/// @brief Source profile evaluation.

#include "cbf/direct/source.hpp"

#include <algorithm>
#include <cmath>

#include "cbf/fields/errors.hpp"

namespace cbf::direct {

VectorField ForcingChannel::at(double t) const {
    if (shapes.empty()) throw cbf::structural_error("forcing channel is empty");
    VectorField out(shapes.front().grid());
    for (std::size_t i = 0; i < shapes.size(); ++i)
        fields::axpy(out, weights[i](t), shapes[i]);
    return out;
}

SourceProfile::SourceProfile(VectorField f, std::function<double(double)> g,
                             std::function<double(double)> g_t)
    : f_(std::move(f)), g_fn_(std::move(g)), gt_fn_(std::move(g_t)) {
    if (!g_fn_) throw cbf::structural_error("source profile needs a modulation closure");
}

SourceProfile::SourceProfile(VectorField f, std::vector<double> times,
                             std::vector<ScalarField> g, std::vector<ScalarField> g_t)
    : f_(std::move(f)),
      times_(std::move(times)),
      g_samples_(std::move(g)),
      gt_samples_(std::move(g_t)) {
    if (times_.size() < 2 || times_.size() != g_samples_.size())
        throw cbf::structural_error("sampled modulation needs matching times and fields");
    if (!gt_samples_.empty() && gt_samples_.size() != times_.size())
        throw cbf::structural_error("sampled modulation derivative count mismatch");
    for (std::size_t i = 1; i < times_.size(); ++i)
        if (!(times_[i] > times_[i - 1]))
            throw cbf::structural_error("sampled modulation times must ascend");
    for (const auto& s : g_samples_)
        if (s.grid() != f_.grid())
            throw cbf::structural_error("sampled modulation grid mismatch");
}

SourceProfile SourceProfile::zero(const Grid& g) {
    return SourceProfile(VectorField(g), [](double) { return 0.0; }, [](double) { return 0.0; });
}

bool SourceProfile::has_gt() const {
    return static_cast<bool>(gt_fn_) || !gt_samples_.empty();
}

double SourceProfile::g_uniform_at(double t) const {
    if (!uniform()) throw cbf::structural_error("modulation is sampled, not uniform");
    return g_fn_(t);
}

ScalarField SourceProfile::interp(const std::vector<ScalarField>& samples, double t) const {
    const auto& ts = times_;
    if (t <= ts.front()) return samples.front();
    if (t >= ts.back()) return samples.back();
    const auto it = std::upper_bound(ts.begin(), ts.end(), t);
    const std::size_t hi = static_cast<std::size_t>(it - ts.begin());
    const std::size_t lo = hi - 1;
    const double w = (t - ts[lo]) / (ts[hi] - ts[lo]);
    ScalarField out = samples[lo];
    fields::scale(out, 1.0 - w);
    fields::axpy(out, w, samples[hi]);
    return out;
}

ScalarField SourceProfile::g_at(double t) const {
    if (uniform()) {
        ScalarField out(f_.grid());
        const double v = g_fn_(t);
        for (double& x : out.data()) x = v;
        return out;
    }
    return interp(g_samples_, t);
}

ScalarField SourceProfile::gt_at(double t) const {
    if (gt_fn_) {
        ScalarField out(f_.grid());
        const double v = gt_fn_(t);
        for (double& x : out.data()) x = v;
        return out;
    }
    if (!gt_samples_.empty()) return interp(gt_samples_, t);
    throw cbf::data_error("modulation derivative g_t is not available on this profile");
}

VectorField SourceProfile::forcing_at(double t) const {
    VectorField out(f_.grid());
    if (uniform()) {
        out = f_;
        fields::scale(out, g_fn_(t));
    } else {
        out = fields::multiply_center_scalar(f_, interp(g_samples_, t));
    }
    if (!extra.empty()) fields::axpy(out, 1.0, extra.at(t));
    return out;
}

namespace {

double sup_abs(const ScalarField& s) {
    double m = 0.0;
    for (double v : s.data()) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

double SourceProfile::g_sup(double T, int nsamples) const {
    double m = 0.0;
    for (int k = 0; k <= nsamples; ++k) {
        const double t = T * k / nsamples;
        if (uniform())
            m = std::max(m, std::abs(g_fn_(t)));
        else
            m = std::max(m, sup_abs(interp(g_samples_, t)));
    }
    return m;
}

double SourceProfile::gt_sup(double T, int nsamples) const {
    if (!has_gt()) return 0.0;
    double m = 0.0;
    for (int k = 0; k <= nsamples; ++k) {
        const double t = T * k / nsamples;
        if (gt_fn_)
            m = std::max(m, std::abs(gt_fn_(t)));
        else
            m = std::max(m, sup_abs(interp(gt_samples_, t)));
    }
    return m;
}

}  // namespace cbf::direct
