/// @file norms.cpp
/// @brief Discrete norms; all reductions are sequential in storage order.

#include "cbf/fields/norms.hpp"

#include <cmath>

#include "cbf/fields/errors.hpp"

namespace cbf::fields {

namespace {

double cell_weight(const Grid& g) {
    double w = 1.0;
    for (int d = 0; d < g.dim(); ++d) w *= g.h();
    return w;
}

}  // namespace

double dot(const ScalarField& x, const ScalarField& y) {
    x.check_same_grid(y, "dot");
    const auto& xs = x.data();
    const auto& ys = y.data();
    double s = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) s += xs[i] * ys[i];
    return s * cell_weight(x.grid());
}

double dot(const VectorField& x, const VectorField& y) {
    x.check_same_grid(y, "dot");
    const Grid& g = x.grid();
    const int last = g.n();
    double s = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
        const auto& xs = x.comp(a);
        const auto& ys = y.comp(a);
        std::size_t idx = 0;
        for_each_face(g, a, [&](int i, int j, int k) {
            const int along = (a == 0 ? i : a == 1 ? j : k);
            const double w = (along == 0 || along == last) ? 0.5 : 1.0;
            s += w * xs[idx] * ys[idx];
            ++idx;
        });
    }
    return s * cell_weight(g);
}

double l2(const ScalarField& x) { return std::sqrt(dot(x, x)); }

double l2(const VectorField& x) { return std::sqrt(dot(x, x)); }

double h1_semi(const VectorField& x) {
    const Grid& g = x.grid();
    const int dim = g.dim();
    const double h = g.h();
    const double wcell = cell_weight(g);
    double total = 0.0;
    for (int a = 0; a < dim; ++a) {
        const int ex = g.ext(a, 0);
        const int ey = g.ext(a, 1);
        const int ez = dim == 3 ? g.ext(a, 2) : 1;
        const int e[3] = {ex, ey, ez};
        for (int d = 0; d < dim; ++d) {
            // Iterate lines along axis d; o1/o2 run over the other axes.
            int other[2], no = 0;
            for (int t = 0; t < 3; ++t)
                if (t != d && t < dim) other[no++] = t;
            int idxs[3] = {0, 0, 0};
            const int len = e[d];
            const int lim1 = e[other[0]];
            const int lim2 = (no > 1) ? e[other[1]] : 1;
            for (int o2 = 0; o2 < lim2; ++o2) {
                for (int o1 = 0; o1 < lim1; ++o1) {
                    idxs[other[0]] = o1;
                    if (no > 1) idxs[other[1]] = o2;
                    auto val = [&](int m) {
                        idxs[d] = m;
                        return x.at(a, idxs[0], idxs[1], idxs[2]);
                    };
                    // Lines sitting on a boundary-normal face carry half
                    // transverse weight, matching the l2 quadrature.
                    double lw = wcell;
                    if (d != a) {
                        idxs[d] = 0;
                        const int along = idxs[a];
                        if (along == 0 || along == g.n()) lw *= 0.5;
                    }
                    if (d == a) {
                        // Samples sit on the walls; plain forward differences
                        // cover the whole interval.
                        for (int m = 0; m + 1 < len; ++m) {
                            const double diff = (val(m + 1) - val(m)) / h;
                            total += diff * diff * lw;
                        }
                    } else {
                        for (int m = 0; m + 1 < len; ++m) {
                            const double diff = (val(m + 1) - val(m)) / h;
                            total += diff * diff * lw;
                        }
                        // Half-cell wall differences against the zero trace.
                        const double d0 = val(0) / (0.5 * h);
                        const double d1 = val(len - 1) / (0.5 * h);
                        total += 0.5 * (d0 * d0 + d1 * d1) * lw;
                    }
                }
            }
        }
    }
    return std::sqrt(total);
}

ScalarField magnitude_at_cells(const VectorField& u) {
    const Grid& g = u.grid();
    ScalarField mag(g);
    for_each_cell(g, [&](int i, int j, int k) {
        double s = 0.0;
        for (int a = 0; a < g.dim(); ++a) {
            const int ih = i + (a == 0 ? 1 : 0);
            const int jh = j + (a == 1 ? 1 : 0);
            const int kh = k + (a == 2 ? 1 : 0);
            const double v = 0.5 * (u.at(a, i, j, k) + u.at(a, ih, jh, kh));
            s += v * v;
        }
        mag.at(i, j, k) = std::sqrt(s);
    });
    return mag;
}

double lp_pow(const VectorField& x, double p) {
    if (p < 1.0) throw parameter_error("lp: p must be >= 1, got " + std::to_string(p));
    const ScalarField mag = magnitude_at_cells(x);
    double s = 0.0;
    for (double v : mag.data()) s += std::pow(v, p);
    return s * cell_weight(x.grid());
}

double lp(const VectorField& x, double p) { return std::pow(lp_pow(x, p), 1.0 / p); }

double linf(const VectorField& x) { return x.max_abs(); }

}  // namespace cbf::fields
