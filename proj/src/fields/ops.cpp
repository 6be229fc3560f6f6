/// @file ops.cpp
/// @brief Staggered-grid operators: divergence, gradient, Laplacian,
/// skew-symmetric advection and the damping nonlinearity.

#include "cbf/fields/ops.hpp"

#include <cmath>

#include "cbf/fields/errors.hpp"

namespace cbf::fields {

ScalarField divergence(const VectorField& u) {
    const Grid& g = u.grid();
    const double h = g.h();
    ScalarField out(g);
    for_each_cell(g, [&](int i, int j, int k) {
        double s = 0.0;
        for (int a = 0; a < g.dim(); ++a) {
            const int ih = i + (a == 0 ? 1 : 0);
            const int jh = j + (a == 1 ? 1 : 0);
            const int kh = k + (a == 2 ? 1 : 0);
            s += (u.at(a, ih, jh, kh) - u.at(a, i, j, k)) / h;
        }
        out.at(i, j, k) = s;
    });
    return out;
}

VectorField gradient(const ScalarField& s) {
    const Grid& g = s.grid();
    const double h = g.h();
    const int n = g.n();
    VectorField out(g);
    for (int a = 0; a < g.dim(); ++a) {
        for_each_face(g, a, [&](int i, int j, int k) {
            const int along = (a == 0 ? i : a == 1 ? j : k);
            if (along == 0 || along == n) return;  // constrained faces stay zero
            const int il = i - (a == 0 ? 1 : 0);
            const int jl = j - (a == 1 ? 1 : 0);
            const int kl = k - (a == 2 ? 1 : 0);
            out.at(a, i, j, k) = (s.at(i, j, k) - s.at(il, jl, kl)) / h;
        });
    }
    return out;
}

VectorField laplacian(const VectorField& u) {
    const Grid& g = u.grid();
    const double h2 = g.h() * g.h();
    const int n = g.n();
    const int dim = g.dim();
    VectorField out(g);
    for (int a = 0; a < dim; ++a) {
        for_each_face(g, a, [&](int i, int j, int k) {
            const int coord[3] = {i, j, k};
            if (coord[a] == 0 || coord[a] == n) return;
            const double c = u.at(a, i, j, k);
            double acc = 0.0;
            for (int d = 0; d < dim; ++d) {
                const int len = g.ext(a, d);
                const int m = coord[d];
                int lo[3] = {i, j, k};
                int hi[3] = {i, j, k};
                lo[d] = m - 1;
                hi[d] = m + 1;
                double vlo, vhi;
                if (d == a) {
                    // Wall values are stored (Dirichlet data).
                    vlo = u.at(a, lo[0], lo[1], lo[2]);
                    vhi = u.at(a, hi[0], hi[1], hi[2]);
                } else {
                    // Reflection ghosts realise the zero tangential trace.
                    vlo = (m == 0) ? -c : u.at(a, lo[0], lo[1], lo[2]);
                    vhi = (m == len - 1) ? -c : u.at(a, hi[0], hi[1], hi[2]);
                }
                acc += (vlo - 2.0 * c + vhi) / h2;
            }
            out.at(a, i, j, k) = acc;
        });
    }
    return out;
}

VectorField advect(const VectorField& u, const VectorField& w) {
    u.check_same_grid(w, "advect");
    const Grid& g = u.grid();
    const double h = g.h();
    const int n = g.n();
    const int dim = g.dim();
    VectorField out(g);
    for (int a = 0; a < dim; ++a) {
        for_each_face(g, a, [&](int i, int j, int k) {
            const int coord[3] = {i, j, k};
            if (coord[a] == 0 || coord[a] == n) return;
            double acc = 0.0;
            for (int d = 0; d < dim; ++d) {
                double um, up, wm, wp;
                if (d == a) {
                    // Control-volume faces at the two neighbouring cell
                    // centers; transport velocity is the two-point average
                    // of the component's own faces.
                    int lo[3] = {i, j, k};
                    int hi[3] = {i, j, k};
                    lo[a] = coord[a] - 1;
                    hi[a] = coord[a] + 1;
                    const double c = u.at(a, i, j, k);
                    um = 0.5 * (u.at(a, lo[0], lo[1], lo[2]) + c);
                    up = 0.5 * (c + u.at(a, hi[0], hi[1], hi[2]));
                    wm = w.at(a, lo[0], lo[1], lo[2]);
                    wp = w.at(a, hi[0], hi[1], hi[2]);
                } else {
                    // Control-volume faces at the two edges along axis d;
                    // transport velocity is component d averaged along a.
                    // Our face's cell index along d:
                    const int id = coord[d];
                    // u_d arrays index axis d by face, axis a by cell.
                    auto ud_at = [&](int dface, int acell) {
                        int c3[3] = {i, j, k};
                        c3[d] = dface;
                        c3[a] = acell;
                        return u.at(d, c3[0], c3[1], c3[2]);
                    };
                    const int ac = coord[a];
                    um = 0.5 * (ud_at(id, ac - 1) + ud_at(id, ac));
                    up = 0.5 * (ud_at(id + 1, ac - 1) + ud_at(id + 1, ac));
                    // Neighbouring w values along d; outside samples are the
                    // zero extension.
                    auto w_at = [&](int m) -> double {
                        if (m < 0 || m >= g.ext(a, d)) return 0.0;
                        int c3[3] = {i, j, k};
                        c3[d] = m;
                        return w.at(a, c3[0], c3[1], c3[2]);
                    };
                    wm = w_at(id - 1);
                    wp = w_at(id + 1);
                }
                acc += (up * wp - um * wm) / (2.0 * h);
            }
            out.at(a, i, j, k) = acc;
        });
    }
    return out;
}

std::vector<double> face_magnitude(const VectorField& u, int a) {
    const Grid& g = u.grid();
    const int n = g.n();
    const int dim = g.dim();
    std::vector<double> mag(static_cast<std::size_t>(g.faces(a)));
    std::size_t idx = 0;
    for_each_face(g, a, [&](int i, int j, int k) {
        const int coord[3] = {i, j, k};
        const double own = u.at(a, i, j, k);
        double s = own * own;
        for (int b = 0; b < dim; ++b) {
            if (b == a) continue;
            // Average component b onto this face: two faces along b times
            // two cells along a (clamped at walls).
            const int s0 = std::max(coord[a] - 1, 0);
            const int s1 = std::min(coord[a], n - 1);
            auto ub_at = [&](int bface, int acell) {
                int c3[3] = {i, j, k};
                c3[b] = bface;
                c3[a] = acell;
                return u.at(b, c3[0], c3[1], c3[2]);
            };
            const int ib = coord[b];
            const double avg = 0.25 * (ub_at(ib, s0) + ub_at(ib, s1) + ub_at(ib + 1, s0) +
                                       ub_at(ib + 1, s1));
            s += avg * avg;
        }
        mag[idx++] = std::sqrt(s);
    });
    return mag;
}

VectorField damping(const VectorField& u, double r, double beta, double alpha) {
    if (r < 1.0)
        throw parameter_error("damping: r must be >= 1, got " + std::to_string(r));
    const Grid& g = u.grid();
    VectorField out(g);
    for (int a = 0; a < g.dim(); ++a) {
        const std::vector<double> mag = face_magnitude(u, a);
        const auto& uc = u.comp(a);
        auto& oc = out.comp(a);
        for (std::size_t idx = 0; idx < uc.size(); ++idx) {
            double factor;
            if (r == 1.0)
                factor = 1.0;
            else if (r == 3.0)
                factor = mag[idx] * mag[idx];
            else
                factor = std::pow(mag[idx], r - 1.0);
            oc[idx] = alpha * uc[idx] + beta * factor * uc[idx];
        }
    }
    return out;
}

}  // namespace cbf::fields
