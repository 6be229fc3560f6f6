/// @file field.cpp
/// @brief Field storage, algebra, sampling and grid transfer.

#include "cbf/fields/field.hpp"

namespace cbf::fields {

void VectorField::enforce_noslip() {
    const Grid& g = grid_;
    for (int a = 0; a < g.dim(); ++a) {
        const int last = g.n();
        for_each_face(g, a, [&](int i, int j, int k) {
            const int along = (a == 0 ? i : a == 1 ? j : k);
            if (along == 0 || along == last) at(a, i, j, k) = 0.0;
        });
    }
}

double VectorField::max_boundary_normal() const {
    const Grid& g = grid_;
    double m = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
        const int last = g.n();
        for_each_face(g, a, [&](int i, int j, int k) {
            const int along = (a == 0 ? i : a == 1 ? j : k);
            if (along == 0 || along == last)
                m = std::max(m, std::abs(at(a, i, j, k)));
        });
    }
    return m;
}

void scale(ScalarField& x, double a) {
    for (double& v : x.data()) v *= a;
}

void scale(VectorField& x, double a) {
    for (int c = 0; c < x.grid().dim(); ++c)
        for (double& v : x.comp(c)) v *= a;
}

void axpy(ScalarField& y, double a, const ScalarField& x) {
    y.check_same_grid(x, "axpy");
    const auto& xs = x.data();
    auto& ys = y.data();
    for (std::size_t i = 0; i < ys.size(); ++i) ys[i] += a * xs[i];
}

void axpy(VectorField& y, double a, const VectorField& x) {
    y.check_same_grid(x, "axpy");
    for (int c = 0; c < y.grid().dim(); ++c) {
        const auto& xs = x.comp(c);
        auto& ys = y.comp(c);
        for (std::size_t i = 0; i < ys.size(); ++i) ys[i] += a * xs[i];
    }
}

ScalarField operator+(const ScalarField& x, const ScalarField& y) {
    ScalarField out = x;
    axpy(out, 1.0, y);
    return out;
}

ScalarField operator-(const ScalarField& x, const ScalarField& y) {
    ScalarField out = x;
    axpy(out, -1.0, y);
    return out;
}

VectorField operator+(const VectorField& x, const VectorField& y) {
    VectorField out = x;
    axpy(out, 1.0, y);
    return out;
}

VectorField operator-(const VectorField& x, const VectorField& y) {
    VectorField out = x;
    axpy(out, -1.0, y);
    return out;
}

VectorField operator*(double a, const VectorField& x) {
    VectorField out = x;
    scale(out, a);
    return out;
}

ScalarField operator*(double a, const ScalarField& x) {
    ScalarField out = x;
    scale(out, a);
    return out;
}

ScalarField sample_scalar(const Grid& g, const std::function<double(double, double, double)>& fn) {
    ScalarField s(g);
    const double h = g.h();
    for_each_cell(g, [&](int i, int j, int k) {
        const double x = (i + 0.5) * h;
        const double y = (j + 0.5) * h;
        const double z = g.dim() == 3 ? (k + 0.5) * h : 0.0;
        s.at(i, j, k) = fn(x, y, z);
    });
    return s;
}

VectorField sample_vector(const Grid& g,
                          const std::function<double(int, double, double, double)>& fn) {
    VectorField u(g);
    const double h = g.h();
    for (int a = 0; a < g.dim(); ++a) {
        for_each_face(g, a, [&](int i, int j, int k) {
            const double x = (a == 0 ? i : i + 0.5) * h;
            const double y = (a == 1 ? j : j + 0.5) * h;
            const double z = g.dim() == 3 ? (a == 2 ? k : k + 0.5) * h : 0.0;
            u.at(a, i, j, k) = fn(a, x, y, z);
        });
    }
    return u;
}

namespace {

/// Average a cell scalar onto the faces of component a; boundary faces use
/// the single adjacent cell.
double cell_to_face(const ScalarField& s, int a, int i, int j, int k, int n) {
    int il = i, jl = j, kl = k;
    int ih = i, jh = j, kh = k;
    if (a == 0) {
        il = std::max(i - 1, 0);
        ih = std::min(i, n - 1);
    } else if (a == 1) {
        jl = std::max(j - 1, 0);
        jh = std::min(j, n - 1);
    } else {
        kl = std::max(k - 1, 0);
        kh = std::min(k, n - 1);
    }
    return 0.5 * (s.at(il, jl, kl) + s.at(ih, jh, kh));
}

}  // namespace

VectorField multiply_center_scalar(const VectorField& f, const ScalarField& s) {
    if (f.grid() != s.grid())
        throw structural_error("multiply_center_scalar: fields live on different grids");
    const Grid& g = f.grid();
    VectorField out(g);
    const int n = g.n();
    for (int a = 0; a < g.dim(); ++a) {
        for_each_face(g, a, [&](int i, int j, int k) {
            out.at(a, i, j, k) = f.at(a, i, j, k) * cell_to_face(s, a, i, j, k, n);
        });
    }
    return out;
}

VectorField divide_center_scalar(const VectorField& f, const ScalarField& s, double floor) {
    if (f.grid() != s.grid())
        throw structural_error("divide_center_scalar: fields live on different grids");
    const Grid& g = f.grid();
    VectorField out(g);
    const int n = g.n();
    for (int a = 0; a < g.dim(); ++a) {
        for_each_face(g, a, [&](int i, int j, int k) {
            const double v = cell_to_face(s, a, i, j, k, n);
            if (std::abs(v) < floor)
                throw data_error("divide_center_scalar: refuses to divide, interpolated |g| = " +
                                 std::to_string(std::abs(v)) + " below floor " +
                                 std::to_string(floor));
            out.at(a, i, j, k) = f.at(a, i, j, k) / v;
        });
    }
    return out;
}

VectorField restrict_vector(const VectorField& fine) {
    const Grid& gf = fine.grid();
    if (gf.n() % 2 != 0)
        throw structural_error("restrict_vector: fine grid n must be even");
    const Grid gc(gf.dim(), gf.n() / 2);
    VectorField out(gc);
    // Coarse face (a, I) sits on the fine face (a, 2I); average the fine
    // faces across the coarse face's transverse extent.  This preserves
    // face fluxes, so discrete divergence-free fields stay divergence free.
    for (int a = 0; a < gc.dim(); ++a) {
        for_each_face(gc, a, [&](int I, int J, int K) {
            double sum = 0.0;
            int count = 0;
            if (gc.dim() == 2) {
                if (a == 0) {
                    sum = fine.at(0, 2 * I, 2 * J) + fine.at(0, 2 * I, 2 * J + 1);
                } else {
                    sum = fine.at(1, 2 * I, 2 * J) + fine.at(1, 2 * I + 1, 2 * J);
                }
                count = 2;
            } else {
                if (a == 0) {
                    for (int dj = 0; dj < 2; ++dj)
                        for (int dk = 0; dk < 2; ++dk)
                            sum += fine.at(0, 2 * I, 2 * J + dj, 2 * K + dk);
                } else if (a == 1) {
                    for (int di = 0; di < 2; ++di)
                        for (int dk = 0; dk < 2; ++dk)
                            sum += fine.at(1, 2 * I + di, 2 * J, 2 * K + dk);
                } else {
                    for (int di = 0; di < 2; ++di)
                        for (int dj = 0; dj < 2; ++dj)
                            sum += fine.at(2, 2 * I + di, 2 * J + dj, 2 * K);
                }
                count = 4;
            }
            out.at(a, I, J, K) = sum / count;
        });
    }
    return out;
}

ScalarField restrict_scalar(const ScalarField& fine) {
    const Grid& gf = fine.grid();
    if (gf.n() % 2 != 0)
        throw structural_error("restrict_scalar: fine grid n must be even");
    const Grid gc(gf.dim(), gf.n() / 2);
    ScalarField out(gc);
    for_each_cell(gc, [&](int I, int J, int K) {
        double sum = 0.0;
        if (gc.dim() == 2) {
            for (int di = 0; di < 2; ++di)
                for (int dj = 0; dj < 2; ++dj) sum += fine.at(2 * I + di, 2 * J + dj);
            sum /= 4.0;
        } else {
            for (int di = 0; di < 2; ++di)
                for (int dj = 0; dj < 2; ++dj)
                    for (int dk = 0; dk < 2; ++dk)
                        sum += fine.at(2 * I + di, 2 * J + dj, 2 * K + dk);
            sum /= 8.0;
        }
        out.at(I, J, K) = sum;
    });
    return out;
}

VectorField curl_from_stream(const Grid& g, const std::function<double(double, double)>& psi) {
    if (g.dim() != 2)
        throw structural_error("curl_from_stream is two-dimensional only");
    const int n = g.n();
    const double h = g.h();
    // psi at nodes (i, j) = (i h, j h), i, j = 0..n.
    std::vector<double> nodal(static_cast<std::size_t>(n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            nodal[static_cast<std::size_t>(j) * (n + 1) + i] = psi(i * h, j * h);
    auto node = [&](int i, int j) { return nodal[static_cast<std::size_t>(j) * (n + 1) + i]; };
    VectorField u(g);
    // u = (psi(i, j+1) - psi(i, j)) / h on x-faces, v = -(psi(i+1, j) - psi(i, j)) / h
    // on y-faces; the discrete divergence telescopes to zero exactly.
    for (int j = 0; j < n; ++j)
        for (int i = 0; i <= n; ++i) u.at(0, i, j) = (node(i, j + 1) - node(i, j)) / h;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i < n; ++i) u.at(1, i, j) = -(node(i + 1, j) - node(i, j)) / h;
    // Snap the boundary-normal faces; for a stream function constant on the
    // boundary this removes only roundoff (for example sin(pi * 1.0) is not
    // an exact floating-point zero) and leaves the divergence at roundoff.
    u.enforce_noslip();
    return u;
}

}  // namespace cbf::fields
