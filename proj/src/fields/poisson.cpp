/// @file poisson.cpp
/// @brief Tensor-product eigenbasis solvers and conjugate gradients.

#include "cbf/fields/poisson.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "cbf/fields/errors.hpp"
#include "cbf/fields/norms.hpp"
#include "cbf/fields/ops.hpp"
#include "cbf/fields/parallel.hpp"

namespace cbf::fields {

namespace {

constexpr double kPi = std::numbers::pi;

/// y = M x (transpose = false) or y = M^T x (transpose = true) applied
/// along one axis of a rectangular array with extents e[0..2] (e[2] == 1 in
/// two dimensions).  M is square with the axis extent, row-major, rows are
/// output indices.
void apply_axis(std::vector<double>& data, const int e[3], int axis,
                const std::vector<double>& M, bool transpose) {
    const int len = e[axis];
    const std::int64_t total = static_cast<std::int64_t>(e[0]) * e[1] * e[2];
    const std::int64_t lines = total / len;
    std::int64_t stride = 1;
    for (int d = 0; d < axis; ++d) stride *= e[d];

    parallel_for_chunks(0, lines, [&](std::int64_t lb, std::int64_t le) {
        std::vector<double> in(static_cast<std::size_t>(len));
        std::vector<double> out(static_cast<std::size_t>(len));
        for (std::int64_t line = lb; line < le; ++line) {
            // Decompose the line id into the base offset of its first entry.
            std::int64_t base;
            if (axis == 0) {
                base = line * len;
            } else if (axis == 1) {
                const std::int64_t x = line % e[0];
                const std::int64_t z = line / e[0];
                base = (z * e[1]) * e[0] + x;
            } else {
                base = line;  // stride e[0]*e[1], base enumerates the x-y plane
            }
            for (int m = 0; m < len; ++m) in[m] = data[base + m * stride];
            for (int kk = 0; kk < len; ++kk) {
                double s = 0.0;
                if (!transpose) {
                    const double* row = M.data() + static_cast<std::size_t>(kk) * len;
                    for (int m = 0; m < len; ++m) s += row[m] * in[m];
                } else {
                    for (int m = 0; m < len; ++m)
                        s += M[static_cast<std::size_t>(m) * len + kk] * in[m];
                }
                out[kk] = s;
            }
            for (int m = 0; m < len; ++m) data[base + m * stride] = out[m];
        }
    });
}

}  // namespace

std::vector<double> neumann_cell_basis(int n) {
    std::vector<double> M(static_cast<std::size_t>(n) * n);
    for (int k = 0; k < n; ++k) {
        const double norm = std::sqrt((k == 0 ? 1.0 : 2.0) / n);
        for (int j = 0; j < n; ++j)
            M[static_cast<std::size_t>(k) * n + j] = norm * std::cos(k * kPi * (j + 0.5) / n);
    }
    return M;
}

std::vector<double> dirichlet_cell_basis(int n) {
    std::vector<double> M(static_cast<std::size_t>(n) * n);
    for (int m = 1; m <= n; ++m) {
        const double norm = std::sqrt((m == n ? 1.0 : 2.0) / n);
        for (int j = 0; j < n; ++j)
            M[static_cast<std::size_t>(m - 1) * n + j] = norm * std::sin(m * kPi * (j + 0.5) / n);
    }
    return M;
}

std::vector<double> dirichlet_node_basis(int n) {
    const int sz = n - 1;
    std::vector<double> M(static_cast<std::size_t>(sz) * sz);
    for (int k = 0; k < sz; ++k)
        for (int i = 0; i < sz; ++i)
            M[static_cast<std::size_t>(k) * sz + i] =
                std::sqrt(2.0 / n) * std::sin((k + 1) * (i + 1) * kPi / n);
    return M;
}

std::vector<double> neumann_cell_eigs(int n, double h) {
    std::vector<double> e(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) e[k] = (2.0 - 2.0 * std::cos(k * kPi / n)) / (h * h);
    return e;
}

std::vector<double> dirichlet_cell_eigs(int n, double h) {
    std::vector<double> e(static_cast<std::size_t>(n));
    for (int m = 1; m <= n; ++m) e[m - 1] = (2.0 - 2.0 * std::cos(m * kPi / n)) / (h * h);
    return e;
}

std::vector<double> dirichlet_node_eigs(int n, double h) {
    std::vector<double> e(static_cast<std::size_t>(n - 1));
    for (int k = 1; k < n; ++k) e[k - 1] = (2.0 - 2.0 * std::cos(k * kPi / n)) / (h * h);
    return e;
}

int conjugate_gradient(const std::function<void(const std::vector<double>&, std::vector<double>&)>& apply,
                       const std::vector<double>& b, std::vector<double>& x, double rel_tol,
                       double abs_floor, int max_iter, const char* label) {
    const std::size_t sz = b.size();
    auto dot_seq = [](const std::vector<double>& p, const std::vector<double>& q) {
        double s = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * q[i];
        return s;
    };
    std::vector<double> r(sz), p(sz), ap(sz);
    apply(x, ap);
    for (std::size_t i = 0; i < sz; ++i) r[i] = b[i] - ap[i];
    p = r;
    double rr = dot_seq(r, r);
    const double bnorm = std::sqrt(dot_seq(b, b));
    const double target = rel_tol * std::max(bnorm, abs_floor);
    int it = 0;
    while (std::sqrt(rr) > target) {
        if (it >= max_iter)
            throw numerical_error(std::string(label) + ": conjugate gradients hit max_iter = " +
                                      std::to_string(max_iter) + " with residual " +
                                      std::to_string(std::sqrt(rr)),
                                  std::sqrt(rr), it);
        apply(p, ap);
        const double pap = dot_seq(p, ap);
        if (pap <= 0.0)
            throw numerical_error(std::string(label) + ": operator lost positivity in cg",
                                  std::sqrt(rr), it);
        const double alpha = rr / pap;
        for (std::size_t i = 0; i < sz; ++i) x[i] += alpha * p[i];
        for (std::size_t i = 0; i < sz; ++i) r[i] -= alpha * ap[i];
        const double rr_new = dot_seq(r, r);
        const double beta = rr_new / rr;
        rr = rr_new;
        for (std::size_t i = 0; i < sz; ++i) p[i] = r[i] + beta * p[i];
        ++it;
    }
    return it;
}

PoissonSolver::PoissonSolver(const Grid& g, PoissonMethod method, double rel_tol,
                             double abs_floor)
    : grid_(g), method_(method), rel_tol_(rel_tol), abs_floor_(abs_floor) {
    if (method_ == PoissonMethod::fast) {
        basis_ = neumann_cell_basis(g.n());
        eig_ = neumann_cell_eigs(g.n(), g.h());
    }
}

ScalarField PoissonSolver::apply_neumann_laplacian(const ScalarField& q) {
    const Grid& g = q.grid();
    const double h2 = g.h() * g.h();
    const int n = g.n();
    ScalarField out(g);
    for_each_cell(g, [&](int i, int j, int k) {
        const int coord[3] = {i, j, k};
        const double c = q.at(i, j, k);
        double acc = 0.0;
        for (int d = 0; d < g.dim(); ++d) {
            int lo[3] = {i, j, k};
            int hi[3] = {i, j, k};
            lo[d] = coord[d] - 1;
            hi[d] = coord[d] + 1;
            // Mirror ghosts (zero flux through the walls).
            const double vlo = (coord[d] == 0) ? c : q.at(lo[0], lo[1], lo[2]);
            const double vhi = (coord[d] == n - 1) ? c : q.at(hi[0], hi[1], hi[2]);
            acc += (vlo - 2.0 * c + vhi) / h2;
        }
        out.at(i, j, k) = acc;
    });
    return out;
}

PoissonResult PoissonSolver::solve(const ScalarField& rhs) const {
    if (rhs.grid() != grid_)
        throw structural_error("poisson solve: rhs grid does not match the solver grid");
    const int n = grid_.n();
    const int dim = grid_.dim();
    ScalarField b = rhs;
    const double mean = b.mean();
    b.shift(-mean);

    PoissonResult res{ScalarField(grid_), 0.0, mean, 0};

    if (method_ == PoissonMethod::fast) {
        const int e[3] = {n, n, dim == 3 ? n : 1};
        ScalarField work = b;
        std::vector<double>& d = work.data();
        for (int axis = 0; axis < dim; ++axis) apply_axis(d, e, axis, basis_, false);
        // Divide by the (negative definite) Laplacian eigenvalues; the
        // all-zero mode is the removed mean.
        const int nz = dim == 3 ? n : 1;
        for (int k = 0; k < nz; ++k)
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) {
                    const std::size_t idx = (static_cast<std::size_t>(k) * n + j) * n + i;
                    const double lam = eig_[i] + eig_[j] + (dim == 3 ? eig_[k] : 0.0);
                    d[idx] = (lam == 0.0) ? 0.0 : -d[idx] / lam;
                }
        for (int axis = 0; axis < dim; ++axis) apply_axis(d, e, axis, basis_, true);
        res.q = work;
    } else {
        std::vector<double> x(b.data().size(), 0.0);
        std::vector<double> negb(b.data());
        for (double& v : negb) v = -v;
        ScalarField tmp(grid_);
        auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
            tmp.data() = in;
            ScalarField lap = apply_neumann_laplacian(tmp);
            out = lap.data();
            for (double& v : out) v = -v;
        };
        res.iterations = conjugate_gradient(apply, negb, x, 1e-12, 1e-300, 20000, "poisson");
        res.q.data() = x;
    }

    res.q.make_zero_mean();
    ScalarField check = apply_neumann_laplacian(res.q);
    axpy(check, -1.0, b);
    res.residual = l2(check);
    const double thr = std::max(rel_tol_ * l2(b), abs_floor_);
    if (res.residual > thr) {
        char msg[128];
        std::snprintf(msg, sizeof msg, "poisson solve residual %.3e exceeds tolerance %.3e",
                      res.residual, thr);
        throw numerical_error(msg, res.residual, res.iterations);
    }
    return res;
}

VectorLaplacianSolver::VectorLaplacianSolver(const Grid& g, double rel_tol, double abs_floor)
    : grid_(g), rel_tol_(rel_tol), abs_floor_(abs_floor) {
    node_basis_ = dirichlet_node_basis(g.n());
    node_eig_ = dirichlet_node_eigs(g.n(), g.h());
    cell_basis_ = dirichlet_cell_basis(g.n());
    cell_eig_ = dirichlet_cell_eigs(g.n(), g.h());
}

VectorField VectorLaplacianSolver::solve(const VectorField& rhs) const {
    if (rhs.grid() != grid_)
        throw structural_error("vector laplacian solve: rhs grid does not match");
    const int n = grid_.n();
    const int dim = grid_.dim();
    VectorField out(grid_);
    for (int a = 0; a < dim; ++a) {
        // Pack the interior slice (drop the two wall layers along axis a).
        int e[3] = {n, n, dim == 3 ? n : 1};
        e[a] = n - 1;
        std::vector<double> buf(static_cast<std::size_t>(e[0]) * e[1] * e[2]);
        std::size_t idx = 0;
        const int nz = e[2];
        for (int k = 0; k < nz; ++k)
            for (int j = 0; j < e[1]; ++j)
                for (int i = 0; i < e[0]; ++i) {
                    int c3[3] = {i, j, k};
                    c3[a] += 1;
                    buf[idx++] = rhs.at(a, c3[0], c3[1], c3[2]);
                }
        for (int axis = 0; axis < dim; ++axis)
            apply_axis(buf, e, axis, axis == a ? node_basis_ : cell_basis_, false);
        idx = 0;
        for (int k = 0; k < nz; ++k)
            for (int j = 0; j < e[1]; ++j)
                for (int i = 0; i < e[0]; ++i) {
                    const int m3[3] = {i, j, k};
                    double lam = 0.0;
                    for (int axis = 0; axis < dim; ++axis)
                        lam += (axis == a ? node_eig_[m3[axis]] : cell_eig_[m3[axis]]);
                    buf[idx++] /= lam;
                }
        for (int axis = 0; axis < dim; ++axis)
            apply_axis(buf, e, axis, axis == a ? node_basis_ : cell_basis_, true);
        idx = 0;
        for (int k = 0; k < nz; ++k)
            for (int j = 0; j < e[1]; ++j)
                for (int i = 0; i < e[0]; ++i) {
                    int c3[3] = {i, j, k};
                    c3[a] += 1;
                    out.at(a, c3[0], c3[1], c3[2]) = buf[idx++];
                }
    }
    // Residual check against the stencil, ignoring constrained wall entries.
    VectorField rhs_interior = rhs;
    rhs_interior.enforce_noslip();
    VectorField check = laplacian(out);
    scale(check, -1.0);
    axpy(check, -1.0, rhs_interior);
    const double resid = l2(check);
    const double thr = std::max(rel_tol_ * l2(rhs_interior), abs_floor_);
    if (resid > thr) {
        char msg[128];
        std::snprintf(msg, sizeof msg, "vector laplacian residual %.3e exceeds tolerance %.3e",
                      resid, thr);
        throw numerical_error(msg, resid, 0);
    }
    return out;
}

}  // namespace cbf::fields
