/// @file lambda1.cpp
/// @brief Preconditioned inverse iteration for the smallest projected
/// Laplacian eigenvalue.

#include "cbf/inverse/lambda1.hpp"

#include <array>
#include <cmath>
#include <cstdio>

#include "cbf/fields/errors.hpp"
#include "cbf/fields/norms.hpp"
#include "cbf/fields/ops.hpp"
#include "cbf/fields/poisson.hpp"
#include "cbf/fields/projection.hpp"
#include "cbf/fields/rng.hpp"

namespace cbf::inverse {

using fields::axpy;
using fields::dot;
using fields::l2;
using fields::scale;

namespace {

/// Cyclic Jacobi on the leading m x m block of a symmetric 3x3 matrix.
/// Columns of vecs are the eigenvectors; returns the index of the smallest
/// eigenvalue.
int jacobi3(std::array<double, 9>& a, int m, std::array<double, 9>& vecs) {
    vecs = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    auto at = [&](std::array<double, 9>& mat, int i, int j) -> double& { return mat[3 * i + j]; };
    for (int sweep = 0; sweep < 50; ++sweep) {
        double off = 0.0, diag = 0.0;
        for (int i = 0; i < m; ++i) {
            diag += std::abs(at(a, i, i));
            for (int j = i + 1; j < m; ++j) off += std::abs(at(a, i, j));
        }
        if (off <= 1e-15 * (diag + 1e-300)) break;
        for (int p = 0; p < m - 1; ++p) {
            for (int q = p + 1; q < m; ++q) {
                const double apq = at(a, p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double theta = (at(a, q, q) - at(a, p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < 3; ++k) {
                    const double akp = at(a, k, p), akq = at(a, k, q);
                    at(a, k, p) = c * akp - s * akq;
                    at(a, k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < 3; ++k) {
                    const double apk = at(a, p, k), aqk = at(a, q, k);
                    at(a, p, k) = c * apk - s * aqk;
                    at(a, q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < 3; ++k) {
                    const double vkp = at(vecs, k, p), vkq = at(vecs, k, q);
                    at(vecs, k, p) = c * vkp - s * vkq;
                    at(vecs, k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    int best = 0;
    for (int i = 1; i < m; ++i)
        if (at(a, i, i) < at(a, best, best)) best = i;
    return best;
}

}  // namespace

EigenEstimate estimate_lambda1(const Grid& g, double rel_tol, int max_iter, std::uint64_t seed) {
    fields::LerayProjector proj(g);
    fields::VectorLaplacianSolver lap_inv(g);

    auto apply_s = [&](const VectorField& v) {
        VectorField lv = fields::laplacian(v);
        scale(lv, -1.0);
        return proj.apply(lv);
    };
    auto normalize = [](VectorField& v) {
        const double n = l2(v);
        scale(v, 1.0 / n);
        return n;
    };

    fields::Rng rng(seed);
    VectorField x = proj.apply(fields::random_vector(g, rng));
    normalize(x);

    VectorField p_dir(g);
    bool have_p = false;
    double lam = 0.0, lam_prev = -1.0;

    for (int it = 1; it <= max_iter; ++it) {
        VectorField sx = apply_s(x);
        lam = dot(sx, x);
        VectorField r = sx;
        axpy(r, -lam, x);
        const double rnorm = l2(r);
        if (it > 1 && std::abs(lam - lam_prev) <= rel_tol * lam && rnorm <= rel_tol * lam) {
            return EigenEstimate{lam, rnorm, it, std::move(x)};
        }
        lam_prev = lam;

        VectorField w = proj.apply(lap_inv.solve(r));
        if (l2(w) < 1e-300) continue;
        normalize(w);

        // Orthonormal basis {x, w', p'} and the Rayleigh-Ritz matrix on it.
        std::vector<VectorField> basis;
        basis.reserve(3);
        basis.push_back(x);
        axpy(w, -dot(w, x), x);
        if (l2(w) > 1e-7) {
            normalize(w);
            basis.push_back(std::move(w));
        }
        if (have_p) {
            for (const auto& b : basis) axpy(p_dir, -dot(p_dir, b), b);
            if (l2(p_dir) > 1e-7) {
                normalize(p_dir);
                basis.push_back(std::move(p_dir));
            }
        }
        const int m = static_cast<int>(basis.size());
        if (m == 1) continue;

        std::vector<VectorField> sb;
        sb.reserve(m);
        for (const auto& b : basis) sb.push_back(apply_s(b));

        std::array<double, 9> a{};
        for (int i = 0; i < m; ++i) a[3 * i + i] = dot(sb[i], basis[i]);
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                const double v = 0.5 * (dot(sb[i], basis[j]) + dot(sb[j], basis[i]));
                a[3 * i + j] = a[3 * j + i] = v;
            }
        std::array<double, 9> vecs{};
        const int best = jacobi3(a, m, vecs);

        VectorField x_new(g);
        VectorField corr(g);
        for (int i = 0; i < m; ++i) {
            axpy(x_new, vecs[3 * i + best], basis[i]);
            if (i > 0) axpy(corr, vecs[3 * i + best], basis[i]);
        }
        normalize(x_new);
        x = std::move(x_new);
        have_p = l2(corr) > 1e-14;
        if (have_p) {
            normalize(corr);
            p_dir = std::move(corr);
        }
    }

    char msg[128];
    std::snprintf(msg, sizeof msg,
                  "lambda1: no convergence in %d iterations (last estimate %.6g)", max_iter, lam);
    throw cbf::numerical_error(msg, lam, max_iter);
}

}  // namespace cbf::inverse
