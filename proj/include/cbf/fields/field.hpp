/// @file field.hpp
/// @brief Cell-centered scalar fields and staggered vector fields.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "cbf/fields/grid.hpp"

namespace cbf::fields {

class ScalarField {
public:
    explicit ScalarField(const Grid& g)
        : grid_(g), data_(static_cast<std::size_t>(g.cells()), 0.0) {}

    const Grid& grid() const { return grid_; }

    double& at(int i, int j, int k = 0) { return data_[index(i, j, k)]; }
    double at(int i, int j, int k = 0) const { return data_[index(i, j, k)]; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    std::size_t index(int i, int j, int k) const {
        const int n = grid_.n();
        return (static_cast<std::size_t>(k) * n + j) * n + i;
    }

    double mean() const {
        double s = 0.0;
        for (double v : data_) s += v;
        return s / static_cast<double>(data_.size());
    }

    void shift(double c) {
        for (double& v : data_) v += c;
    }

    void make_zero_mean() { shift(-mean()); }

    void check_same_grid(const ScalarField& o, const char* what) const {
        if (grid_ != o.grid_)
            throw structural_error(std::string(what) + ": scalar fields live on different grids");
    }

private:
    Grid grid_;
    std::vector<double> data_;
};

class VectorField {
public:
    explicit VectorField(const Grid& g) : grid_(g) {
        for (int a = 0; a < g.dim(); ++a)
            comp_[a].assign(static_cast<std::size_t>(g.faces(a)), 0.0);
    }

    const Grid& grid() const { return grid_; }

    std::vector<double>& comp(int a) { return comp_[a]; }
    const std::vector<double>& comp(int a) const { return comp_[a]; }

    double& at(int a, int i, int j, int k = 0) { return comp_[a][index(a, i, j, k)]; }
    double at(int a, int i, int j, int k = 0) const { return comp_[a][index(a, i, j, k)]; }

    std::size_t index(int a, int i, int j, int k) const {
        const std::size_t ex = static_cast<std::size_t>(grid_.ext(a, 0));
        const std::size_t ey = static_cast<std::size_t>(grid_.ext(a, 1));
        return (static_cast<std::size_t>(k) * ey + j) * ex + i;
    }

    /// Zero out the boundary-normal faces (the discrete no-slip constraint
    /// on the normal trace; tangential no-slip is enforced by the operators
    /// through reflection ghosts).
    void enforce_noslip();

    /// Largest |value| stored on a boundary-normal face.
    double max_boundary_normal() const;

    double max_abs() const {
        double m = 0.0;
        for (int a = 0; a < grid_.dim(); ++a)
            for (double v : comp_[a]) m = std::max(m, std::abs(v));
        return m;
    }

    void check_same_grid(const VectorField& o, const char* what) const {
        if (grid_ != o.grid_)
            throw structural_error(std::string(what) + ": vector fields live on different grids");
    }

private:
    Grid grid_;
    std::array<std::vector<double>, 3> comp_;
};

/// Visit all cells (x fastest).  fn receives (i, j, k); k is 0 in 2D.
template <class F>
inline void for_each_cell(const Grid& g, F&& fn) {
    const int n = g.n();
    const int nz = g.dim() == 3 ? n : 1;
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) fn(i, j, k);
}

/// Visit all faces of component a in storage order.
template <class F>
inline void for_each_face(const Grid& g, int a, F&& fn) {
    const int ex = g.ext(a, 0);
    const int ey = g.ext(a, 1);
    const int ez = g.dim() == 3 ? g.ext(a, 2) : 1;
    for (int k = 0; k < ez; ++k)
        for (int j = 0; j < ey; ++j)
            for (int i = 0; i < ex; ++i) fn(i, j, k);
}

// In-place linear algebra on matching grids.

void scale(ScalarField& x, double a);
void scale(VectorField& x, double a);

/// y += a * x
void axpy(ScalarField& y, double a, const ScalarField& x);
void axpy(VectorField& y, double a, const VectorField& x);

ScalarField operator+(const ScalarField& x, const ScalarField& y);
ScalarField operator-(const ScalarField& x, const ScalarField& y);
VectorField operator+(const VectorField& x, const VectorField& y);
VectorField operator-(const VectorField& x, const VectorField& y);
VectorField operator*(double a, const VectorField& x);
ScalarField operator*(double a, const ScalarField& x);

/// Sample a scalar function at cell centers.  fn receives (x, y, z); z is 0
/// in two dimensions.
ScalarField sample_scalar(const Grid& g, const std::function<double(double, double, double)>& fn);

/// Sample component functions at their face locations.  fn receives
/// (comp, x, y, z).
VectorField sample_vector(const Grid& g,
                          const std::function<double(int, double, double, double)>& fn);

/// Pointwise product f_a(x) * s(x) with s interpolated from cell centers to
/// faces by two-point averaging along the face-normal axis.  At boundary
/// faces the single adjacent cell value is used.
VectorField multiply_center_scalar(const VectorField& f, const ScalarField& s);

/// Pointwise quotient f_a(x) / s(x) with the same interpolation.  Throws
/// data_error when any interpolated |s| falls below floor.
VectorField divide_center_scalar(const VectorField& f, const ScalarField& s, double floor);

/// Restrict a fine-grid field (2n cells) to the coarse grid (n cells).
/// Velocities use the two-point face average that preserves discrete
/// divergence-free fields; scalars average the child cells.
VectorField restrict_vector(const VectorField& fine);
ScalarField restrict_scalar(const ScalarField& fine);

/// Discrete curl of a nodal stream function (two dimensions only):
/// u = d(psi)/dy, v = -d(psi)/dx with psi sampled at grid nodes.  The
/// result is exactly divergence free in the discrete sense and has exact
/// zeros on boundary-normal faces whenever psi is constant on the boundary.
VectorField curl_from_stream(const Grid& g, const std::function<double(double, double)>& psi);

}  // namespace cbf::fields
