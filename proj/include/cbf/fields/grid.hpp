/// @file grid.hpp
/// @brief Uniform staggered (MAC) grid on the unit square / cube.
///
/// Conventions used everywhere in the toolkit:
///   - the domain is (0,1)^dim with n cells per axis and spacing h = 1/n,
///   - scalars (pressure, g) live at cell centers x_c = (i+1/2) h,
///   - velocity component a lives at faces normal to axis a, so its array
///     has extent n+1 along axis a and n along the other axes,
///   - linear storage is row-major with x fastest: index = (k*ey + j)*ex + i.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include "cbf/fields/errors.hpp"

namespace cbf::fields {

class Grid {
public:
    Grid(int dim, int n) : dim_(dim), n_(n) {
        if (dim != 2 && dim != 3)
            throw parameter_error("grid dim must be 2 or 3, got " + std::to_string(dim));
        if (n < 8)
            throw parameter_error("grid n must be at least 8, got " + std::to_string(n));
        h_ = pick_spacing(n);
    }

    int dim() const { return dim_; }
    int n() const { return n_; }
    double h() const { return h_; }

    /// Extent of the component-a face array along axis d.
    int ext(int comp, int axis) const { return n_ + (comp == axis ? 1 : 0); }

    std::int64_t cells() const {
        std::int64_t c = 1;
        for (int d = 0; d < dim_; ++d) c *= n_;
        return c;
    }

    std::int64_t faces(int comp) const {
        std::int64_t c = 1;
        for (int d = 0; d < dim_; ++d) c *= ext(comp, d);
        return c;
    }

    bool operator==(const Grid& o) const { return dim_ == o.dim_ && n_ == o.n_; }
    bool operator!=(const Grid& o) const { return !(*this == o); }

private:
    /// h must satisfy h * n == 1.0 exactly in double arithmetic.  1.0/n
    /// already does for every n that is not a power-of-two multiple of a
    /// problematic mantissa, and the nextafter candidates cover the rest.
    static double pick_spacing(int n) {
        const double c0 = 1.0 / n;
        for (double c : {c0, std::nextafter(c0, 2.0), std::nextafter(c0, 0.0)}) {
            if (c * n == 1.0) return c;
        }
        throw parameter_error("no double spacing h with h*n == 1 for n = " + std::to_string(n));
    }

    int dim_;
    int n_;
    double h_;
};

}  // namespace cbf::fields
