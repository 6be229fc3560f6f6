/// @file rng.hpp
/// @brief Deterministic xorshift64* generator.
///
/// The exact recurrence (documented so results can be reproduced in any
/// language):
///   s ^= s >> 12; s ^= s << 25; s ^= s >> 27;
///   output = s * 2685821657736338717
/// with unsigned 64-bit wrap-around.  A zero seed is replaced by
/// 0x9E3779B97F4A7C15.  uniform() maps the top 53 bits to [0,1);
/// symmetric() maps to [-1,1).

#pragma once

#include <cstdint>

#include "cbf/fields/field.hpp"

namespace cbf::fields {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed ? seed : 0x9E3779B97F4A7C15ull) {}

    std::uint64_t next() {
        s_ ^= s_ >> 12;
        s_ ^= s_ << 25;
        s_ ^= s_ >> 27;
        return s_ * 2685821657736338717ull;
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double symmetric() { return 2.0 * uniform() - 1.0; }

private:
    std::uint64_t s_;
};

/// Fill with symmetric() draws in storage order (cells, x fastest).
ScalarField random_scalar(const Grid& g, Rng& rng);

/// Fill component 0 first, then 1, then 2, each in storage order.  When
/// noslip is true the boundary-normal faces are left at zero (they are
/// skipped, not drawn, so the draw count depends on the flag).
VectorField random_vector(const Grid& g, Rng& rng, bool noslip = true);

}  // namespace cbf::fields
