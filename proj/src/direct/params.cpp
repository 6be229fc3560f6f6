/// @file params.cpp
/// @brief Parameter validation.

#include "cbf/direct/params.hpp"

#include <string>

namespace cbf::direct {

void Params::validate(int dim) const {
    if (dim != 2 && dim != 3)
        throw cbf::parameter_error("dim must be 2 or 3, got " + std::to_string(dim));
    if (!(mu > 0.0)) throw cbf::parameter_error("mu must be > 0");
    if (!(alpha > 0.0)) throw cbf::parameter_error("alpha must be > 0");
    if (!(beta > 0.0)) throw cbf::parameter_error("beta must be > 0");
    if (!(r >= 1.0)) throw cbf::parameter_error("r must be >= 1");
    if (dim == 3) {
        if (!(r >= 3.0)) throw cbf::parameter_error("3D requires r >= 3");
        if (r == 3.0 && !(2.0 * beta * mu >= 1.0))
            throw cbf::parameter_error("3D with r = 3 requires 2 beta mu >= 1");
    }
    if (!(T > 0.0)) throw cbf::parameter_error("T must be > 0");
    if (!(dt > 0.0)) throw cbf::parameter_error("dt must be > 0");
    if (dt > T) throw cbf::parameter_error("dt must not exceed T");
}

}  // namespace cbf::direct
