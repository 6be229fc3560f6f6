/// @file rng.cpp
/// @brief Field sampling from the deterministic generator.

#include "cbf/fields/rng.hpp"

namespace cbf::fields {

ScalarField random_scalar(const Grid& g, Rng& rng) {
    ScalarField s(g);
    for (double& v : s.data()) v = rng.symmetric();
    return s;
}

VectorField random_vector(const Grid& g, Rng& rng, bool noslip) {
    VectorField u(g);
    const int last = g.n();
    for (int a = 0; a < g.dim(); ++a) {
        std::size_t idx = 0;
        auto& c = u.comp(a);
        for_each_face(g, a, [&](int i, int j, int k) {
            const int along = (a == 0 ? i : a == 1 ? j : k);
            if (noslip && (along == 0 || along == last)) {
                c[idx++] = 0.0;
            } else {
                c[idx++] = rng.symmetric();
            }
        });
    }
    return u;
}

}  // namespace cbf::fields
