/// @file io.hpp
/// @brief Binary field format (CBF1).
///
/// Layout, all little-endian:
///   bytes 0..3   magic "CBF1"
///   byte  4      dim (2 or 3)
///   byte  5      kind (0 scalar, 1 vector)
///   bytes 6..9   n as uint32
///   then float64 payload in storage order (x fastest, z slowest):
///     scalar: n^dim values,
///     vector: components in order, component a with extent n+1 along
///             axis a and n along the others.

#pragma once

#include <string>

#include "cbf/fields/field.hpp"

namespace cbf::fields {

void write_field(const std::string& path, const ScalarField& s);
void write_field(const std::string& path, const VectorField& u);

ScalarField read_scalar(const std::string& path);
VectorField read_vector(const std::string& path);

}  // namespace cbf::fields
