/// @file sha256.hpp
/// @brief SHA-256 digest used to fingerprint run configurations.

#pragma once

#include <string>

namespace cbf::cli {

/// Lowercase hex digest (64 characters) of the given bytes.
std::string sha256_hex(const std::string& bytes);

}  // namespace cbf::cli
