/// @file errors.hpp
/// @brief Error hierarchy used across the toolkit.
///
/// Categories follow what callers need to distinguish: structural errors
/// (array shape or grid mismatches), parameter errors (invalid physical or
/// numerical parameters), numerical errors (iteration caps, solver
/// divergence, with residual context), data errors (measured data violating
/// a documented requirement), config errors (file parsing, with line/key
/// context) and io errors.

#pragma once

#include <stdexcept>
#include <string>

namespace cbf {

struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

struct structural_error : error {
    explicit structural_error(const std::string& msg) : error(msg) {}
};

struct parameter_error : error {
    explicit parameter_error(const std::string& msg) : error(msg) {}
};

struct numerical_error : error {
    numerical_error(const std::string& msg, double residual_, int iterations_)
        : error(msg), residual(residual_), iterations(iterations_) {}
    double residual = 0.0;
    int iterations = 0;
};

struct data_error : error {
    explicit data_error(const std::string& msg) : error(msg) {}
};

struct config_error : error {
    config_error(const std::string& msg, int line_, const std::string& key_)
        : error(msg), line(line_), key(key_) {}
    int line = 0;
    std::string key;
};

struct io_error : error {
    explicit io_error(const std::string& msg) : error(msg) {}
};

}  // namespace cbf
