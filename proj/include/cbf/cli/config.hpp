/// @file config.hpp
/// @brief Run configuration: flat key = value text with [section] headers.
///
/// Sections and keys (defaults in parentheses):
///   [run]     mode (required: direct | invert | verify-energy | stability |
///             admissibility), seed (0x5eed), out ("out")
///   [grid]    dim (2), n (32)
///   [params]  mu, alpha, beta, r, T, dt (model defaults)
///   [solver]  cfl (0.5), snapshot_stride (0 = auto), record_ut (true),
///             helmholtz_tol (1e-12), helmholtz_max_iter (20000)
///   [source]  case (zero | random | decaying-vortex | steady-state |
///             separable-source; "zero"), amplitude (0.35),
///             u0_amplitude (0.2), mms_amplitude (0.1),
///             modulation (linear | constant; "linear", zero/random only)
///   [invert]  data (synthetic | files; "synthetic"), refine (2),
///             tol (1e-8), max_iter (30), omega (1.0), lambda1 (0 =
///             estimate), override_admissibility (false),
///             rescale_to_ball (false), g_floor (1.0), phi_path,
///             grad_psi_path, u0_path (files route)
///   [stability] deltas ("1e-2,5e-3,2.5e-3"), target (modulation |
///             initial; "modulation"), tol (1e-10), max_iter (30)
///   [admissibility] phi_l4 (0), phi_path (overrides phi_l4),
///             lambda1 (0 = estimate)
///   [energy]  tol_scale (1e-6)
///
/// Lines are `key = value`, `[section]`, blank, or `#` comments.  Unknown
/// sections and keys are rejected naming the offender; so are duplicate
/// keys, malformed values, and out-of-range knobs, all with the line
/// number.  Parameter constraints are checked through the model's own
/// validation, so its messages surface verbatim at load time.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cbf/direct/params.hpp"

namespace cbf::cli {

enum class Mode { direct, invert, verify_energy, stability, admissibility };

/// The hyphenated command-line spelling ("verify-energy").
std::string mode_name(Mode m);

/// Throws config_error for anything but the five spellings.
Mode parse_mode(const std::string& name, int line = 0);

struct SourceSpec {
    std::string case_id = "zero";
    double amplitude = 0.35;
    double u0_amplitude = 0.2;
    double mms_amplitude = 0.1;
    std::string modulation = "linear";
};

struct SolverSpec {
    double cfl = 0.5;
    int snapshot_stride = 0;
    bool record_ut = true;
    double helmholtz_tol = 1e-12;
    int helmholtz_max_iter = 20000;
};

struct InvertSpec {
    std::string data = "synthetic";
    int refine = 2;
    double tol = 1e-8;
    int max_iter = 30;
    double omega = 1.0;
    double lambda1 = 0.0;
    bool override_admissibility = false;
    bool rescale_to_ball = false;
    double g_floor = 1.0;
    std::string phi_path;
    std::string grad_psi_path;
    std::string u0_path;
};

struct StabilitySpec {
    std::vector<double> deltas = {1e-2, 5e-3, 2.5e-3};
    std::string target = "modulation";
    double tol = 1e-10;
    int max_iter = 30;
};

struct AdmissibilitySpec {
    double phi_l4 = 0.0;
    std::string phi_path;
    double lambda1 = 0.0;
};

struct EnergySpec {
    double tol_scale = 1e-6;
};

struct RunConfig {
    Mode mode = Mode::direct;
    int dim = 2;
    int n = 32;
    direct::Params params;
    SolverSpec solver;
    SourceSpec source;
    InvertSpec invert;
    StabilitySpec stability;
    AdmissibilitySpec admissibility;
    EnergySpec energy;
    std::uint64_t seed = 0x5eed;
    std::string out_dir = "out";
    std::string text;  ///< the raw configuration text, hashed into the manifest
};

/// Parse and validate.  Throws config_error (schema) or parameter_error
/// (model constraints).  Referenced input files must exist.
RunConfig parse_config(const std::string& text);

/// Reads the file and parses it; io_error when unreadable.
RunConfig load_config(const std::string& path);

}  // namespace cbf::cli
