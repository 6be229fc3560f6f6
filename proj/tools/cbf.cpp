/// @file cbf.cpp
/// @brief Command-line batch driver.
///
/// Usage: cbf <mode> --config <path> [--out <dir>] [--seed <u64>]
/// The positional mode must agree with the mode named in the config; --out
/// and --seed override the corresponding config values.  Exit code 0 when
/// every asserted check passes, 2 when a check fails, 1 on any error.

#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "cbf/cli/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Batch driver for the damped flow toolkit"};
    std::string mode, config_path, out_dir;
    std::uint64_t seed = 0;
    app.add_option("mode", mode, "direct | invert | verify-energy | stability | admissibility")
        ->required();
    app.add_option("--config", config_path, "configuration file")->required();
    app.add_option("--out", out_dir, "output directory (overrides the config)");
    CLI::Option* seed_opt = app.add_option("--seed", seed, "seed override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        cbf::cli::RunConfig cfg = cbf::cli::load_config(config_path);
        if (cbf::cli::parse_mode(mode) != cfg.mode)
            throw cbf::config_error("command mode '" + mode + "' does not match config mode '" +
                                        cbf::cli::mode_name(cfg.mode) + "'",
                                    0, "mode");
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (seed_opt->count() > 0) cfg.seed = seed;
        return cbf::cli::run(cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
