/// @file runner.hpp
/// @brief Batch execution of one configured job.
///
/// run() dispatches on the configured mode, writes every artifact into the
/// output directory (report.json, CSV tables with .schema.json sidecars,
/// CBF1 field files, a verbatim config copy) and finishes with
/// manifest.json naming the artifacts, the SHA-256 of the config text, the
/// effective seed, and the only timestamp any output carries.  Reports are
/// byte-identical when config text and seed are identical.
///
/// The return value is the process exit code: 0 when every asserted check
/// passes, 2 when one fails.  Errors are rethrown after a partial manifest
/// is written; the caller maps them to exit code 1.

#pragma once

#include "cbf/cli/config.hpp"

namespace cbf::cli {

int run(const RunConfig& cfg);

}  // namespace cbf::cli
