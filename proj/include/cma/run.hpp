#pragma once

#include <filesystem>
#include <ostream>

#include "cma/config.hpp"

namespace cma {

enum ExitStatus { kExitOk = 0, kExitSolverFailure = 1, kExitConfigError = 2 };

/// Executes one command and writes its artifacts plus manifest.txt into
/// `out`. Progress and timings go to `log`, never into artifacts, so two
/// runs of the same config produce identical files. On an exception every
/// artifact written so far is removed.
int run(const RunConfig& cfg, const std::filesystem::path& out, int threads, std::ostream& log);

}  // namespace cma
