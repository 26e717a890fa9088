#pragma once

#include <ostream>

#include "kinfront/experiments/config.hpp"
#include "kinfront/experiments/manifest.hpp"

namespace kinfront::experiments {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitChecks = 3;

/// Runs a validated configuration, writing outputs and manifest.json under
/// config.out_dir. Returns 0, 1 (runtime failure) or 3 (checks failed).
int run(const ExperimentConfig& config, std::ostream& log);

/// Full command-line entry point; returns the process exit code.
int cli_main(int argc, char** argv);

}  // namespace kinfront::experiments
