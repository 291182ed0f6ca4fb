#pragma once

namespace deid::cli {

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;      // bad flags or configuration
inline constexpr int kExitData = 2;       // unreadable or invalid input data
inline constexpr int kExitNumeric = 3;    // training diverged
inline constexpr int kExitThreshold = 4;  // a quality gate failed

/// Entry point for the `deid` tool: train, tag, replace, eval, synth, gradcheck, ablate.
int run(int argc, const char* const* argv);

}  // namespace deid::cli
