#pragma once

#include <spdlog/spdlog.h>

namespace deid {

/// Routes the default logger to stderr at the level named by DEID_LOG_LEVEL
/// (error, warn, info, debug; default warn). Safe to call repeatedly.
void init_logging();

}  // namespace deid
