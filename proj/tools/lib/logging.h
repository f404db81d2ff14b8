#ifndef GSMF_TOOLS_LOGGING_H_
#define GSMF_TOOLS_LOGGING_H_

#include <spdlog/logger.h>

namespace gsmf::cli {

// Shared stderr logger. Level comes from GSMF_LOG (trace, debug, info, warn,
// error, off); default warn.
spdlog::logger& Log();

}  // namespace gsmf::cli

#endif  // GSMF_TOOLS_LOGGING_H_
