#pragma once

#include <sstream>
#include <string>

namespace canodual {

enum class LogLevel { Off = 0, Info = 1, Debug = 2 };

/// Diagnostic verbosity, read once from CANODUAL_LOG={off|info|debug}.
LogLevel log_level();

namespace detail {
void log_write(LogLevel level, const std::string& message);
}

template <typename... Args>
void log_info(const Args&... args) {
  if (log_level() >= LogLevel::Info) {
    std::ostringstream os;
    (os << ... << args);
    detail::log_write(LogLevel::Info, os.str());
  }
}

template <typename... Args>
void log_debug(const Args&... args) {
  if (log_level() >= LogLevel::Debug) {
    std::ostringstream os;
    (os << ... << args);
    detail::log_write(LogLevel::Debug, os.str());
  }
}

}  // namespace canodual
