#include "canodual/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace canodual {

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("CANODUAL_LOG");
    if (env == nullptr) return LogLevel::Off;
    if (std::strcmp(env, "debug") == 0) return LogLevel::Debug;
    if (std::strcmp(env, "info") == 0) return LogLevel::Info;
    return LogLevel::Off;
  }();
  return level;
}

namespace detail {

void log_write(LogLevel level, const std::string& message) {
  std::fprintf(stderr, "[canodual:%s] %s\n",
               level == LogLevel::Debug ? "debug" : "info", message.c_str());
}

}  // namespace detail
}  // namespace canodual
