#pragma once

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

namespace dfl {

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

namespace detail {
inline LogLevel parse_log_level(const char* s, LogLevel fallback) {
  if (s == nullptr) return fallback;
  if (std::strcmp(s, "error") == 0) return LogLevel::Error;
  if (std::strcmp(s, "warn") == 0) return LogLevel::Warn;
  if (std::strcmp(s, "info") == 0) return LogLevel::Info;
  if (std::strcmp(s, "debug") == 0) return LogLevel::Debug;
  return fallback;
}

inline LogLevel& log_level_ref() {
  // DIFFEOFLOW_LOG seeds the level; --log-level overrides it later.
  static LogLevel level = parse_log_level(std::getenv("DIFFEOFLOW_LOG"), LogLevel::Warn);
  return level;
}
}  // namespace detail

inline void set_log_level(LogLevel level) { detail::log_level_ref() = level; }
inline bool set_log_level(const std::string& name) {
  LogLevel parsed = detail::parse_log_level(name.c_str(), static_cast<LogLevel>(-1));
  if (static_cast<int>(parsed) < 0) return false;
  set_log_level(parsed);
  return true;
}
inline LogLevel log_level() { return detail::log_level_ref(); }

// Logs go to stderr only; primary outputs stay byte-deterministic.
template <class... Args>
void log(LogLevel level, const char* fmt, Args... args) {
  if (level > log_level()) return;
  static const char* names[] = {"error", "warn", "info", "debug"};
  std::fprintf(stderr, "[%s] ", names[static_cast<int>(level)]);
  std::fprintf(stderr, fmt, args...);
  std::fputc('\n', stderr);
}

template <class... Args>
void log_info(const char* fmt, Args... args) {
  log(LogLevel::Info, fmt, args...);
}
template <class... Args>
void log_warn(const char* fmt, Args... args) {
  log(LogLevel::Warn, fmt, args...);
}
template <class... Args>
void log_debug(const char* fmt, Args... args) {
  log(LogLevel::Debug, fmt, args...);
}

}  // namespace dfl
