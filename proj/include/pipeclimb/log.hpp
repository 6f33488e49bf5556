#pragma once

namespace pipeclimb {

enum class LogLevel : int { Error = 0, Info = 1, Debug = 2 };

/// Level from PIPECLIMB_LOG (error|info|debug); defaults to info.
LogLevel log_level();

void log_error(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
void log_info(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
void log_debug(const char* fmt, ...) __attribute__((format(printf, 1, 2)));

} // namespace pipeclimb
