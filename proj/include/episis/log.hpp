#ifndef EPISIS_LOG_HPP
#define EPISIS_LOG_HPP

#include <string>

namespace episis::log {

enum class Level { Quiet = 0, Error = 1, Warn = 2, Info = 3, Debug = 4 };

// Level comes from the EPISIS_LOG environment variable
// (quiet|error|warn|info|debug), default warn. Messages go to stderr.
Level level();

void error(const std::string& msg);
void warn(const std::string& msg);
void info(const std::string& msg);
void debug(const std::string& msg);

} // namespace episis::log

#endif
