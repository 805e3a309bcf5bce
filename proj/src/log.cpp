#include "episis/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace episis::log {

Level level()
{
    static Level lvl = [] {
        const char* env = std::getenv("EPISIS_LOG");
        if (!env)
            return Level::Warn;
        if (!std::strcmp(env, "quiet"))
            return Level::Quiet;
        if (!std::strcmp(env, "error"))
            return Level::Error;
        if (!std::strcmp(env, "info"))
            return Level::Info;
        if (!std::strcmp(env, "debug"))
            return Level::Debug;
        return Level::Warn;
    }();
    return lvl;
}

namespace {
void emit(Level at, const char* tag, const std::string& msg)
{
    if (level() >= at)
        std::fprintf(stderr, "[%s] %s\n", tag, msg.c_str());
}
} // namespace

void error(const std::string& msg) { emit(Level::Error, "error", msg); }
void warn(const std::string& msg) { emit(Level::Warn, "warn", msg); }
void info(const std::string& msg) { emit(Level::Info, "info", msg); }
void debug(const std::string& msg) { emit(Level::Debug, "debug", msg); }

} // namespace episis::log
