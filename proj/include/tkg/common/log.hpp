#pragma once

#include <iostream>
#include <mutex>
#include <string>

namespace tkg::log {

enum class Level { debug = 0, info = 1, warn = 2, error = 3, off = 4 };

namespace detail {
inline Level& threshold() {
    static Level lvl = Level::warn;
    return lvl;
}
inline std::mutex& mutex() {
    static std::mutex m;
    return m;
}
inline void emit(Level lvl, const char* tag, const std::string& msg) {
    if (lvl < threshold()) return;
    std::lock_guard<std::mutex> lock(mutex());
    std::cerr << "[" << tag << "] " << msg << "\n";
}
} // namespace detail

inline void set_level(Level lvl) { detail::threshold() = lvl; }

inline void debug(const std::string& msg) { detail::emit(Level::debug, "debug", msg); }
inline void info(const std::string& msg) { detail::emit(Level::info, "info", msg); }
inline void warn(const std::string& msg) { detail::emit(Level::warn, "warn", msg); }
inline void error(const std::string& msg) { detail::emit(Level::error, "error", msg); }

} // namespace tkg::log
