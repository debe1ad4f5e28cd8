#pragma once

#include <atomic>
#include <cstdlib>
#include <string>

namespace eil {

inline constexpr char kVersion[] = "0.1.0";

namespace detail {
inline std::atomic<int>& max_order_override() {
    static std::atomic<int> v{0};
    return v;
}
} // namespace detail

// Construction order cap; EIL_MAX_ORDER overrides the default of 64.
inline int max_order() {
    int o = detail::max_order_override().load();
    if (o > 0)
        return o;
    static const int from_env = [] {
        if (const char* s = std::getenv("EIL_MAX_ORDER")) {
            char* end = nullptr;
            long v = std::strtol(s, &end, 10);
            if (end && *end == '\0' && v > 0 && v <= 1 << 20)
                return static_cast<int>(v);
        }
        return 64;
    }();
    return from_env;
}

// test hook; 0 restores the environment-driven value
inline void set_max_order(int v) {
    detail::max_order_override().store(v);
}

} // namespace eil
