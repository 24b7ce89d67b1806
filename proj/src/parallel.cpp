#include "eigenshape/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace eigenshape {

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("EIGENSHAPE_THREADS")) {
        int v = 0;
        const auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), v);
        if (ec == std::errc() && v > 0) return v;
    }
    return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

} // namespace eigenshape
