#include "roughlab/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <string>
#include <string_view>

#include <omp.h>

#include "roughlab/error.hpp"

namespace roughlab {

int available_cores() noexcept {
    const int n = omp_get_num_procs();
    return n > 0 ? n : 1;
}

int resolve_threads(std::optional<int> requested) {
    if (requested) {
        if (*requested < 1) {
            throw InvalidArgument("--threads must be >= 1");
        }
        return *requested;
    }
    if (const char* env = std::getenv("ROUGHLAB_THREADS"); env != nullptr && *env != '\0') {
        const std::string_view s(env);
        int n = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
        if (ec != std::errc() || ptr != s.data() + s.size() || n < 1) {
            throw InvalidArgument("ROUGHLAB_THREADS must be a positive integer, got '" +
                                  std::string(s) + "'");
        }
        return n;
    }
    return available_cores();
}

}  // namespace roughlab
