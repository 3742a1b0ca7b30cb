#pragma once

#include <optional>

namespace roughlab {

// Worker count: explicit request, else ROUGHLAB_THREADS, else the available cores.
// Throws InvalidArgument for a non-positive or malformed value.
int resolve_threads(std::optional<int> requested);

int available_cores() noexcept;

}  // namespace roughlab
