#pragma once

#include <cstdlib>

namespace ccdeg::detail {

// CCDEG_SEQUENTIAL (any nonempty value) disables worker threads; results
// are identical either way, only the schedule changes.
inline bool sequential_forced() {
  const char* v = std::getenv("CCDEG_SEQUENTIAL");
  return v != nullptr && *v != '\0';
}

}  // namespace ccdeg::detail
