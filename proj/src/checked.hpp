#pragma once

#include <cassert>
#include <cstdint>

namespace chaincx::detail {

// Overflow here is a programming error: inputs are capped so that every
// derived quantity fits. Debug builds trap it; release builds compute plainly.
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
#ifndef NDEBUG
  std::int64_t out = 0;
  const bool overflow = __builtin_add_overflow(a, b, &out);
  assert(!overflow);
  return out;
#else
  return a + b;
#endif
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
#ifndef NDEBUG
  std::int64_t out = 0;
  const bool overflow = __builtin_mul_overflow(a, b, &out);
  assert(!overflow);
  return out;
#else
  return a * b;
#endif
}

}  // namespace chaincx::detail
