#pragma once

#include <array>
#include <charconv>
#include <string>

namespace cnfxor {

/// Shortest decimal text that round-trips to the same double; -0 prints as 0.
inline std::string format_double(double value) {
  if (value == 0.0) value = 0.0;
  std::array<char, 32> buffer{};
  const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), result.ptr);
}

}  // namespace cnfxor
