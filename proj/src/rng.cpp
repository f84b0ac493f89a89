#include "cnfxor/rng.hpp"

#include <bit>

namespace cnfxor {

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t h = mix64(master);
  for (auto step : path) h = mix64(h ^ mix64(step + 0x632be59bd9b4e019ULL));
  return h;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Masked rejection: unbiased, and identical on every platform.
  if (bound <= 1) return 0;
  const int width = std::bit_width(bound - 1);
  const std::uint64_t mask = width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  while (true) {
    const std::uint64_t x = engine_() & mask;
    if (x < bound) return x;
  }
}

}  // namespace cnfxor
