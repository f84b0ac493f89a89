#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace cnfxor {

/// Identifies the generator and stream-derivation scheme in manifests. Bump
/// it whenever sampled formulas for a given seed could change.
inline constexpr std::string_view kRngName = "mt19937_64/splitmix64-v1";

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Hashes a master seed and a path of indices into a child seed. Pure: the
/// result depends only on the arguments.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept;

/// Deterministic random source. The engine is std::mt19937_64 (bit-exact
/// across standard libraries); bounded draws use our own rejection step
/// because std distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

/// Stream tags used by the formula generator.
enum class StreamTag : std::uint64_t { KClause = 1, XorClause = 2 };

}  // namespace cnfxor
