#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cnfxor {

/// Fixed-width dense bit vector packed into 64-bit words. Bits past size()
/// in the last word are always zero.
class BitVector {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const noexcept { return size_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }

  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void assign(std::size_t i, bool value) noexcept { value ? set(i) : reset(i); }
  void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  void clear() noexcept;

  BitVector& operator^=(const BitVector& other) noexcept;
  BitVector& operator&=(const BitVector& other) noexcept;
  BitVector& operator|=(const BitVector& other) noexcept;

  std::size_t count() const noexcept;
  bool none() const noexcept;
  bool any() const noexcept { return !none(); }

  /// Parity of popcount(*this & other).
  bool and_parity(const BitVector& other) const noexcept;
  /// popcount(*this & other), stopping early once `limit` is reached.
  std::size_t and_count(const BitVector& other, std::size_t limit = npos) const noexcept;
  /// Lowest index set in (*this & other), or npos.
  std::size_t find_first_and(const BitVector& other) const noexcept;

  std::size_t find_first() const noexcept { return find_next(0); }
  /// Lowest set index >= from, or npos.
  std::size_t find_next(std::size_t from) const noexcept;

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace cnfxor
