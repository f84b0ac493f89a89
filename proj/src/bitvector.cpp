#include "cnfxor/bitvector.hpp"

#include <algorithm>
#include <cassert>

namespace cnfxor {

void BitVector::clear() noexcept { std::fill(words_.begin(), words_.end(), 0); }

BitVector& BitVector::operator^=(const BitVector& other) noexcept {
  assert(size_ == other.size_);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) noexcept {
  assert(size_ == other.size_);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

BitVector& BitVector::operator|=(const BitVector& other) noexcept {
  assert(size_ == other.size_);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

std::size_t BitVector::count() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool BitVector::none() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool BitVector::and_parity(const BitVector& other) const noexcept {
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
  return std::popcount(acc) & 1;
}

std::size_t BitVector::and_count(const BitVector& other, std::size_t limit) const noexcept {
  std::size_t total = 0;
  for (std::size_t w = 0; w < words_.size() && total < limit; ++w)
    total += static_cast<std::size_t>(std::popcount(words_[w] & other.words_[w]));
  return total;
}

std::size_t BitVector::find_first_and(const BitVector& other) const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    const std::uint64_t both = words_[w] & other.words_[w];
    if (both != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(both));
  }
  return npos;
}

std::size_t BitVector::find_next(std::size_t from) const noexcept {
  if (from >= size_) return npos;
  std::size_t w = from >> 6;
  std::uint64_t word = words_[w] & (~std::uint64_t{0} << (from & 63));
  while (true) {
    if (word != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(word));
    if (++w == words_.size()) return npos;
    word = words_[w];
  }
}

}  // namespace cnfxor
