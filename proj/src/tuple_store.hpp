#pragma once

// Insertion-ordered tuple store with an open-addressing index. Used by the
// closure engines, which need O(1) membership while the set grows.

#include <cstdint>
#include <cstring>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ucaw/algebra.hpp"

namespace ucaw::detail {

class TupleStore {
 public:
  explicit TupleStore(std::size_t width) : width_(width), slots_(64, 0) {}

  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return count_; }
  const Element* row(std::size_t i) const { return data_.data() + i * width_; }
  std::span<const Element> operator[](std::size_t i) const {
    return {row(i), width_};
  }
  const std::vector<Element>& flat() const noexcept { return data_; }

  std::optional<std::size_t> find(const Element* t) const {
    std::size_t slot = hash(t) & (slots_.size() - 1);
    while (slots_[slot] != 0) {
      const std::size_t idx = slots_[slot] - 1;
      if (std::memcmp(row(idx), t, width_ * sizeof(Element)) == 0) return idx;
      slot = (slot + 1) & (slots_.size() - 1);
    }
    return std::nullopt;
  }

  /// Index of `t`, and whether it was newly inserted.
  std::pair<std::size_t, bool> insert(const Element* t) {
    if (auto idx = find(t)) return {*idx, false};
    if ((count_ + 1) * 2 > slots_.size()) grow();
    data_.insert(data_.end(), t, t + width_);
    place(count_);
    return {count_++, true};
  }

 private:
  std::uint64_t hash(const Element* t) const {
    // Two independent lanes shorten the multiply chain.
    std::uint64_t h0 = 0x9E3779B97F4A7C15ull ^ width_, h1 = 0xD6E8FEB86659FD93ull;
    std::size_t i = 0;
    for (; i + 1 < width_; i += 2) {
      h0 = (h0 ^ t[i]) * 0xBF58476D1CE4E5B9ull;
      h1 = (h1 ^ t[i + 1]) * 0x94D049BB133111EBull;
    }
    if (i < width_) h0 = (h0 ^ t[i]) * 0xBF58476D1CE4E5B9ull;
    std::uint64_t h = h0 ^ (h1 >> 29) ^ (h1 << 35);
    h ^= h >> 32;
    h *= 0xBF58476D1CE4E5B9ull;
    return h ^ (h >> 31);
  }

  void place(std::size_t idx) {
    std::size_t slot = hash(row(idx)) & (slots_.size() - 1);
    while (slots_[slot] != 0) slot = (slot + 1) & (slots_.size() - 1);
    slots_[slot] = static_cast<std::uint32_t>(idx + 1);
  }

  void grow() {
    slots_.assign(slots_.size() * 2, 0);
    for (std::size_t i = 0; i < count_; ++i) place(i);
  }

  std::size_t width_;
  std::size_t count_ = 0;
  std::vector<Element> data_;
  std::vector<std::uint32_t> slots_;
};

}  // namespace ucaw::detail
