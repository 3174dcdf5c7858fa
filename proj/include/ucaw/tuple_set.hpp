#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ucaw/algebra.hpp"

namespace ucaw {

/// Set of equal-width tuples stored flat, sorted lexicographically (which is
/// rank order) and free of duplicates.
class TupleSet {
 public:
  TupleSet() = default;
  explicit TupleSet(std::size_t width);

  /// Sorts and deduplicates `flat`, whose length must be a multiple of width.
  static TupleSet from_flat(std::size_t width, std::vector<Element> flat);
  static TupleSet from_tuples(std::size_t width, std::span<const Tuple> tuples);

  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept {
    return width_ == 0 ? 0 : data_.size() / width_;
  }
  bool empty() const noexcept { return data_.empty(); }

  std::span<const Element> operator[](std::size_t i) const {
    return {data_.data() + i * width_, width_};
  }

  std::optional<std::size_t> find(std::span<const Element> tuple) const;
  bool contains(std::span<const Element> tuple) const {
    return find(tuple).has_value();
  }
  /// True when every tuple of `other` lies in this set.
  bool includes(const TupleSet& other) const;

  const std::vector<Element>& flat() const noexcept { return data_; }
  std::vector<Tuple> to_vector() const;

  friend bool operator==(const TupleSet&, const TupleSet&) = default;
  friend bool operator<(const TupleSet& a, const TupleSet& b) {
    if (a.width_ != b.width_) return a.width_ < b.width_;
    return a.data_ < b.data_;
  }

 private:
  std::size_t width_ = 0;
  std::vector<Element> data_;
};

}  // namespace ucaw
