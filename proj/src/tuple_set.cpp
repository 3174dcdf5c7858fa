#include "ucaw/tuple_set.hpp"

#include <algorithm>
#include <numeric>

#include "ucaw/error.hpp"

namespace ucaw {

TupleSet::TupleSet(std::size_t width) : width_(width) {
  if (width == 0) throw InvalidArgument("tuple sets need width >= 1");
}

TupleSet TupleSet::from_flat(std::size_t width, std::vector<Element> flat) {
  TupleSet out(width);
  if (flat.size() % width != 0)
    throw InvalidArgument("flat tuple data is not a multiple of the width");
  const std::size_t count = flat.size() / width;
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto row = [&](std::size_t i) {
    return std::span<const Element>(flat.data() + i * width, width);
  };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto ra = row(a), rb = row(b);
    return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(),
                                        rb.end());
  });
  out.data_.reserve(flat.size());
  for (std::size_t k = 0; k < count; ++k) {
    auto r = row(order[k]);
    if (k > 0 && std::equal(r.begin(), r.end(), row(order[k - 1]).begin()))
      continue;
    out.data_.insert(out.data_.end(), r.begin(), r.end());
  }
  return out;
}

TupleSet TupleSet::from_tuples(std::size_t width,
                               std::span<const Tuple> tuples) {
  std::vector<Element> flat;
  flat.reserve(tuples.size() * width);
  for (const auto& t : tuples) {
    if (t.size() != width)
      throw InvalidArgument("tuple of width " + std::to_string(t.size()) +
                            " in a set of width " + std::to_string(width));
    flat.insert(flat.end(), t.begin(), t.end());
  }
  return from_flat(width, std::move(flat));
}

std::optional<std::size_t> TupleSet::find(std::span<const Element> tuple) const {
  if (tuple.size() != width_) return std::nullopt;
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    auto row = (*this)[mid];
    if (std::lexicographical_compare(row.begin(), row.end(), tuple.begin(),
                                     tuple.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < size() && std::ranges::equal((*this)[lo], tuple)) return lo;
  return std::nullopt;
}

bool TupleSet::includes(const TupleSet& other) const {
  if (other.empty()) return true;
  if (other.width_ != width_) return false;
  // Merge walk over two sorted sequences.
  std::size_t i = 0;
  for (std::size_t j = 0; j < other.size(); ++j) {
    auto target = other[j];
    while (i < size()) {
      auto row = (*this)[i];
      if (std::lexicographical_compare(row.begin(), row.end(), target.begin(),
                                       target.end()))
        ++i;
      else
        break;
    }
    if (i == size() || !std::ranges::equal((*this)[i], target)) return false;
  }
  return true;
}

std::vector<Tuple> TupleSet::to_vector() const {
  std::vector<Tuple> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    auto r = (*this)[i];
    out.emplace_back(r.begin(), r.end());
  }
  return out;
}

}  // namespace ucaw
