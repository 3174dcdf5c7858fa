#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ucaw/algebra.hpp"

namespace ucaw {

/// Nonempty word over the alphabet {0..alphabet-1}. Positions are 1-based in
/// every interface of this header.
class Word {
 public:
  Word(std::size_t alphabet, std::vector<Element> letters);

  std::size_t alphabet() const noexcept { return alphabet_; }
  std::size_t length() const noexcept { return letters_.size(); }
  const std::vector<Element>& letters() const noexcept { return letters_; }
  /// 1-based access.
  Element at(std::size_t position) const { return letters_[position - 1]; }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::size_t alphabet_;
  std::vector<Element> letters_;
};

/// "0 0 1" -> (0,0,1).
Word parse_word(std::string_view text, std::size_t alphabet);
std::string to_string(const Word& w);

/// Strict lexicographic order on words of equal length.
bool lex_lt(const Word& a, const Word& b);
bool lex_lt(std::span<const Element> a, std::span<const Element> b);

/// Index of the first occurrence of `letter`, 0 when absent.
std::size_t first_occurrence(const Word& a, Element letter);

/// Strictly increasing h: {1..m} -> {1..n} stored as h[i-1].
struct Witness {
  std::vector<std::size_t> h;

  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Conditions (letters match, same letter sets, first occurrences map to
/// first occurrences) checked directly.
bool is_witness(const Word& a, const Word& b, const Witness& w);

/// A witness of a ≤_A b, or nullopt. First occurrences are forced anchors;
/// the other positions take the leftmost matching letter of b after the
/// previous image. Such a position's letter already occurred, so its matches
/// in b are never first occurrences and cannot collide with a later anchor,
/// and leftmost choices only leave more room, so a failed scan means no
/// witness exists.
std::optional<Witness> lea_witness(const Word& a, const Word& b);
inline bool lea(const Word& a, const Word& b) {
  return lea_witness(a, b).has_value();
}

/// Backward index map {1..n} -> {1..m} along a witness: h^-1(j) on the
/// range of h, otherwise the least i with a_i = b_j.
struct Tab {
  std::size_t source_length = 0;
  std::vector<std::size_t> map;

  friend bool operator==(const Tab&, const Tab&) = default;
};

/// Throws InvalidArgument unless `w` witnesses a ≤_A b.
Tab tab(const Word& a, const Word& b, const Witness& w);

/// <x_Tab(1), ..., x_Tab(n)>; x must have length m.
std::vector<Element> tab_apply(std::span<const Element> x, const Tab& t);

bool is_antichain(std::span<const Word> words);

/// Upward closed subset of (A^+, ≤_A) given by its minimal elements.
/// Insertion returns a new value; the basis stays an antichain sorted by
/// length, then lexicographically.
class UpSet {
 public:
  explicit UpSet(std::size_t alphabet) : alphabet_(alphabet) {}

  std::size_t alphabet() const noexcept { return alphabet_; }
  const std::vector<Word>& basis() const noexcept { return basis_; }

  bool contains(const Word& w) const;
  UpSet insert(const Word& w) const;

  friend bool operator==(const UpSet&, const UpSet&) = default;

 private:
  std::size_t alphabet_;
  std::vector<Word> basis_;
};

/// All words of length 1..max_length in lexicographic order per length.
std::vector<Word> all_words(std::size_t alphabet, std::size_t max_length);

}  // namespace ucaw
