#include "ucaw/words.hpp"

#include <algorithm>
#include <sstream>

#include "ucaw/error.hpp"

namespace ucaw {

Word::Word(std::size_t alphabet, std::vector<Element> letters)
    : alphabet_(alphabet), letters_(std::move(letters)) {
  if (alphabet_ == 0) throw InvalidArgument("alphabet must be nonempty");
  if (letters_.empty()) throw InvalidArgument("words must be nonempty");
  for (Element c : letters_)
    if (c >= alphabet_)
      throw InvalidArgument("letter " + std::to_string(c) +
                            " outside alphabet of size " +
                            std::to_string(alphabet_));
}

Word parse_word(std::string_view text, std::size_t alphabet) {
  std::istringstream in{std::string(text)};
  std::vector<Element> letters;
  std::string token;
  while (in >> token) {
    if (!std::all_of(token.begin(), token.end(),
                     [](char c) { return c >= '0' && c <= '9'; }) ||
        token.size() > 9)
      throw ParseError("word: bad letter '" + token + "'");
    letters.push_back(static_cast<Element>(std::stoul(token)));
  }
  if (letters.empty()) throw ParseError("word: no letters");
  try {
    return Word(alphabet, std::move(letters));
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("word: ") + e.what());
  }
}

std::string to_string(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.length(); ++i) {
    if (i) out += ' ';
    out += std::to_string(w.letters()[i]);
  }
  return out;
}

bool lex_lt(std::span<const Element> a, std::span<const Element> b) {
  if (a.size() != b.size())
    throw InvalidArgument("lexicographic order compares words of equal length");
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool lex_lt(const Word& a, const Word& b) {
  return lex_lt(std::span<const Element>(a.letters()),
                std::span<const Element>(b.letters()));
}

std::size_t first_occurrence(const Word& a, Element letter) {
  const auto& l = a.letters();
  auto it = std::find(l.begin(), l.end(), letter);
  return it == l.end() ? 0 : static_cast<std::size_t>(it - l.begin()) + 1;
}

namespace {

std::vector<bool> letter_set(const Word& w) {
  std::vector<bool> set(w.alphabet(), false);
  for (Element c : w.letters()) set[c] = true;
  return set;
}

void require_same_alphabet(const Word& a, const Word& b) {
  if (a.alphabet() != b.alphabet())
    throw InvalidArgument("words over alphabets of size " +
                          std::to_string(a.alphabet()) + " and " +
                          std::to_string(b.alphabet()));
}

}  // namespace

bool is_witness(const Word& a, const Word& b, const Witness& w) {
  require_same_alphabet(a, b);
  const std::size_t m = a.length(), n = b.length();
  if (w.h.size() != m) return false;
  for (std::size_t i = 1; i <= m; ++i) {
    const std::size_t hi = w.h[i - 1];
    if (hi < 1 || hi > n) return false;
    if (i > 1 && hi <= w.h[i - 2]) return false;
    if (a.at(i) != b.at(hi)) return false;
  }
  if (letter_set(a) != letter_set(b)) return false;
  for (Element c = 0; c < a.alphabet(); ++c) {
    const std::size_t fa = first_occurrence(a, c);
    if (fa && w.h[fa - 1] != first_occurrence(b, c)) return false;
  }
  return true;
}

std::optional<Witness> lea_witness(const Word& a, const Word& b) {
  require_same_alphabet(a, b);
  if (a.length() > b.length() || letter_set(a) != letter_set(b))
    return std::nullopt;
  Witness w;
  w.h.reserve(a.length());
  std::size_t last = 0;
  for (std::size_t i = 1; i <= a.length(); ++i) {
    const Element c = a.at(i);
    std::size_t j;
    if (first_occurrence(a, c) == i) {
      j = first_occurrence(b, c);
      if (j <= last) return std::nullopt;
    } else {
      j = last + 1;
      while (j <= b.length() && b.at(j) != c) ++j;
      if (j > b.length()) return std::nullopt;
    }
    w.h.push_back(j);
    last = j;
  }
  return w;
}

Tab tab(const Word& a, const Word& b, const Witness& w) {
  if (!is_witness(a, b, w))
    throw InvalidArgument("tab: map is not a witness of " + to_string(a) +
                          " <=_A " + to_string(b));
  Tab t;
  t.source_length = a.length();
  t.map.assign(b.length(), 0);
  for (std::size_t i = 1; i <= a.length(); ++i) t.map[w.h[i - 1] - 1] = i;
  for (std::size_t j = 1; j <= b.length(); ++j)
    if (t.map[j - 1] == 0) t.map[j - 1] = first_occurrence(a, b.at(j));
  return t;
}

std::vector<Element> tab_apply(std::span<const Element> x, const Tab& t) {
  if (x.size() != t.source_length)
    throw InvalidArgument("tab_apply: sequence of length " +
                          std::to_string(x.size()) + ", expected " +
                          std::to_string(t.source_length));
  std::vector<Element> out;
  out.reserve(t.map.size());
  for (auto i : t.map) out.push_back(x[i - 1]);
  return out;
}

bool is_antichain(std::span<const Word> words) {
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = 0; j < words.size(); ++j)
      if (i != j && (words[i] == words[j] || lea(words[i], words[j])))
        return false;
  return true;
}

bool UpSet::contains(const Word& w) const {
  if (w.alphabet() != alphabet_)
    throw InvalidArgument("up-set and word use different alphabets");
  return std::any_of(basis_.begin(), basis_.end(),
                     [&](const Word& g) { return lea(g, w); });
}

UpSet UpSet::insert(const Word& w) const {
  if (contains(w)) return *this;
  UpSet out(alphabet_);
  for (const Word& g : basis_)
    if (!lea(w, g)) out.basis_.push_back(g);
  out.basis_.push_back(w);
  std::sort(out.basis_.begin(), out.basis_.end(),
            [](const Word& x, const Word& y) {
              if (x.length() != y.length()) return x.length() < y.length();
              return x.letters() < y.letters();
            });
  return out;
}

std::vector<Word> all_words(std::size_t alphabet, std::size_t max_length) {
  std::vector<Word> out;
  for (std::size_t len = 1; len <= max_length; ++len) {
    const TupleRank rank(len, alphabet);
    for (std::uint64_t r = 0; r < rank.count(); ++r)
      out.emplace_back(alphabet, rank.unrank(r));
  }
  return out;
}

}  // namespace ucaw
