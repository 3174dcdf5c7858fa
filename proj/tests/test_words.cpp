#include <catch2/catch_amalgamated.hpp>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "ucaw/error.hpp"
#include "ucaw/words.hpp"

using namespace ucaw;

namespace {

Word w(std::vector<Element> letters, std::size_t t = 2) {
  return Word(t, std::move(letters));
}

Word random_word(std::size_t t, std::size_t max_len, std::mt19937_64& rng) {
  std::vector<Element> l(1 + rng() % max_len);
  for (auto& x : l) x = static_cast<Element>(rng() % t);
  return Word(t, l);
}

// Random b with a <=_A b, built by inserting already-seen letters.
Word random_extension(const Word& a, std::size_t extra, std::mt19937_64& rng) {
  std::vector<Element> l = a.letters();
  for (std::size_t k = 0; k < extra; ++k) {
    const std::size_t pos = 1 + rng() % l.size();
    const Element letter = l[rng() % pos];
    l.insert(l.begin() + static_cast<long>(pos), letter);
  }
  return Word(a.alphabet(), l);
}

}  // namespace

TEST_CASE("words validate their letters") {
  CHECK_THROWS_AS(Word(2, {}), InvalidArgument);
  CHECK_THROWS_AS(Word(2, {0, 2}), InvalidArgument);
  CHECK(parse_word("0 0 1", 2) == w({0, 0, 1}));
  CHECK(to_string(w({1, 0})) == "1 0");
  CHECK_THROWS_AS(parse_word("0 3", 2), ParseError);
  CHECK_THROWS_AS(parse_word("", 2), ParseError);
}

TEST_CASE("lexicographic order") {
  CHECK(lex_lt(w({0, 0, 1}), w({0, 1, 0})));
  CHECK_FALSE(lex_lt(w({1, 0}), w({1, 0})));
  CHECK_FALSE(lex_lt(w({1, 0}), w({0, 1})));
  CHECK_THROWS_AS(lex_lt(w({1}), w({0, 1})), InvalidArgument);
}

TEST_CASE("first occurrences") {
  CHECK(first_occurrence(w({1, 0, 1}), 0) == 2);
  CHECK(first_occurrence(w({1, 1}), 0) == 0);
  CHECK(first_occurrence(w({0, 1, 1}), 0) == 1);
}

TEST_CASE("embedding witness examples") {
  const auto h = lea_witness(w({0, 1}), w({0, 0, 1}));
  REQUIRE(h);
  CHECK(h->h == std::vector<std::size_t>{1, 3});
  CHECK_FALSE(lea(w({0, 1}), w({1, 0, 1})));
  const auto id = lea_witness(w({1, 0, 0}), w({1, 0, 0}));
  REQUIRE(id);
  CHECK(id->h == std::vector<std::size_t>{1, 2, 3});
}

TEST_CASE("lea agrees with the embedding enumerator for t = 2, length <= 7") {
  const auto words = all_words(2, 7);
  CHECK(words.size() == 254);
  std::size_t comparable = 0;
  for (const auto& a : words)
    for (const auto& b : words) {
      const auto all = oracle::embeddings(a.letters(), b.letters(), 2);
      const auto h = lea_witness(a, b);
      REQUIRE(h.has_value() == !all.empty());
      if (h) {
        ++comparable;
        CHECK(is_witness(a, b, *h));
        CHECK(std::find(all.begin(), all.end(), h->h) != all.end());
      }
    }
  CHECK(comparable > words.size());
}

TEST_CASE("is_witness checks every condition") {
  CHECK(is_witness(w({0, 1}), w({0, 0, 1}), Witness{{1, 3}}));
  CHECK_FALSE(is_witness(w({0, 1}), w({0, 0, 1}), Witness{{2, 3}}));
  CHECK_FALSE(is_witness(w({0, 1}), w({0, 1, 1}), Witness{{1, 3}}));
  CHECK_FALSE(is_witness(w({0, 0}), w({0, 0, 1}), Witness{{1, 2}}));
  CHECK_FALSE(is_witness(w({0, 1}), w({0, 1}), Witness{{2, 1}}));
}

TEST_CASE("lea is a partial order on random triples, t = 3") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 10000; ++i) {
    const Word a = random_word(3, 8, rng);
    const Word b = (i % 2) ? random_extension(a, rng() % 4, rng)
                           : random_word(3, 8, rng);
    const Word c = (i % 3) ? random_extension(b, rng() % 4, rng)
                           : random_word(3, 8, rng);
    CHECK(lea(a, a));
    if (lea(a, b) && lea(b, a)) CHECK(a == b);
    if (lea(a, b) && lea(b, c)) CHECK(lea(a, c));
    CHECK(lea(a, b) == oracle::leq(a.letters(), b.letters(), 3));
  }
}

TEST_CASE("Tab examples") {
  CHECK(tab(w({0, 1}), w({0, 1, 1}), Witness{{1, 2}}).map ==
        std::vector<std::size_t>{1, 2, 2});
  CHECK(tab(w({0, 1}), w({0, 0, 1}), Witness{{1, 3}}).map ==
        std::vector<std::size_t>{1, 1, 2});
  CHECK(tab(w({1, 0, 1}), w({1, 0, 1}), Witness{{1, 2, 3}}).map ==
        std::vector<std::size_t>{1, 2, 3});
  CHECK_THROWS_AS(tab(w({0, 1}), w({1, 0, 1}), Witness{{2, 3}}),
                  InvalidArgument);
}

TEST_CASE("pullback along Tab") {
  const Tab t = tab(w({0, 1}), w({0, 1, 1}), Witness{{1, 2}});
  CHECK(tab_apply(std::vector<Element>{0, 1}, t) ==
        std::vector<Element>{0, 1, 1});
  CHECK(tab_apply(std::vector<Element>{0, 0}, t) ==
        std::vector<Element>{0, 0, 0});
  CHECK(tab_apply(std::vector<Element>{2, 2}, t) ==
        std::vector<Element>{2, 2, 2});
  CHECK_THROWS_AS(tab_apply(std::vector<Element>{0}, t), InvalidArgument);
}

TEST_CASE("pullback reproduces b and keeps lex order, random samples") {
  std::mt19937_64 rng(42);
  std::size_t samples = 0;
  while (samples < 10000) {
    const std::size_t t = 2 + rng() % 2;
    const Word a = random_word(t, 6, rng);
    const Word b = random_extension(a, rng() % 4, rng);
    const auto all = oracle::embeddings(a.letters(), b.letters(), t);
    REQUIRE_FALSE(all.empty());
    const Witness h{all[rng() % all.size()]};
    std::vector<Element> c(a.length());
    for (auto& x : c) x = static_cast<Element>(rng() % t);
    if (!lex_lt(c, a.letters())) continue;
    ++samples;
    const Tab tb = tab(a, b, h);
    CHECK(tab_apply(a.letters(), tb) == b.letters());
    CHECK(lex_lt(tab_apply(c, tb), b.letters()));
  }
}

TEST_CASE("antichains and up-sets") {
  const std::vector<Word> ab{w({0, 1}), w({1, 0})};
  CHECK(is_antichain(ab));
  const std::vector<Word> chain{w({0, 1}), w({0, 0, 1})};
  CHECK_FALSE(is_antichain(chain));
  const std::vector<Word> dup{w({0, 1}), w({0, 1})};
  CHECK_FALSE(is_antichain(dup));
  const UpSet u = UpSet(2).insert(w({0, 1})).insert(w({0, 0, 1}));
  CHECK(u.basis() == std::vector<Word>{w({0, 1})});
  CHECK_FALSE(u.contains(w({1, 0})));
  CHECK(u.contains(w({0, 1, 0, 1})));
  // Inserting a smaller word replaces the larger ones.
  const UpSet v = UpSet(2).insert(w({0, 0, 1})).insert(w({0, 1}));
  CHECK(v == u);
}

TEST_CASE("up-set membership matches the basis definition") {
  std::mt19937_64 rng(43);
  const auto universe = all_words(2, 6);
  for (int i = 0; i < 50; ++i) {
    UpSet u(2);
    std::vector<Word> inserted;
    for (int j = 0; j < 4; ++j) {
      inserted.push_back(random_word(2, 5, rng));
      u = u.insert(inserted.back());
    }
    CHECK(is_antichain(u.basis()));
    for (const auto& x : universe) {
      bool above = false;
      for (const auto& y : inserted) above = above || lea(y, x);
      CHECK(u.contains(x) == above);
    }
  }
}

TEST_CASE("random antichains never exceed the poset width, t = 2, length <= 6") {
  const auto words = all_words(2, 6);
  const std::size_t width = oracle::width_of_poset(
      words.size(), [&](std::size_t i, std::size_t j) {
        return oracle::leq(words[i].letters(), words[j].letters(), 2);
      });
  CHECK(width >= 2);
  std::mt19937_64 rng(44);
  std::size_t best = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<Word> chosen;
    std::vector<std::size_t> order(words.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i : order) {
      bool ok = true;
      for (const auto& c : chosen)
        ok = ok && !lea(c, words[i]) && !lea(words[i], c);
      if (ok) chosen.push_back(words[i]);
    }
    CHECK(is_antichain(chosen));
    best = std::max(best, chosen.size());
  }
  CHECK(best <= width);
}
