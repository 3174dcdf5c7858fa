#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "oracles.hpp"
#include "ucaw/algebra_io.hpp"
#include "ucaw/error.hpp"
#include "ucaw/term.hpp"

using namespace ucaw;
using testing::z2;
using testing::z4;

TEST_CASE("rank is mixed radix with the first coordinate most significant") {
  TupleRank r2(2, 2);
  CHECK(r2.rank(Tuple{0, 1}) == 1);
  CHECK(r2.rank(Tuple{1, 0}) == 2);
  TupleRank r3(2, 3);
  CHECK(r3.unrank(5) == Tuple{1, 2});
  CHECK(r3.count() == 9);
}

TEST_CASE("rank order is lexicographic order") {
  for (std::size_t base = 1; base <= 3; ++base)
    for (std::size_t width = 0; width <= 3; ++width) {
      TupleRank r(width, base);
      std::vector<Tuple> all;
      oracle::for_each_tuple(width, base, [&](const Tuple& t) {
        all.push_back(t);
      });
      REQUIRE(all.size() == r.count());
      for (std::size_t i = 0; i < all.size(); ++i) {
        CHECK(r.rank(all[i]) == i);
        CHECK(r.unrank(i) == all[i]);
        for (std::size_t j = 0; j < all.size(); ++j)
          CHECK((r.rank(all[i]) < r.rank(all[j])) == (all[i] < all[j]));
      }
    }
}

TEST_CASE("checked_power detects overflow") {
  CHECK(checked_power(2, 10) == 1024u);
  CHECK(checked_power(0, 0) == 1u);
  CHECK_FALSE(checked_power(2, 64).has_value());
  CHECK(checked_power(2, 63).has_value());
}

TEST_CASE("algebra constructor validates tables") {
  Signature sig({{"f", 2}});
  CHECK_THROWS_AS(FiniteAlgebra("A", 2, sig, {Table{0, 1, 1}}),
                  InvalidArgument);
  CHECK_THROWS_AS(FiniteAlgebra("A", 2, sig, {Table{0, 1, 1, 2}}),
                  InvalidArgument);
  CHECK_THROWS_AS(FiniteAlgebra("A", 2, sig, {}), InvalidArgument);
  CHECK_THROWS_AS(Signature({{"f", 1}, {"f", 2}}), InvalidArgument);
}

TEST_CASE("parsing the Z2 group file") {
  const auto a = load_algebra(UCAW_DATA_DIR "/z2group.alg");
  CHECK(a.size() == 2);
  CHECK(a.signature().size() == 3);
  CHECK(a.same_structure(z2()));
  CHECK(a.signature().has_constants());
}

TEST_CASE("parse errors name the problem") {
  const std::string out_of_range = R"({"size": 2, "operations": [
      {"symbol": "mul", "arity": 2, "table": [[0, 1], [1, 5]]}]})";
  CHECK_THROWS_AS(parse_algebra(out_of_range), ParseError);
  try {
    parse_algebra(out_of_range);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("mul") != std::string::npos);
  }
  const std::string short_table = R"({"size": 2, "operations": [
      {"symbol": "mul", "arity": 2, "table": [[0, 1], [1, 0], [0, 0]]}]})";
  CHECK_THROWS_AS(parse_algebra(short_table), ParseError);
  const std::string flat = R"({"size": 2, "operations": [
      {"symbol": "mul", "arity": 2, "table": [0, 1, 1]}]})";
  CHECK_THROWS_AS(parse_algebra(flat), ParseError);
  CHECK_THROWS_AS(parse_algebra("{"), ParseError);
  CHECK_THROWS_AS(parse_algebra(R"({"size": 0, "operations": []})"),
                  ParseError);
  CHECK_THROWS_AS(load_algebra("/nonexistent/file.alg"), IoError);
}

TEST_CASE("serialization round-trips on the canonical form") {
  std::mt19937_64 rng(7);
  std::vector<FiniteAlgebra> algs{z2(), z4(), testing::lattice(),
                                  algebras::bare_set(3), testing::z2xz2()};
  for (int i = 0; i < 20; ++i)
    algs.push_back(testing::random_algebra(1 + i % 3, {0, 1, 2, 3}, rng));
  for (const auto& a : algs) {
    const std::string text = serialize_algebra(a);
    const FiniteAlgebra b = parse_algebra(text);
    CHECK(b == a);
    CHECK(serialize_algebra(b) == text);
  }
}

TEST_CASE("data files are in canonical form") {
  for (const char* f : {"z2group.alg", "z3group.alg", "z4group.alg",
                        "trivial.alg", "z2xz2.alg", "lattice2.alg",
                        "set2.alg"}) {
    const std::string path = std::string(UCAW_DATA_DIR) + "/" + f;
    CHECK(serialize_algebra(load_algebra(path)) == read_text_file(path));
  }
}

TEST_CASE("term evaluation examples") {
  const auto z2_alg = z2();
  const auto& sig = z2_alg.signature();
  CHECK(eval_term(z2(), parse_term("mul(x1,inv(x1))", sig), Tuple{1}) == 0);
  CHECK(eval_term(z4(), parse_term("mul(x1,x1)", sig), Tuple{3}) == 2);
  CHECK(eval_term(z4(), Term::variable(2), Tuple{1, 3}) == 3);
  CHECK(term_table(z2(), Term::variable(1), 1) == Table{0, 1});
  CHECK(term_table(z2(), parse_term("mul(x1,x2)", sig), 2) ==
        Table{0, 1, 1, 0});
  CHECK(term_table(z2(), parse_term("e", sig), 1) == Table{0, 0});
  CHECK_THROWS_AS(eval_term(z2(), Term::variable(3), Tuple{0, 1}),
                  InvalidArgument);
}

TEST_CASE("terms print and parse") {
  const auto z2_alg = z2();
  const auto& sig = z2_alg.signature();
  for (const char* s : {"x1", "e", "mul(x1,inv(x2))", "inv(inv(e))"}) {
    const Term t = parse_term(s, sig);
    CHECK(to_string(t, sig) == s);
  }
  CHECK(parse_term("e()", sig) == parse_term("e", sig));
  CHECK(parse_term(" mul( x1 , x2 ) ", sig) == parse_term("mul(x1,x2)", sig));
  CHECK_THROWS_AS(parse_term("mul(x1)", sig), ParseError);
  CHECK_THROWS_AS(parse_term("foo(x1)", sig), ParseError);
  CHECK_THROWS_AS(parse_term("mul(x1,x2", sig), ParseError);
  CHECK_THROWS_AS(parse_term("x0", sig), ParseError);
  const Term t = parse_term("mul(x2,inv(x3))", sig);
  CHECK(t.max_variable() == 3);
  CHECK(t.depth() == 2);
  const std::vector<Term> repl{Term::variable(1), Term::variable(1),
                               parse_term("e", sig)};
  CHECK(to_string(t.substitute(repl), sig) == "mul(x1,inv(e))");
}

TEST_CASE("evaluation is compositional") {
  std::mt19937_64 rng(11);
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto alg = testing::random_algebra(n, {2, 1, 0}, rng);
    std::vector<Term> terms{Term::variable(1), Term::variable(2),
                            Term::variable(3)};
    for (int step = 0; step < 30; ++step) {
      const std::size_t op = step % 3;
      const std::size_t r = alg.signature()[op].arity;
      std::vector<Term> args;
      for (std::size_t i = 0; i < r; ++i) args.push_back(terms[rng() % terms.size()]);
      const Term t = Term::apply(op, args);
      terms.push_back(t);
      oracle::for_each_tuple(3, n, [&](const Tuple& x) {
        Tuple child_values;
        for (const auto& c : args) child_values.push_back(eval_term(alg, c, x));
        CHECK(eval_term(alg, t, x) == oracle::apply_op(alg, op, child_values));
      });
    }
  }
}

TEST_CASE("direct products and canonical forms") {
  const auto p = testing::z2xz2();
  CHECK(p.size() == 4);
  // (1,0) + (1,1) = (0,1) with the first factor most significant.
  CHECK(p.apply(0, Tuple{2, 3}) == 1);
  // Relabelling does not change the canonical form.
  const std::vector<Element> perm{2, 0, 3, 1};
  std::vector<Table> tables;
  for (std::size_t op = 0; op < z4().signature().size(); ++op) {
    const std::size_t r = z4().signature()[op].arity;
    Table t(oracle::ipow(4, r));
    oracle::for_each_tuple(r, 4, [&](const Tuple& x) {
      Tuple y;
      for (Element v : x) y.push_back(perm[v]);
      t[table_index(y, 4)] = perm[z4().apply(op, x)];
    });
    tables.push_back(t);
  }
  const FiniteAlgebra relabelled("Z4'", 4, z4().signature(), tables);
  CHECK_FALSE(relabelled.same_structure(z4()));
  CHECK(canonical_form(relabelled).same_structure(canonical_form(z4())));
  CHECK_FALSE(canonical_form(p).same_structure(canonical_form(z4())));
}
