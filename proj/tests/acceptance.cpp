// Acceptance runner: checks every acceptance criterion against its time
// limit and prints one PASS/FAIL line per criterion.
//
//   ucaw-acceptance --cli path/to/ucaw --data path/to/data

#include <sys/wait.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ucaw/algebra_io.hpp"
#include "ucaw/clonoid.hpp"
#include "ucaw/maltsev.hpp"
#include "ucaw/subpower.hpp"
#include "ucaw/variety.hpp"
#include "ucaw/words.hpp"

using namespace ucaw;

namespace {

// Collects failed checks of one criterion.
struct Check {
  std::vector<std::string> failures;
  void operator()(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok) ++count;
  }
  std::size_t count = 0;
};

struct Context {
  std::string cli;
  std::string data;
  FiniteAlgebra load(const std::string& file) const {
    return load_algebra(data + "/" + file);
  }
  std::string path(const std::string& file) const { return data + "/" + file; }
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

// Stdout of the CLI, or nullopt when it could not run or exited nonzero.
std::optional<std::string> run_cli(const Context& ctx, const std::string& args) {
  const std::string cmd = quote(ctx.cli) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return std::nullopt;
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int status = pclose(p);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return std::nullopt;
  return out;
}

std::vector<Tuple> random_tuples(std::size_t count, std::size_t width,
                                 std::size_t n, std::mt19937_64& rng) {
  std::vector<Tuple> out(count, Tuple(width));
  for (auto& t : out)
    for (auto& v : t) v = static_cast<Element>(rng() % n);
  return out;
}

Word random_word(std::size_t t, std::size_t max_len, std::mt19937_64& rng) {
  std::vector<Element> l(1 + rng() % max_len);
  for (auto& x : l) x = static_cast<Element>(rng() % t);
  return Word(t, l);
}

Word random_extension(const Word& a, std::size_t extra, std::mt19937_64& rng) {
  std::vector<Element> l = a.letters();
  for (std::size_t k = 0; k < extra; ++k) {
    const std::size_t pos = 1 + rng() % l.size();
    const Element letter = l[rng() % pos];
    l.insert(l.begin() + static_cast<long>(pos), letter);
  }
  return Word(a.alphabet(), l);
}

std::vector<Seed> seed_pool() {
  std::vector<Seed> out;
  for (unsigned c = 0; c < 4; ++c) out.push_back({1, {c & 1, c >> 1 & 1}});
  for (unsigned c = 0; c < 16; ++c)
    out.push_back({2, {c & 1, c >> 1 & 1, c >> 2 & 1, c >> 3 & 1}});
  return out;
}

bool pair_subset(const PairSet& a, const PairSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool layers_included(const Clonoid& c, const Clonoid& d) {
  for (std::size_t n = 1; n <= c.arity_bound(); ++n)
    if (!d.layer(n).includes(c.layer(n))) return false;
  return true;
}

void edge_terms(const Context& ctx, Check& check) {
  Budget b;
  const auto z2 = ctx.load("z2group.alg");
  const auto lat = ctx.load("lattice2.alg");
  const auto set2 = ctx.load("set2.alg");
  const auto t2 = has_edge_term(z2, 2, b);
  check(t2 && is_edge_term(z2, *t2, 2), "Z2 group: verified 2-edge term");
  const auto t3 = has_edge_term(lat, 3, b);
  check(t3 && is_edge_term(lat, *t3, 3), "lattice: verified 3-edge term");
  check(!has_edge_term(lat, 2, b), "lattice: no 2-edge term");
  for (std::size_t k = 2; k <= 4; ++k)
    check(!has_edge_term(set2, k, b),
          "empty signature: no " + std::to_string(k) + "-edge term");
}

void fork_criterion(const Context& ctx, Check& check) {
  std::mt19937_64 rng(2024);
  for (const char* file : {"z2group.alg", "z4group.alg"}) {
    const auto alg = ctx.load(file);
    Budget eb;
    const auto edge = has_edge_term(alg, 2, eb);
    check(edge && is_edge_term(alg, *edge, 2),
          std::string(file) + ": 2-edge term");
    for (int i = 0; i < 500; ++i) {
      const std::size_t m = 1 + rng() % 4;
      Budget b;
      auto gens = random_tuples(1 + rng() % 2, m, alg.size(), rng);
      const auto f = generate_subpower(alg, m, gens, false, b);
      if (rng() % 3) {
        const auto more = random_tuples(1 + rng() % 2, m, alg.size(), rng);
        gens.insert(gens.end(), more.begin(), more.end());
      }
      const auto g = generate_subpower(alg, m, gens, false, b);
      check(fg_equal(f, g, 2) == (f == g),
            std::string(file) + ": fg_equal disagrees with set equality");
    }
  }
}

void embedding_order(const Context&, Check& check) {
  const auto words = all_words(2, 7);
  for (const auto& a : words)
    for (const auto& b : words) {
      const auto h = lea_witness(a, b);
      const auto all = oracle::embeddings(a.letters(), b.letters(), 2);
      check(h.has_value() == !all.empty(),
            "lea vs oracle at " + to_string(a) + " / " + to_string(b));
      if (h) check(is_witness(a, b, *h), "witness invalid");
    }
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10000; ++i) {
    const Word a = random_word(3, 8, rng);
    const Word b =
        (i % 2) ? random_extension(a, rng() % 3, rng) : random_word(3, 8, rng);
    const Word c =
        (i % 3) ? random_extension(b, rng() % 3, rng) : random_word(3, 8, rng);
    check(lea(a, a), "reflexivity");
    if (lea(a, b) && lea(b, a)) check(a == b, "antisymmetry");
    if (lea(a, b) && lea(b, c)) check(lea(a, c), "transitivity");
  }
}

void pullback(const Context&, Check& check) {
  std::mt19937_64 rng(34);
  std::size_t samples = 0;
  while (samples < 10000) {
    const std::size_t t = 2 + rng() % 2;
    const Word a = random_word(t, 6, rng);
    const Word b = random_extension(a, rng() % 4, rng);
    const auto h = lea_witness(a, b);
    check(h.has_value(), "extension not recognized");
    if (!h) continue;
    std::vector<Element> c(a.length());
    for (auto& x : c) x = static_cast<Element>(rng() % t);
    if (!lex_lt(c, a.letters())) continue;
    ++samples;
    const Tab tb = tab(a, b, *h);
    check(tab_apply(a.letters(), tb) == b.letters(), "Tab pullback of a != b");
    check(lex_lt(tab_apply(c, tb), b.letters()), "Tab pullback not below b");
  }
}

void forks_along_order(const Context& ctx, Check& check) {
  const auto z2 = ctx.load("z2group.alg");
  const auto pool = seed_pool();
  const std::size_t len = 4;
  const auto words = all_words(2, len);
  std::vector<PairSet> alphas;
  for (unsigned m = 0; m < 16; ++m) {
    PairSet a;
    for (unsigned i = 0; i < 4; ++i)
      if (m >> i & 1) a.push_back({i >> 1, i & 1});
    alphas.push_back(a);
  }
  std::vector<std::vector<std::size_t>> above(words.size());
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = 0; j < words.size(); ++j)
      if (lea(words[i], words[j])) above[i].push_back(j);
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i; j < pool.size(); ++j) {
      Budget b;
      const std::vector<Seed> seeds{pool[i], pool[j]};
      const Clonoid c = generate_clonoid(z2, 2, seeds, len, b);
      std::vector<PairSet> forks;
      for (const auto& w : words) forks.push_back(phi_forks(c, w));
      for (std::size_t x = 0; x < words.size(); ++x)
        for (std::size_t y : above[x])
          check(pair_subset(forks[y], forks[x]),
                "fork grows from " + to_string(words[x]) + " to " +
                    to_string(words[y]));
      for (const auto& alpha : alphas) {
        std::vector<bool> in(words.size());
        for (std::size_t x = 0; x < words.size(); ++x)
          in[x] = pair_subset(forks[x], alpha);
        const auto ps = psi(c, alpha, len);
        std::size_t count = 0;
        for (std::size_t x = 0; x < words.size(); ++x) {
          count += in[x];
          if (in[x])
            for (std::size_t y : above[x])
              check(in[y], "psi not upward closed");
        }
        check(ps.size() == count, "psi disagrees with its definition");
      }
    }
}

void clonoid_criterion(const Context& ctx, Check& check) {
  const auto z2 = ctx.load("z2group.alg");
  const auto pool = seed_pool();
  std::mt19937_64 rng(66);
  const std::size_t n_max = 3, len = 3, k = 2;
  auto random_seeds = [&](std::size_t count) {
    std::vector<Seed> s;
    for (std::size_t i = 0; i < count; ++i) s.push_back(pool[rng() % pool.size()]);
    return s;
  };
  auto gen = [&](const std::vector<Seed>& seeds) {
    Budget b;
    return generate_clonoid(z2, 2, seeds, n_max, b);
  };
  // Bounded converse: a passing verdict must come with layerwise inclusion.
  auto consistent = [&](const Clonoid& c, const Clonoid& d,
                        const CriterionResult& r) {
    if (r.verdict != CriterionVerdict::fails)
      check(layers_included(c, d), "criterion passed without inclusion");
  };
  for (int i = 0; i < 100; ++i) {
    const auto small = random_seeds(rng() % 3);
    auto big = small;
    const auto extra = random_seeds(1 + rng() % 2);
    big.insert(big.end(), extra.begin(), extra.end());
    const Clonoid c = gen(small), d = gen(big);
    const auto r = clonoid_leq_criterion(c, d, k, len);
    check(r.verdict == CriterionVerdict::holds, "nested pair not 'holds'");
    consistent(c, d, r);
  }
  int built = 0;
  while (built < 100) {
    const auto base = random_seeds(rng() % 3);
    const Clonoid d = gen(base);
    // C contains D and a seed outside D, so C is not below D.
    const Seed s = pool[rng() % pool.size()];
    if (d.layer(s.arity).contains(s.table)) continue;
    ++built;
    auto seeds = base;
    seeds.push_back(s);
    const Clonoid c = gen(seeds);
    const auto r = clonoid_leq_criterion(c, d, k, len);
    check(r.verdict == CriterionVerdict::fails,
          "C not below D but no witness");
    check(r.low_arity_witness || (r.word && r.pair), "witness missing");
    consistent(c, d, r);
  }
  for (int i = 0; i < 300; ++i) {
    const Clonoid c = gen(random_seeds(1 + rng() % 2));
    const Clonoid d = gen(random_seeds(1 + rng() % 2));
    consistent(c, d, clonoid_leq_criterion(c, d, k, len));
  }
}

void variety_pipeline(const Context& ctx, Check& check) {
  const auto trivial = ctx.load("trivial.alg");
  const auto z2 = ctx.load("z2group.alg");
  const auto z4 = ctx.load("z4group.alg");
  const auto z2z2 = ctx.load("z2xz2.alg");
  auto member = [](const FiniteAlgebra& b, const FiniteAlgebra& a) {
    Budget budget;
    return var_member(b, a, budget).member;
  };
  check(member(trivial, z2), "trivial in Var(Z2)");
  check(member(z2, z4), "Z2 in Var(Z4)");
  check(!member(z2, trivial), "Z2 not in the trivial variety");
  check(!member(z4, z2), "Z4 not in Var(Z2)");

  Budget b;
  const auto sc = subcovers(z4, 2, b);
  check(sc.maximal.size() == 1, "Z4 has exactly one subcover class");
  if (sc.maximal.size() == 1)
    check(sc.maximal[0].quotient_sizes.front() == 2,
          "subcover relatively free algebra on 1 generator has 2 elements");

  const auto c4 = is_cardinality_critical(z4, 10'000'000, b);
  check(c4.critical, "Z4 is cardinality critical");
  check(!is_cardinality_critical(z2z2, 10'000'000, b).critical,
        "Z2 x Z2 is not cardinality critical");

  // Var(Z4) from its critical members: sizes 1..3 by enumeration, size 4
  // by the two groups of order 4 checked directly.
  std::vector<FiniteAlgebra> criticals;
  for (std::size_t s = 1; s <= 3; ++s)
    for (const auto& m : enumerate_members(z4, s, 10'000'000, b))
      if (is_cardinality_critical(m, 10'000'000, b).critical)
        criticals.push_back(m);
  for (const auto& m : {z4, z2z2})
    if (is_cardinality_critical(m, 10'000'000, b).critical)
      criticals.push_back(m);
  const auto product = direct_product(criticals, "criticals");
  check(member(z4, product), "Z4 in the variety of its critical members");
  check(member(product, z4), "critical members lie in Var(Z4)");
}

void galois(const Context& ctx, Check& check) {
  const auto z4 = ctx.load("z4group.alg");
  const std::vector<FiniteAlgebra> ws{ctx.load("trivial.alg"),
                                      ctx.load("z2group.alg"), z4};
  for (const auto& w1 : ws)
    for (const auto& w2 : ws) {
      Budget b;
      const auto r = galois_check(z4, w1, w2, 2, b);
      Budget mb;
      const bool contained = var_member(w1, w2, mb).member;
      check(r.verdict == GaloisVerdict::agreement,
            w1.name() + " vs " + w2.name() + ": " + to_string(r.verdict));
      check(r.contained == contained, "membership mismatch");
    }
}

std::vector<std::string> cli_commands(const Context& ctx) {
  const auto p = [&](const char* f) { return quote(ctx.path(f)); };
  return {
      "edge-term " + p("z2group.alg") + " --k 2",
      "edge-term " + p("lattice2.alg") + " --k 3",
      "edge-term " + p("lattice2.alg") + " --k 2",
      "edge-term " + p("set2.alg") + " --min --kmax 4",
      "member " + p("trivial.alg") + " --in " + p("z2group.alg"),
      "member " + p("z2group.alg") + " --in " + p("z4group.alg"),
      "member " + p("z4group.alg") + " --in " + p("z2group.alg"),
      "member " + p("z3group.alg") + " --in " + p("z4group.alg"),
      "subcovers " + p("z4group.alg") + " --bound 2",
      "critical " + p("z4group.alg"),
      "critical " + p("z2xz2.alg"),
      "forks " + p("z4group.alg") + " --width 3 --gens '1 2 3' --super '0 1 1'",
      "wpo lea '0 1' '1 0 1' --t 2",
      "wpo tab '0 1' '0 0 1' --t 2",
      "clonoid gen " + p("affine.seeds.json") + " --bound 3",
      "clonoid forks " + p("affine.seeds.json") + " --word '0 1'",
      "clonoid leq " + p("linear.seeds.json") + " " + p("affine.seeds.json") +
          " --k 2 --len 3",
      "clonoid leq " + p("affine.seeds.json") + " " +
          p("constants.seeds.json") + " --k 2 --len 3",
      "clonoid th " + p("z4group.alg") + " " + p("z2group.alg") + " --arity 1",
      "clonoid galois " + p("z4group.alg") + " " + p("z2group.alg") + " " +
          p("z4group.alg"),
      "clonoid galois " + p("z4group.alg") + " " + p("z4group.alg") + " " +
          p("trivial.alg"),
  };
}

void determinism(const Context& ctx, Check& check) {
  for (const auto& c : cli_commands(ctx)) {
    const auto first = run_cli(ctx, c);
    const auto second = run_cli(ctx, c);
    check(first.has_value(), "command failed: " + c);
    check(first && second && *first == *second, "output differs: " + c);
  }
}

struct Criterion {
  int number;
  std::string name;
  double limit_seconds;  // 0: no limit
  std::function<void(const Context&, Check&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Runs the acceptance criteria"};
  Context ctx;
  std::vector<int> only;
  app.add_option("--cli", ctx.cli, "Path of the ucaw executable")->required();
  app.add_option("--data", ctx.data, "Directory with the algebra files")
      ->required();
  app.add_option("--only", only, "Run only these criteria");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "edge-term detection", 5, edge_terms},
      {2, "fork criterion oracle suite", 30, fork_criterion},
      {3, "embedding order correctness", 60, embedding_order},
      {4, "Tab pullback suite", 10, pullback},
      {5, "fork antitonicity and upward-closed psi", 60, forks_along_order},
      {6, "clonoid inclusion criterion suite", 120, clonoid_criterion},
      {7, "variety pipeline", 60, variety_pipeline},
      {8, "Galois correspondence suite", 30, galois},
      {9, "CLI determinism", 0, determinism},
  };
  bool all_pass = true;
  for (const auto& c : criteria) {
    if (!only.empty() &&
        std::find(only.begin(), only.end(), c.number) == only.end())
      continue;
    Check check;
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.run(ctx, check);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    const bool in_time = c.limit_seconds == 0 || secs < c.limit_seconds;
    const bool pass = check.count == 0 && error.empty() && in_time;
    all_pass = all_pass && pass;
    std::ostringstream line;
    line << "criterion " << c.number << " (" << c.name
         << "): " << (pass ? "PASS" : "FAIL");
    char t[64];
    std::snprintf(t, sizeof t, " %.2f s", secs);
    line << t;
    if (c.limit_seconds > 0) line << " / limit " << c.limit_seconds << " s";
    if (!error.empty()) line << "; error: " << error;
    if (check.count) line << "; " << check.count << " failed checks";
    if (!in_time) line << "; over time limit";
    std::cout << line.str() << std::endl;
    for (const auto& f : check.failures) std::cout << "    " << f << std::endl;
  }
  return all_pass ? 0 : 1;
}
