// Command-line front end. Talks to the library only through the C API.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <string>
#include <vector>

#include "ucaw/ucaw.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInternal = 1;

struct Failure {
  ucaw_status status;
  std::string message;
};

int exit_code(ucaw_status s) {
  switch (s) {
    case UCAW_OK:
      return 0;
    case UCAW_ERR_BUDGET:
      return kExitBudget;
    case UCAW_ERR_INTERNAL:
      return kExitInternal;
    default:
      return kExitUsage;
  }
}

void check(ucaw_status s) {
  if (s != UCAW_OK) throw Failure{s, ucaw_last_error()};
}

using AlgebraPtr = std::unique_ptr<ucaw_algebra, decltype(&ucaw_algebra_free)>;
using ClonoidPtr =
    std::unique_ptr<ucaw_clonoid_spec, decltype(&ucaw_clonoid_free)>;

AlgebraPtr load_algebra(const std::string& path) {
  ucaw_algebra* a = nullptr;
  check(ucaw_algebra_load(path.c_str(), &a));
  return AlgebraPtr(a, ucaw_algebra_free);
}

ClonoidPtr load_clonoid(const std::string& path) {
  ucaw_clonoid_spec* c = nullptr;
  check(ucaw_clonoid_load(path.c_str(), &c));
  return ClonoidPtr(c, ucaw_clonoid_free);
}

// Runs a C API call that produces a JSON string and parses the result.
Json call(const std::function<ucaw_status(char**)>& f) {
  char* out = nullptr;
  check(f(&out));
  std::unique_ptr<char, decltype(&ucaw_string_free)> guard(out,
                                                           ucaw_string_free);
  return Json::parse(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ucaw: workbench for finite universal algebra"};
  app.require_subcommand(1);
  // Global options may follow the subcommand.
  app.fallthrough();
  app.set_version_flag("--version", ucaw_version());

  ucaw_options options;
  ucaw_options_init(&options);
  bool timing = false;
  app.add_option("--max-tuples", options.max_tuples,
                 "Tuples the closures may create (default 10000000)");
  app.add_option("--max-ms", options.max_millis,
                 "Wall-clock limit in milliseconds (default: none)");
  app.add_flag("--timing", timing, "Print elapsed time to stderr");

  std::function<Json()> action;
  std::string file, file2, file3;

  auto* info = app.add_subcommand("info", "Describe an algebra file");
  info->add_option("FILE", file, "Algebra file")->required();
  info->callback([&] {
    action = [&] {
      auto a = load_algebra(file);
      return call([&](char** o) { return ucaw_info(a.get(), o); });
    };
  });

  std::size_t k = 2, kmax = 4, nu = 0;
  bool min = false, malcev = false;
  auto* edge = app.add_subcommand("edge-term",
                                  "Search for edge, Mal'cev or NU terms");
  edge->add_option("FILE", file, "Algebra file")->required();
  edge->add_option("--k", k, "Edge arity k (term has k+1 variables)");
  edge->add_flag("--min", min, "Least k <= --kmax with a k-edge term");
  edge->add_option("--kmax", kmax, "Upper bound for --min");
  edge->add_flag("--malcev", malcev, "Search for a Mal'cev term");
  edge->add_option("--nu", nu, "Search for a near-unanimity term of this arity");
  edge->callback([&] {
    action = [&] {
      auto a = load_algebra(file);
      if (malcev)
        return call([&](char** o) {
          return ucaw_malcev_term(a.get(), &options, o);
        });
      if (nu)
        return call([&](char** o) {
          return ucaw_nu_term(a.get(), nu, &options, o);
        });
      if (min)
        return call([&](char** o) {
          return ucaw_min_edge_arity(a.get(), kmax, &options, o);
        });
      return call(
          [&](char** o) { return ucaw_edge_term(a.get(), k, &options, o); });
    };
  });

  std::size_t arity = 1;
  auto* clone = app.add_subcommand("clone-size",
                                   "Number of term operations of an arity");
  clone->add_option("FILE", file, "Algebra file")->required();
  clone->add_option("--arity", arity, "Arity")->required();
  clone->callback([&] {
    action = [&] {
      auto a = load_algebra(file);
      return call([&](char** o) {
        return ucaw_clone_size(a.get(), arity, &options, o);
      });
    };
  });

  std::size_t gens_count = 1;
  auto* free = app.add_subcommand(
      "free", "Free algebra of the generated variety (cached in UCAW_CACHE_DIR)");
  free->add_option("FILE", file, "Algebra file")->required();
  free->add_option("--gens", gens_count, "Number of free generators")
      ->required();
  free->callback([&] {
    action = [&] {
      auto a = load_algebra(file);
      const char* cache = std::getenv("UCAW_CACHE_DIR");
      return call([&](char** o) {
        return ucaw_free_algebra(a.get(), gens_count, cache, &options, o);
      });
    };
  });

  auto* member = app.add_subcommand("member", "Is B in the variety of A?");
  member->add_option("B", file, "Algebra file of B")->required();
  member->add_option("--in", file2, "Algebra file of A")->required();
  member->callback([&] {
    action = [&] {
      auto b = load_algebra(file);
      auto a = load_algebra(file2);
      return call([&](char** o) {
        return ucaw_member(b.get(), a.get(), &options, o);
      });
    };
  });

  std::size_t width = 1;
  std::string gens, super;
  auto* forks = app.add_subcommand(
      "forks", "Forks of a generated subpower, optionally compared with a "
               "larger one");
  forks->add_option("FILE", file, "Algebra file")->required();
  forks->add_option("--width", width, "Width m of A^m")->required();
  forks->add_option("--gens", gens, "Generators, e.g. \"0 1; 1 0\"")
      ->required();
  auto* super_opt =
      forks->add_option("--super", super, "Extra generators of G >= F");
  forks->add_option("--k", k, "Edge arity used by the comparison");
  forks->callback([&] {
    action = [&] {
      auto a = load_algebra(file);
      const char* s = super_opt->count() ? super.c_str() : nullptr;
      return call([&](char** o) {
        return ucaw_forks(a.get(), width, gens.c_str(), s, k, &options, o);
      });
    };
  });

  std::size_t bound = 2;
  auto* sub = app.add_subcommand(
      "subcovers", "Maximal proper subvarieties defined by one identity");
  sub->add_option("FILE", file, "Algebra file")->required();
  sub->add_option("--bound", bound, "Largest free generator count compared");
  sub->callback([&] {
    action = [&] {
      auto a = load_algebra(file);
      return call([&](char** o) {
        return ucaw_subcovers(a.get(), bound, &options, o);
      });
    };
  });

  std::uint64_t candidates = 10'000'000;
  auto* critical =
      app.add_subcommand("critical", "Is the algebra cardinality critical?");
  critical->add_option("FILE", file, "Algebra file")->required();
  critical->add_option("--budget", candidates,
                       "Operation tables enumerated per size (default 10^7)");
  critical->callback([&] {
    action = [&] {
      auto a = load_algebra(file);
      return call([&](char** o) {
        return ucaw_critical(a.get(), candidates, &options, o);
      });
    };
  });

  std::size_t t = 2;
  std::string word_a, word_b;
  std::vector<std::string> words;
  auto* wpo = app.add_subcommand("wpo", "Words ordered by <=_A");
  wpo->require_subcommand(1);
  auto* lea = wpo->add_subcommand("lea", "Decide a <=_A b with a witness");
  lea->add_option("A", word_a, "Word, e.g. \"0 1\"")->required();
  lea->add_option("B", word_b, "Word")->required();
  lea->add_option("--t", t, "Alphabet size");
  lea->callback([&] {
    action = [&] {
      return call([&](char** o) {
        return ucaw_wpo_lea(word_a.c_str(), word_b.c_str(), t, o);
      });
    };
  });
  auto* tab = wpo->add_subcommand("tab", "Tab map along the witness");
  tab->add_option("A", word_a, "Word")->required();
  tab->add_option("B", word_b, "Word")->required();
  tab->add_option("--t", t, "Alphabet size");
  tab->callback([&] {
    action = [&] {
      return call([&](char** o) {
        return ucaw_wpo_tab(word_a.c_str(), word_b.c_str(), t, o);
      });
    };
  });
  auto* anti = wpo->add_subcommand(
      "antichain", "Antichain test and minimal basis of the generated up-set");
  anti->add_option("WORDS", words, "Words")->required();
  anti->add_option("--t", t, "Alphabet size");
  anti->callback([&] {
    action = [&] {
      std::vector<const char*> ptrs;
      for (const auto& w : words) ptrs.push_back(w.c_str());
      return call([&](char** o) {
        return ucaw_wpo_antichain(ptrs.data(), ptrs.size(), t, o);
      });
    };
  });

  std::size_t clonoid_bound = 3, len = 3, th_arity = 1;
  std::string word;
  auto* clonoid = app.add_subcommand("clonoid", "Clonoids from seed files");
  clonoid->require_subcommand(1);
  auto* gen = clonoid->add_subcommand("gen", "Generate layers up to --bound");
  gen->add_option("SEEDS", file, "Seed file")->required();
  gen->add_option("--bound", clonoid_bound, "Arity bound N");
  gen->callback([&] {
    action = [&] {
      auto c = load_clonoid(file);
      return call([&](char** o) {
        return ucaw_clonoid_generate(c.get(), clonoid_bound, &options, o);
      });
    };
  });
  auto* cforks = clonoid->add_subcommand("forks", "Fork set at a word");
  cforks->add_option("SEEDS", file, "Seed file")->required();
  cforks->add_option("--word", word, "Word, e.g. \"0 1\"")->required();
  cforks->add_option("--bound", clonoid_bound, "Arity bound N");
  cforks->callback([&] {
    action = [&] {
      auto c = load_clonoid(file);
      return call([&](char** o) {
        return ucaw_clonoid_forks(c.get(), clonoid_bound, word.c_str(),
                                  &options, o);
      });
    };
  });
  auto* leq = clonoid->add_subcommand("leq", "Bounded test of C <= D");
  leq->add_option("C", file, "Seed file of C")->required();
  leq->add_option("D", file2, "Seed file of D")->required();
  leq->add_option("--k", k, "Edge arity of the target");
  leq->add_option("--len", len, "Largest word length checked");
  auto* leq_bound =
      leq->add_option("--bound", clonoid_bound,
                      "Arity bound N (default: max(len, t^(k-1)))");
  leq->callback([&] {
    action = [&] {
      auto c = load_clonoid(file);
      auto d = load_clonoid(file2);
      const std::size_t n = leq_bound->count() ? clonoid_bound : 0;
      return call([&](char** o) {
        return ucaw_clonoid_leq(c.get(), d.get(), k, len, n, &options, o);
      });
    };
  });
  auto* th = clonoid->add_subcommand("th", "Pairs (s^A, t^A) with s^B = t^B");
  th->add_option("A", file, "Algebra file of A")->required();
  th->add_option("B", file2, "Algebra file of B")->required();
  th->add_option("--arity", th_arity, "Arity n");
  th->callback([&] {
    action = [&] {
      auto a = load_algebra(file);
      auto b = load_algebra(file2);
      return call([&](char** o) {
        return ucaw_clonoid_th(a.get(), b.get(), th_arity, &options, o);
      });
    };
  });
  std::size_t galois_arity = 2;
  auto* galois = clonoid->add_subcommand(
      "galois", "Compare Var(B1) <= Var(B2) with the inclusion of theories");
  galois->add_option("A", file, "Algebra file of A")->required();
  galois->add_option("B1", file2, "Algebra file of B1")->required();
  galois->add_option("B2", file3, "Algebra file of B2")->required();
  galois->add_option("--arity", galois_arity, "Largest arity compared");
  galois->callback([&] {
    action = [&] {
      auto a = load_algebra(file);
      auto b1 = load_algebra(file2);
      auto b2 = load_algebra(file3);
      return call([&](char** o) {
        return ucaw_galois(a.get(), b1.get(), b2.get(), galois_arity,
                           &options, o);
      });
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  Json doc;
  doc["schema"] = 1;
  doc["command"] = std::vector<std::string>(argv + 1, argv + argc);
  const auto start = std::chrono::steady_clock::now();
  try {
    doc["result"] = action();
  } catch (const Failure& f) {
    std::fprintf(stderr, "ucaw: %s: %s\n", ucaw_status_name(f.status),
                 f.message.c_str());
    return exit_code(f.status);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "ucaw: internal error: %s\n", e.what());
    return kExitInternal;
  }
  if (timing) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    std::fprintf(stderr, "ucaw: elapsed %lld ms\n",
                 static_cast<long long>(ms));
  }
  std::cout << doc.dump(2) << '\n';
  return 0;
}
