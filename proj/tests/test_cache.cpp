#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <random>

#include "helpers.hpp"
#include "ucaw/algebra_io.hpp"
#include "ucaw/cache.hpp"

using namespace ucaw;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("ucaw-cache-test-" + std::to_string(std::random_device{}()));
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

FreeAlgebraRecord compute(const FiniteAlgebra& a, std::size_t k) {
  Budget b;
  const auto f = free_algebra(a, k, b);
  return make_record(f, b.used());
}

}  // namespace

TEST_CASE("digests depend on the algebra and the generator count") {
  const auto z4 = testing::z4();
  CHECK(free_algebra_digest(z4, 1).size() == 64);
  CHECK(free_algebra_digest(z4, 1) == free_algebra_digest(z4, 1));
  CHECK(free_algebra_digest(z4, 1) != free_algebra_digest(z4, 2));
  CHECK(free_algebra_digest(z4, 1) != free_algebra_digest(testing::z2(), 1));
  // SHA-256 of the canonical text plus the generator line.
  CHECK(free_algebra_digest(testing::trivial(), 0) ==
        free_algebra_digest(parse_algebra(serialize_algebra(testing::trivial())), 0));
}

TEST_CASE("store then load returns the record") {
  TempDir dir;
  const FreeAlgebraCache cache(dir.path);
  const auto a = testing::lattice();
  CHECK_FALSE(cache.load(a, 2).has_value());
  const auto r = compute(a, 2);
  cache.store(a, 2, r);
  CHECK(fs::exists(cache.entry_path(a, 2)));
  std::string problem;
  const auto hit = cache.load(a, 2, &problem);
  REQUIRE(hit);
  CHECK(problem.empty());
  CHECK(hit->terms == r.terms);
  CHECK(hit->tables == r.tables);
  CHECK(hit->tuples_used == r.tuples_used);
  CHECK(hit->size() == 4);
}

TEST_CASE("a modified algebra misses") {
  TempDir dir;
  const FreeAlgebraCache cache(dir.path);
  const auto a = testing::z4();
  cache.store(a, 1, compute(a, 1));
  CHECK(cache.load(a, 1).has_value());
  CHECK_FALSE(cache.load(testing::z2(), 1).has_value());
  CHECK_FALSE(cache.load(a, 2).has_value());
}

TEST_CASE("corrupt entries are reported and ignored") {
  TempDir dir;
  const FreeAlgebraCache cache(dir.path);
  const auto a = testing::z4();
  cache.store(a, 1, compute(a, 1));
  const auto path = cache.entry_path(a, 1);
  const std::string good = read_text_file(path);

  auto overwrite = [&](const std::string& text) {
    std::ofstream(path, std::ios::trunc) << text;
  };
  std::string problem;

  overwrite("{not json");
  CHECK_FALSE(cache.load(a, 1, &problem).has_value());
  CHECK(problem.find("corrupt") != std::string::npos);

  // Drop the last element but keep the declared size.
  auto doc = nlohmann::json::parse(good);
  doc["terms"].erase(doc["terms"].size() - 1);
  overwrite(doc.dump());
  problem.clear();
  CHECK_FALSE(cache.load(a, 1, &problem).has_value());
  CHECK(problem.find("element count") != std::string::npos);

  doc = nlohmann::json::parse(good);
  doc["tables"][0][0] = 9;
  overwrite(doc.dump());
  CHECK_FALSE(cache.load(a, 1).has_value());

  doc = nlohmann::json::parse(good);
  doc["terms"][0] = "mul(x1";
  overwrite(doc.dump());
  CHECK_FALSE(cache.load(a, 1).has_value());

  // Recomputing replaces the entry.
  cache.store(a, 1, compute(a, 1));
  CHECK(cache.load(a, 1).has_value());
  CHECK(read_text_file(path) == good);
}
