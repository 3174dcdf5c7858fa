#include "ucaw/cache.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <json.hpp>

#include "ucaw/algebra_io.hpp"
#include "ucaw/error.hpp"

namespace ucaw {

using nlohmann::ordered_json;

FreeAlgebraRecord make_record(const FreeAlgebra& free,
                              std::uint64_t tuples_used) {
  FreeAlgebraRecord r;
  r.generators = free.generator_count();
  r.tuples_used = tuples_used;
  const auto& sig = free.base().signature();
  for (std::size_t i = 0; i < free.size(); ++i) {
    r.terms.push_back(to_string(free.term(i), sig));
    auto f = free.term_function(i);
    r.tables.emplace_back(f.begin(), f.end());
  }
  return r;
}

std::string free_algebra_digest(const FiniteAlgebra& alg, std::size_t k) {
  const std::string input =
      serialize_algebra(alg) + "generators=" + std::to_string(k) + "\n";
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(input.data(), input.size(), md, &len, EVP_sha256(),
                 nullptr) != 1)
    throw Error("SHA-256 computation failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

FreeAlgebraCache::FreeAlgebraCache(std::filesystem::path dir)
    : dir_(std::move(dir)) {}

std::filesystem::path FreeAlgebraCache::entry_path(const FiniteAlgebra& alg,
                                                   std::size_t k) const {
  return dir_ / ("free-" + free_algebra_digest(alg, k) + ".json");
}

std::optional<FreeAlgebraRecord> FreeAlgebraCache::load(
    const FiniteAlgebra& alg, std::size_t k, std::string* problem) const {
  const auto path = entry_path(alg, k);
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;
  auto corrupt = [&](const std::string& why) -> std::optional<FreeAlgebraRecord> {
    if (problem) *problem = "corrupt cache entry " + path.string() + ": " + why;
    return std::nullopt;
  };
  try {
    const auto doc = ordered_json::parse(read_text_file(path));
    FreeAlgebraRecord r;
    if (doc.at("digest").get<std::string>() != free_algebra_digest(alg, k))
      return corrupt("digest mismatch");
    r.generators = doc.at("generators").get<std::size_t>();
    r.tuples_used = doc.at("tuples_used").get<std::uint64_t>();
    const auto size = doc.at("size").get<std::size_t>();
    r.terms = doc.at("terms").get<std::vector<std::string>>();
    r.tables = doc.at("tables").get<std::vector<Table>>();
    if (r.generators != k) return corrupt("generator count mismatch");
    if (size == 0 || r.terms.size() != size || r.tables.size() != size)
      return corrupt("element count mismatch");
    const std::size_t width = TupleRank(k, alg.size()).count();
    for (std::size_t i = 0; i < size; ++i) {
      if (r.tables[i].size() != width) return corrupt("bad table width");
      for (Element v : r.tables[i])
        if (v >= alg.size()) return corrupt("table entry out of range");
      const Term t = parse_term(r.terms[i], alg.signature());
      if (t.max_variable() > k) return corrupt("term uses too many variables");
    }
    return r;
  } catch (const std::exception& e) {
    return corrupt(e.what());
  }
}

void FreeAlgebraCache::store(const FiniteAlgebra& alg, std::size_t k,
                             const FreeAlgebraRecord& record) const {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec)
    throw IoError("cannot create cache directory " + dir_.string() + ": " +
                  ec.message());
  ordered_json doc;
  doc["schema"] = 1;
  doc["digest"] = free_algebra_digest(alg, k);
  doc["generators"] = record.generators;
  doc["tuples_used"] = record.tuples_used;
  doc["size"] = record.size();
  doc["terms"] = record.terms;
  doc["tables"] = record.tables;
  const auto path = entry_path(alg, k);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write cache entry " + tmp.string());
    out << doc.dump() << '\n';
    if (!out) throw IoError("cannot write cache entry " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw IoError("cannot move cache entry into place: " + ec.message());
}

}  // namespace ucaw
