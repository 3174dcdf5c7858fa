#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ucaw/algebra.hpp"
#include "ucaw/variety.hpp"

namespace ucaw {

/// What the cache keeps of a free algebra: witness terms and term functions
/// in carrier order.
struct FreeAlgebraRecord {
  std::size_t generators = 0;
  std::uint64_t tuples_used = 0;
  std::vector<std::string> terms;
  std::vector<Table> tables;

  std::size_t size() const noexcept { return terms.size(); }
};

FreeAlgebraRecord make_record(const FreeAlgebra& free,
                              std::uint64_t tuples_used);

/// SHA-256 (hex) of the canonical serialization of `alg` and k.
std::string free_algebra_digest(const FiniteAlgebra& alg, std::size_t k);

/// Content-addressed store of free algebras in one directory.
class FreeAlgebraCache {
 public:
  explicit FreeAlgebraCache(std::filesystem::path dir);

  std::filesystem::path entry_path(const FiniteAlgebra& alg,
                                   std::size_t k) const;

  /// Cached record, or nullopt on a miss. A corrupt entry counts as a miss
  /// and leaves a description in *problem.
  std::optional<FreeAlgebraRecord> load(const FiniteAlgebra& alg,
                                        std::size_t k,
                                        std::string* problem = nullptr) const;
  /// Writes through a temporary file so readers never see partial entries.
  void store(const FiniteAlgebra& alg, std::size_t k,
             const FreeAlgebraRecord& record) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace ucaw
