#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ucaw {

/// Elements of a finite universe {0, ..., n-1}.
using Element = std::uint32_t;
using Tuple = std::vector<Element>;
/// Function table indexed by tuple rank (argument 1 most significant).
using Table = std::vector<Element>;
/// Sorted, duplicate-free set of element pairs.
using PairSet = std::vector<std::pair<Element, Element>>;

struct OperationSymbol {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const OperationSymbol&,
                         const OperationSymbol&) = default;
};

/// Ordered list of operation symbols. The order fixes the iteration order of
/// every closure, which keeps all results reproducible.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<OperationSymbol> symbols);

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  const OperationSymbol& operator[](std::size_t i) const {
    return symbols_[i];
  }
  std::optional<std::size_t> find(std::string_view name) const;
  bool has_constants() const;

  auto begin() const noexcept { return symbols_.begin(); }
  auto end() const noexcept { return symbols_.end(); }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<OperationSymbol> symbols_;
};

/// Mixed-radix bijection between {0..base-1}^width and {0..base^width - 1}.
/// Coordinate 1 is the most significant digit, so rank order is exactly the
/// lexicographic order of tuples.
class TupleRank {
 public:
  TupleRank(std::size_t width, std::size_t base);

  std::size_t width() const noexcept { return width_; }
  std::size_t base() const noexcept { return base_; }
  std::uint64_t count() const noexcept { return count_; }

  std::uint64_t rank(std::span<const Element> tuple) const;
  Tuple unrank(std::uint64_t r) const;
  void unrank_into(std::uint64_t r, std::span<Element> out) const;

 private:
  std::size_t width_;
  std::size_t base_;
  std::uint64_t count_;
};

/// base^exponent, or nullopt when it does not fit into 64 bits.
std::optional<std::uint64_t> checked_power(std::uint64_t base,
                                           std::uint64_t exponent);

/// Algebra on {0, ..., size-1} given by one total table per symbol.
class FiniteAlgebra {
 public:
  FiniteAlgebra(std::string name, std::size_t size, Signature signature,
                std::vector<Table> tables);

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return size_; }
  const Signature& signature() const noexcept { return signature_; }
  const std::vector<Table>& tables() const noexcept { return tables_; }
  std::span<const Element> table(std::size_t op) const { return tables_[op]; }

  Element apply(std::size_t op, std::span<const Element> args) const;

  FiniteAlgebra renamed(std::string name) const;

  /// Equal universe size, signature and tables; the name is ignored.
  bool same_structure(const FiniteAlgebra& other) const;

  friend bool operator==(const FiniteAlgebra&,
                         const FiniteAlgebra&) = default;

 private:
  std::string name_;
  std::size_t size_;
  Signature signature_;
  std::vector<Table> tables_;
};

/// Rank of `args` in base `n`.
inline std::size_t table_index(std::span<const Element> args, std::size_t n) {
  std::size_t index = 0;
  for (Element a : args) index = index * n + a;
  return index;
}

/// Direct product; element (c_1, ..., c_r) is encoded by its rank with the
/// first factor most significant. All factors must share one signature.
FiniteAlgebra direct_product(std::span<const FiniteAlgebra> factors,
                             std::string name = {});

/// The isomorphic copy whose concatenated operation tables are
/// lexicographically least over all relabelings of the universe.
/// Runs over all size! permutations; meant for size <= 6.
FiniteAlgebra canonical_form(const FiniteAlgebra& alg);

/// Small standard algebras used by tests, examples and the data directory.
namespace algebras {

/// Z_n as (mul, inv, e) with mul = addition mod n.
FiniteAlgebra cyclic_group(std::size_t n);
/// ({0,1}, meet, join).
FiniteAlgebra two_element_lattice();
/// n-element set with the empty signature.
FiniteAlgebra bare_set(std::size_t n);

}  // namespace algebras

}  // namespace ucaw
