#include "ucaw/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ucaw/error.hpp"

namespace ucaw {

Signature::Signature(std::vector<OperationSymbol> symbols)
    : symbols_(std::move(symbols)) {
  std::set<std::string_view> seen;
  for (const auto& s : symbols_) {
    if (s.name.empty()) throw InvalidArgument("empty operation symbol name");
    if (!seen.insert(s.name).second)
      throw InvalidArgument("duplicate operation symbol '" + s.name + "'");
  }
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name == name) return i;
  return std::nullopt;
}

bool Signature::has_constants() const {
  return std::any_of(symbols_.begin(), symbols_.end(),
                     [](const OperationSymbol& s) { return s.arity == 0; });
}

std::optional<std::uint64_t> checked_power(std::uint64_t base,
                                           std::uint64_t exponent) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    if (base != 0 && result > UINT64_MAX / base) return std::nullopt;
    result *= base;
  }
  return result;
}

TupleRank::TupleRank(std::size_t width, std::size_t base)
    : width_(width), base_(base) {
  if (base == 0) throw InvalidArgument("tuple rank base must be positive");
  auto c = checked_power(base, width);
  if (!c)
    throw InvalidArgument("tuple rank: " + std::to_string(base) + "^" +
                          std::to_string(width) + " exceeds 64 bits");
  count_ = *c;
}

std::uint64_t TupleRank::rank(std::span<const Element> tuple) const {
  if (tuple.size() != width_)
    throw InvalidArgument("rank: tuple width " + std::to_string(tuple.size()) +
                          " != " + std::to_string(width_));
  std::uint64_t r = 0;
  for (Element a : tuple) {
    if (a >= base_)
      throw InvalidArgument("rank: entry " + std::to_string(a) +
                            " out of range for base " + std::to_string(base_));
    r = r * base_ + a;
  }
  return r;
}

void TupleRank::unrank_into(std::uint64_t r, std::span<Element> out) const {
  if (r >= count_)
    throw InvalidArgument("unrank: rank " + std::to_string(r) +
                          " out of range");
  for (std::size_t i = width_; i-- > 0;) {
    out[i] = static_cast<Element>(r % base_);
    r /= base_;
  }
}

Tuple TupleRank::unrank(std::uint64_t r) const {
  Tuple out(width_);
  unrank_into(r, out);
  return out;
}

FiniteAlgebra::FiniteAlgebra(std::string name, std::size_t size,
                             Signature signature, std::vector<Table> tables)
    : name_(std::move(name)),
      size_(size),
      signature_(std::move(signature)),
      tables_(std::move(tables)) {
  if (size_ == 0) throw InvalidArgument("algebra size must be positive");
  if (tables_.size() != signature_.size())
    throw InvalidArgument("algebra: " + std::to_string(tables_.size()) +
                          " tables for " + std::to_string(signature_.size()) +
                          " symbols");
  for (std::size_t op = 0; op < tables_.size(); ++op) {
    const auto& sym = signature_[op];
    auto expected = checked_power(size_, sym.arity);
    if (!expected || *expected != tables_[op].size())
      throw InvalidArgument("operation '" + sym.name + "': table length " +
                            std::to_string(tables_[op].size()) +
                            " does not match size^arity");
    for (std::size_t i = 0; i < tables_[op].size(); ++i)
      if (tables_[op][i] >= size_)
        throw InvalidArgument("operation '" + sym.name + "': entry " +
                              std::to_string(tables_[op][i]) + " at index " +
                              std::to_string(i) + " out of range");
  }
}

Element FiniteAlgebra::apply(std::size_t op,
                             std::span<const Element> args) const {
  return tables_[op][table_index(args, size_)];
}

FiniteAlgebra FiniteAlgebra::renamed(std::string name) const {
  FiniteAlgebra copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

bool FiniteAlgebra::same_structure(const FiniteAlgebra& other) const {
  return size_ == other.size_ && signature_ == other.signature_ &&
         tables_ == other.tables_;
}

FiniteAlgebra direct_product(std::span<const FiniteAlgebra> factors,
                             std::string name) {
  if (factors.empty())
    throw InvalidArgument("direct product of no factors");
  const Signature& sig = factors.front().signature();
  std::size_t size = 1;
  for (const auto& f : factors) {
    if (f.signature() != sig)
      throw InvalidArgument("direct product: signature mismatch");
    size *= f.size();
  }
  if (name.empty()) {
    for (std::size_t i = 0; i < factors.size(); ++i)
      name += (i ? "x" : "") + factors[i].name();
  }
  // Component c_i of element e: digit i of e in the mixed radix of sizes.
  auto component = [&](std::size_t e, std::size_t i) {
    std::size_t below = 1;
    for (std::size_t j = i + 1; j < factors.size(); ++j)
      below *= factors[j].size();
    return static_cast<Element>((e / below) % factors[i].size());
  };
  std::vector<Table> tables;
  for (std::size_t op = 0; op < sig.size(); ++op) {
    const std::size_t arity = sig[op].arity;
    const TupleRank args_rank(arity, size);
    Table table(args_rank.count());
    Tuple args(arity), comp(arity);
    for (std::uint64_t r = 0; r < args_rank.count(); ++r) {
      args_rank.unrank_into(r, args);
      std::size_t value = 0;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        for (std::size_t j = 0; j < arity; ++j)
          comp[j] = component(args[j], i);
        value = value * factors[i].size() + factors[i].apply(op, comp);
      }
      table[r] = static_cast<Element>(value);
    }
    tables.push_back(std::move(table));
  }
  return FiniteAlgebra(std::move(name), size, sig, std::move(tables));
}

namespace {

// Tables of the copy in which element a is renamed perm[a].
std::vector<Table> relabel(const FiniteAlgebra& alg,
                           std::span<const Element> perm) {
  const std::size_t n = alg.size();
  std::vector<Element> inverse(n);
  for (std::size_t a = 0; a < n; ++a) inverse[perm[a]] = static_cast<Element>(a);
  std::vector<Table> out;
  Tuple args;
  for (std::size_t op = 0; op < alg.signature().size(); ++op) {
    const std::size_t arity = alg.signature()[op].arity;
    const TupleRank rank(arity, n);
    Table table(rank.count());
    args.resize(arity);
    for (std::uint64_t r = 0; r < rank.count(); ++r) {
      rank.unrank_into(r, args);
      for (auto& a : args) a = inverse[a];
      table[r] = perm[alg.apply(op, args)];
    }
    out.push_back(std::move(table));
  }
  return out;
}

}  // namespace

FiniteAlgebra canonical_form(const FiniteAlgebra& alg) {
  std::vector<Element> perm(alg.size());
  std::iota(perm.begin(), perm.end(), Element{0});
  std::vector<Table> best = alg.tables();
  do {
    auto candidate = relabel(alg, perm);
    if (candidate < best) best = std::move(candidate);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return FiniteAlgebra(alg.name(), alg.size(), alg.signature(),
                       std::move(best));
}

namespace algebras {

FiniteAlgebra cyclic_group(std::size_t n) {
  Signature sig({{"mul", 2}, {"inv", 1}, {"e", 0}});
  Table mul(n * n), inv(n);
  for (std::size_t a = 0; a < n; ++a) {
    inv[a] = static_cast<Element>((n - a) % n);
    for (std::size_t b = 0; b < n; ++b)
      mul[a * n + b] = static_cast<Element>((a + b) % n);
  }
  return FiniteAlgebra("Z" + std::to_string(n), n, std::move(sig),
                       {std::move(mul), std::move(inv), Table{0}});
}

FiniteAlgebra two_element_lattice() {
  Signature sig({{"meet", 2}, {"join", 2}});
  return FiniteAlgebra("L2", 2, std::move(sig),
                       {Table{0, 0, 0, 1}, Table{0, 1, 1, 1}});
}

FiniteAlgebra bare_set(std::size_t n) {
  return FiniteAlgebra("S" + std::to_string(n), n, Signature{}, {});
}

}  // namespace algebras

}  // namespace ucaw
