#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ucaw/algebra.hpp"
#include "ucaw/budget.hpp"
#include "ucaw/term.hpp"
#include "ucaw/tuple_set.hpp"

namespace ucaw {

/// Ambient product A_1 x ... x A_m in which subuniverses are generated.
/// Coordinates point into a short list of distinct factors that share one
/// signature; a power A^m has a single factor.
class PowerDomain {
 public:
  static PowerDomain power(FiniteAlgebra base, std::size_t width);
  /// Blocks (A, m_A) laid out left to right: A^m_A x B^m_B x ...
  static PowerDomain product(
      std::vector<std::pair<FiniteAlgebra, std::size_t>> blocks);

  std::size_t width() const noexcept { return factor_of_.size(); }
  const Signature& signature() const noexcept {
    return factors_.front().signature();
  }
  std::span<const FiniteAlgebra> factors() const noexcept { return factors_; }
  const FiniteAlgebra& factor_at(std::size_t coordinate) const {
    return factors_[factor_of_[coordinate]];
  }
  std::size_t factor_index(std::size_t coordinate) const {
    return factor_of_[coordinate];
  }

  /// Coordinatewise value of the constant `op`.
  Tuple constant_tuple(std::size_t op) const;
  /// Coordinatewise application; args[i] points at a tuple of this domain.
  void apply(std::size_t op, std::span<const Element* const> args,
             Element* out) const;
  bool contains(std::span<const Element> tuple) const;

  friend bool operator==(const PowerDomain&, const PowerDomain&) = default;

 private:
  PowerDomain() = default;
  std::vector<FiniteAlgebra> factors_;
  std::vector<std::size_t> factor_of_;
};

/// Subuniverse of a PowerDomain generated by explicit tuples, optionally with
/// one witness term per tuple over the variables x_1..x_|generators|.
class Subpower {
 public:
  const PowerDomain& domain() const noexcept { return domain_; }
  std::size_t width() const noexcept { return domain_.width(); }
  std::size_t size() const noexcept { return tuples_.size(); }
  const TupleSet& tuples() const noexcept { return tuples_; }
  std::span<const Element> operator[](std::size_t i) const {
    return tuples_[i];
  }
  bool contains(std::span<const Element> t) const {
    return tuples_.contains(t);
  }
  std::optional<std::size_t> find(std::span<const Element> t) const {
    return tuples_.find(t);
  }

  const std::vector<Tuple>& generators() const noexcept { return generators_; }
  bool has_provenance() const noexcept { return with_provenance_; }
  /// Witness term of tuple i (in sorted order). Requires provenance.
  const Term& witness(std::size_t i) const;

  /// Set when there were no generators and no constants, so the result is
  /// the empty subuniverse.
  bool is_empty_without_constants() const noexcept { return empty_flag_; }

  bool is_subset_of(const Subpower& other) const {
    return other.tuples_.includes(tuples_);
  }
  friend bool operator==(const Subpower& a, const Subpower& b) {
    return a.domain_ == b.domain_ && a.tuples_ == b.tuples_;
  }

 private:
  friend Subpower generate_subpower(const PowerDomain&, std::span<const Tuple>,
                                    bool, Budget&);
  Subpower(PowerDomain domain) : domain_(std::move(domain)) {}

  PowerDomain domain_;
  TupleSet tuples_;
  std::vector<Tuple> generators_;
  std::vector<Term> provenance_;
  bool with_provenance_ = false;
  bool empty_flag_ = false;
};

/// Smallest subuniverse containing `generators`, by a round-based FIFO
/// worklist: each round applies every operation to all argument tuples drawn
/// from the members so far with at least one member from the previous round.
/// Witness terms keep the first derivation found.
Subpower generate_subpower(const PowerDomain& domain,
                           std::span<const Tuple> generators,
                           bool with_provenance, Budget& budget);
Subpower generate_subpower(const FiniteAlgebra& alg, std::size_t width,
                           std::span<const Tuple> generators,
                           bool with_provenance, Budget& budget);

/// Runs the same closure as generate_subpower but stops as soon as `target`
/// appears; returns its witness term, or nullopt when the closure misses it.
std::optional<Term> find_generating_term(const PowerDomain& domain,
                                         std::span<const Tuple> generators,
                                         std::span<const Element> target,
                                         Budget& budget);

/// Coordinatewise value of `t` with x_i bound to generators[i-1].
Tuple evaluate_on_generators(const PowerDomain& domain, const Term& t,
                             std::span<const Tuple> generators);

/// One pass over all operations and argument tuples of `set`.
bool is_closed(const PowerDomain& domain, const TupleSet& set);

struct ForkRelation {
  std::size_t place = 0;
  PairSet pairs;

  friend bool operator==(const ForkRelation&, const ForkRelation&) = default;
};

/// phi_i: pairs (a_i, b_i) of tuples a, b sharing their first i-1
/// coordinates. `place` is 1-based.
ForkRelation fork(const TupleSet& set, std::size_t place);
inline ForkRelation fork(const Subpower& f, std::size_t place) {
  return fork(f.tuples(), place);
}

/// Restriction to the 1-based coordinates in `indices`, taken in increasing
/// order with duplicates removed.
TupleSet project(const TupleSet& set, std::span<const std::size_t> indices);
inline TupleSet project(const Subpower& f,
                        std::span<const std::size_t> indices) {
  return project(f.tuples(), indices);
}

struct FgReport {
  /// All forks and all projections to fewer than k coordinates coincide.
  bool equal = true;
  /// First place with differing forks.
  std::optional<std::size_t> fork_place;
  /// First index set with differing projections.
  std::vector<std::size_t> projection;
};

/// Compares the invariants of F <= G used by the fork criterion: forks at
/// every place and projections onto every index set of size < k. Over an
/// algebra with a k-edge term, equal invariants imply F = G.
/// Throws InvalidArgument unless F and G share a domain and F is inside G.
FgReport fg_compare(const Subpower& f, const Subpower& g, std::size_t k);
bool fg_equal(const Subpower& f, const Subpower& g, std::size_t k);

/// Brute force: every subset of A^m tested for closure. Requires
/// 2^(|A|^m) <= limit. The empty set is included exactly when the signature
/// has no constants.
std::vector<TupleSet> enumerate_subpowers(const FiniteAlgebra& alg,
                                          std::size_t width,
                                          std::uint64_t limit);

/// "0 1; 1 0" -> {(0,1), (1,0)}. All tuples must have equal width.
std::vector<Tuple> parse_tuple_list(std::string_view text);

}  // namespace ucaw
