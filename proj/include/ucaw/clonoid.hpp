#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ucaw/algebra.hpp"
#include "ucaw/budget.hpp"
#include "ucaw/tuple_set.hpp"
#include "ucaw/words.hpp"

namespace ucaw {

/// Function A^arity -> B as a table in rank order (length t^arity).
struct Seed {
  std::size_t arity = 0;
  Table table;
};

/// Clonoid with source set {0..t-1} and target algebra B, materialized for
/// arities 1..N. Layer n is a set of tables of width t^n.
///
/// Layers are only known up to N, so every statement that quantifies over all
/// arities or all words is checked up to a bound and reported as such.
class Clonoid {
 public:
  /// Wraps explicit layers without checking closure (see is_clonoid).
  static Clonoid from_layers(FiniteAlgebra target, std::size_t source_size,
                             std::vector<TupleSet> layers);

  std::size_t source_size() const noexcept { return t_; }
  const FiniteAlgebra& target() const noexcept { return target_; }
  std::size_t arity_bound() const noexcept { return layers_.size(); }
  /// 1-based arity.
  const TupleSet& layer(std::size_t n) const;
  /// Seeds this clonoid was generated from; empty for from_layers.
  const std::vector<Seed>& seeds() const noexcept { return seeds_; }
  bool is_generated() const noexcept { return generated_; }
  bool has_empty_layer() const;

  /// Every seed of this clonoid lies in `other` (so this ⊆ other at every
  /// arity). Only meaningful for generated clonoids.
  bool seeds_inside(const Clonoid& other) const;

 private:
  friend Clonoid generate_clonoid(const FiniteAlgebra&, std::size_t,
                                  std::span<const Seed>, std::size_t,
                                  Budget&);
  Clonoid(FiniteAlgebra target, std::size_t t)
      : target_(std::move(target)), t_(t) {}

  FiniteAlgebra target_;
  std::size_t t_;
  std::vector<TupleSet> layers_;
  std::vector<Seed> seeds_;
  bool generated_ = false;
};

/// Smallest clonoid containing `seeds`, up to arity `arity_bound`. Layer n
/// is the subuniverse of B^(A^n) generated by all minors of all seeds into
/// arity n; minors commute with pointwise operations, so this is closed.
Clonoid generate_clonoid(const FiniteAlgebra& target, std::size_t source_size,
                         std::span<const Seed> seeds, std::size_t arity_bound,
                         Budget& budget);

/// (f∘σ)(a_1..a_n) = f(a_σ(1), .., a_σ(k)); σ is 1-based, |σ| = k.
Table minor(std::span<const Element> f, std::size_t source_size,
            std::span<const std::size_t> sigma, std::size_t n);

/// Closure of every layer under B and under all minors between arities <= N.
bool is_clonoid(const Clonoid& c);

/// Forks of layer |a| at a: pairs (f(a), g(a)) over f, g agreeing on every
/// word lexicographically below a.
PairSet phi_forks(const Clonoid& c, const Word& a);

/// Words of length 1..max_length whose fork set lies inside `alpha`.
std::vector<Word> psi(const Clonoid& c, const PairSet& alpha,
                      std::size_t max_length);

enum class CriterionVerdict { holds, holds_up_to_bound, fails };

struct CriterionResult {
  CriterionVerdict verdict = CriterionVerdict::holds_up_to_bound;
  /// Set when a function of C^[t^(k-1)] is missing from D^[t^(k-1)].
  std::optional<Table> low_arity_witness;
  /// Set when a fork of C at `word` is not a fork of D there.
  std::optional<Word> word;
  std::optional<std::pair<Element, Element>> pair;
  std::size_t words_checked = 0;
};

/// Bounded check of C ⊆ D for comparable clonoids over a target with a
/// k-edge term: C^[t^(k-1)] ⊆ D^[t^(k-1)] and ΦX(C,a) ⊆ ΦX(D,a) for every
/// word of length <= max_length.
///
/// The per-word inclusion replaces "Ψ(D,α) ⊆ Ψ(C,α) for every α ⊆ B²": taking
/// α = ΦX(D,a) turns the latter into the former, and the former gives the
/// latter since a ∈ Ψ(D,α) means ΦX(C,a) ⊆ ΦX(D,a) ⊆ α.
///
/// `holds` is reported only when the bounded check passes and every seed of
/// C lies in D, which certifies C ⊆ D at all arities; otherwise a passing
/// check is `holds_up_to_bound`.
CriterionResult clonoid_leq_criterion(const Clonoid& c, const Clonoid& d,
                                      std::size_t k, std::size_t max_length);

/// The same bounded condition with the relation quantifier spelled out:
/// Ψ(D,α) ⊆ Ψ(C,α) for all 2^(|B|²) relations α. Requires |B| <= 3.
bool psi_condition_all_relations(const Clonoid& c, const Clonoid& d,
                                 std::size_t max_length);

/// Bounded fingerprint: the layer C^[t^(k-1)] and, for every word up to the
/// length bound, its fork set. Two fingerprints are equal exactly when the
/// low layers agree and Ψ(C,α) agrees for every α on the bounded words.
struct ClonoidKey {
  TupleSet low_layer;
  std::vector<PairSet> forks;

  friend bool operator==(const ClonoidKey&, const ClonoidKey&) = default;
};
ClonoidKey clonoid_key(const Clonoid& c, std::size_t k,
                       std::size_t max_length);

/// Th_A(Var(B)) at arity n: pairs (s^A, t^A) of n-ary term functions with
/// s^B = t^B. Stored as tuples of width 2|A|^n, s^A followed by t^A.
TupleSet th_clonoid(const FiniteAlgebra& a, const FiniteAlgebra& b,
                    std::size_t n, Budget& budget);

enum class GaloisVerdict { agreement, consistent_up_to_bound, discrepancy };

struct GaloisResult {
  GaloisVerdict verdict = GaloisVerdict::agreement;
  /// Var(b1) ⊆ Var(b2).
  bool contained = false;
  /// Th(Var(b2)) ⊆ Th(Var(b1)) at every n <= n_max.
  bool th_included = false;
  /// First arity where the inclusion fails, with a pair in Th(b2) \ Th(b1).
  std::optional<std::size_t> failing_arity;
  std::optional<Tuple> missing_pair;
};

/// Compares Var(b1) ⊆ Var(b2) with Th_A(Var(b2)) ⊆ Th_A(Var(b1)) at arities
/// 1..n_max. Throws PreconditionFailed unless b1, b2 ∈ Var(a).
GaloisResult galois_check(const FiniteAlgebra& a, const FiniteAlgebra& b1,
                          const FiniteAlgebra& b2, std::size_t n_max,
                          Budget& budget);

std::string to_string(CriterionVerdict v);
std::string to_string(GaloisVerdict v);

}  // namespace ucaw
