#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ucaw/algebra.hpp"
#include "ucaw/budget.hpp"
#include "ucaw/subpower.hpp"
#include "ucaw/term.hpp"

namespace ucaw {

/// s ≈ t in the variables x_1..x_variables.
struct Identity {
  Term lhs;
  Term rhs;
  std::size_t variables = 0;
};

/// Throws InvalidArgument when a side uses a variable beyond `variables`.
void check_identity(const Identity& id, const Signature& sig);

bool satisfies(const FiniteAlgebra& alg, const Identity& id);
/// First assignment (in rank order) where the two sides differ.
std::optional<Tuple> find_violation(const FiniteAlgebra& alg,
                                    const Identity& id);

/// Free algebra of Var(A) on k generators, realized as the subuniverse of
/// A^(A^k) generated by the k projections. Element i is the k-ary term
/// function stored as tuple i of the carrier.
class FreeAlgebra {
 public:
  const FiniteAlgebra& base() const noexcept { return base_; }
  std::size_t generator_count() const noexcept { return k_; }
  const Subpower& carrier() const noexcept { return carrier_; }
  std::size_t size() const noexcept { return carrier_.size(); }
  const Term& term(std::size_t i) const { return carrier_.witness(i); }
  std::span<const Element> term_function(std::size_t i) const {
    return carrier_[i];
  }
  /// Index of the element whose term function equals `table`.
  std::optional<std::size_t> find(std::span<const Element> table) const {
    return carrier_.find(table);
  }
  /// Index of the free generator x_i (1-based i).
  std::size_t generator(std::size_t i) const;

  /// The carrier as an algebra on {0..size-1}.
  const FiniteAlgebra& as_algebra() const noexcept { return algebra_; }

 private:
  friend FreeAlgebra free_algebra(const FiniteAlgebra&, std::size_t,
                                  Budget&);
  FreeAlgebra(FiniteAlgebra base, std::size_t k, Subpower carrier,
              FiniteAlgebra algebra)
      : base_(std::move(base)),
        k_(k),
        carrier_(std::move(carrier)),
        algebra_(std::move(algebra)) {}

  FiniteAlgebra base_;
  std::size_t k_;
  Subpower carrier_;
  FiniteAlgebra algebra_;
};

/// Requires |A|^k coordinates within the budget's tuple limit.
FreeAlgebra free_algebra(const FiniteAlgebra& alg, std::size_t k,
                         Budget& budget);

/// Partition of {0..n-1} as a block map with blocks numbered in order of
/// their least element.
class CongruencePartition {
 public:
  /// Any labelling is accepted; it is renumbered canonically.
  static CongruencePartition from_labels(std::span<const std::size_t> labels);
  static CongruencePartition discrete(std::size_t n);

  std::size_t size() const noexcept { return block_of_.size(); }
  std::size_t block_count() const noexcept { return blocks_; }
  std::size_t block_of(Element a) const { return block_of_[a]; }
  bool related(Element a, Element b) const {
    return block_of_[a] == block_of_[b];
  }
  std::vector<std::vector<Element>> blocks() const;
  /// Every block of this partition lies inside a block of `coarser`.
  bool refines(const CongruencePartition& coarser) const;
  bool is_compatible_with(const FiniteAlgebra& alg) const;

  friend bool operator==(const CongruencePartition&,
                         const CongruencePartition&) = default;
  friend bool operator<(const CongruencePartition& a,
                        const CongruencePartition& b) {
    return a.block_of_ < b.block_of_;
  }

 private:
  std::vector<std::size_t> block_of_;
  std::size_t blocks_ = 0;
};

/// Least congruence containing `pairs`: union-find merging alternated with
/// propagation of every merged pair through all basic translations
/// f(a_1, .., x, .., a_r) until nothing new merges.
CongruencePartition congruence_generate(
    const FiniteAlgebra& alg,
    std::span<const std::pair<Element, Element>> pairs);

/// Blocks become elements 0..block_count-1.
FiniteAlgebra quotient(const FiniteAlgebra& alg,
                       const CongruencePartition& theta);

struct RelativelyFreeAlgebra {
  FreeAlgebra free;
  CongruencePartition theta;
  FiniteAlgebra algebra;
};

/// Free algebra of Var(A) ∩ Mod(sigma) on m generators: F_Var(A)(m) modulo
/// the congruence generated by all substitution instances of sigma.
RelativelyFreeAlgebra rel_free_quotient(const FiniteAlgebra& alg,
                                        std::size_t m,
                                        std::span<const Identity> sigma,
                                        Budget& budget);
/// Same, on a free algebra computed earlier.
CongruencePartition fully_invariant_congruence(const FreeAlgebra& free,
                                               std::span<const Identity> sigma,
                                               Budget& budget);

struct GeneratingSet {
  std::vector<Element> elements;
  std::size_t count() const noexcept { return elements.size(); }
};

/// Least k such that some k-subset generates the algebra; the first such
/// subset in lexicographic order. The empty set counts only when the
/// constants generate everything.
GeneratingSet min_generators(const FiniteAlgebra& alg);

struct MembershipResult {
  bool member = false;
  /// Elements b_1..b_k of B used as images of x_1..x_k.
  std::vector<Element> generators;
  std::size_t closure_size = 0;
  /// When not a member: an identity of A in k variables that fails in B.
  std::optional<Identity> witness;
};

/// B ∈ Var(A)? Generates G <= A^(A^k) x B from (pi_i, b_i) and reports
/// whether G is the graph of a function, i.e. whether x_i -> b_i extends to
/// a homomorphism F_Var(A)(k) -> B.
MembershipResult var_member(const FiniteAlgebra& b, const FiniteAlgebra& a,
                            Budget& budget);

struct SubcoverClass {
  Identity representative;
  /// Number of candidate identities with this fingerprint.
  std::size_t candidates = 0;
  /// |F_m / theta_m| for m = 1..bound.
  std::vector<std::size_t> quotient_sizes;
};

struct SubcoverReport {
  std::size_t generators = 0;
  std::size_t bound = 0;
  std::size_t candidate_count = 0;
  std::size_t class_count = 0;
  /// Classes maximal under containment of the relatively free algebras at
  /// every m <= bound. Exact only up to that bound.
  std::vector<SubcoverClass> maximal;
};

/// Candidates W = Var(A) ∩ Mod(s ≈ t) for distinct k-ary term functions
/// s, t (k = min_generators(A)), grouped by their fully invariant
/// congruences on F(m), m <= bound, and filtered to the maximal classes.
SubcoverReport subcovers(const FiniteAlgebra& a, std::size_t m_bound,
                         Budget& budget);

/// All algebras of size s in Var(A) up to isomorphism, in canonical form and
/// sorted. Every table assignment is enumerated; `candidate_limit` caps
/// their number.
std::vector<FiniteAlgebra> enumerate_members(const FiniteAlgebra& a,
                                             std::size_t s,
                                             std::uint64_t candidate_limit,
                                             Budget& budget);

struct CriticalityReport {
  bool critical = false;
  /// Set for the one-element algebra, critical by convention.
  bool by_convention = false;
  /// Members of Var(B) smaller than B, up to isomorphism.
  std::vector<FiniteAlgebra> smaller_members;
  /// Identity of the smaller members failing in B, when critical.
  std::optional<Identity> witness;
};

CriticalityReport is_cardinality_critical(const FiniteAlgebra& b,
                                          std::uint64_t candidate_limit,
                                          Budget& budget);

}  // namespace ucaw
