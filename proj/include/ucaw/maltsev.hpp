#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ucaw/algebra.hpp"
#include "ucaw/budget.hpp"
#include "ucaw/subpower.hpp"
#include "ucaw/term.hpp"

namespace ucaw {

/// A term condition encoded as membership of `target` in the subpower of
/// A^columns generated by `generators` (one generator per variable).
///
/// Columns are indexed by the pairs (x, y) in rank order, then by constraint
/// row. Generator j holds, in column ((x, y), row), the j-th argument of that
/// row instantiated at (x, y); the target holds x everywhere. A term whose
/// coordinatewise value on the generators is the target satisfies every row.
struct TermCondition {
  std::size_t variables = 0;
  std::size_t rows = 0;
  std::vector<Tuple> generators;
  Tuple target;

  std::size_t columns() const { return target.size(); }
};

/// k-edge rows: (y,y,x,...,x), (y,x,y,x,...,x), and for positions
/// i = 4..k+1 the all-x row with y at position i. Requires k >= 2.
TermCondition edge_condition(const FiniteAlgebra& alg, std::size_t k);
/// k-ary near-unanimity rows: y at position p, x elsewhere, p = 1..k.
/// Requires k >= 3.
TermCondition near_unanimity_condition(const FiniteAlgebra& alg,
                                       std::size_t k);

/// Witness for a (k+1)-ary k-edge term, re-verified by evaluation.
std::optional<Term> has_edge_term(const FiniteAlgebra& alg, std::size_t k,
                                  Budget& budget);
/// d(x1,x2,x3) := t(x2,x1,x3) for a 2-edge witness t.
std::optional<Term> has_malcev_term(const FiniteAlgebra& alg, Budget& budget);
std::optional<Term> has_nu_term(const FiniteAlgebra& alg, std::size_t k,
                                Budget& budget);

struct EdgeArity {
  std::size_t k;
  Term witness;
};
/// Least k in [2, k_max] with a k-edge term.
std::optional<EdgeArity> min_edge_arity(const FiniteAlgebra& alg,
                                        std::size_t k_max, Budget& budget);

/// Direct checks of the defining identities over all (x, y) in A^2.
/// A k-edge term is also a (k+1)-edge term read with one more, unused,
/// trailing variable, so is_edge_term(alg, t, k) implies
/// is_edge_term(alg, t, k + 1).
bool is_edge_term(const FiniteAlgebra& alg, const Term& t, std::size_t k);
bool is_malcev_term(const FiniteAlgebra& alg, const Term& t);
bool is_nu_term(const FiniteAlgebra& alg, const Term& t, std::size_t k);

}  // namespace ucaw
