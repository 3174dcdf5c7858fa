#include "ucaw/maltsev.hpp"

#include "ucaw/error.hpp"

namespace ucaw {

namespace {

// rows(r, j) says whether argument j (0-based) of row r is y.
template <class IsY>
TermCondition build_condition(const FiniteAlgebra& alg, std::size_t variables,
                              std::size_t rows, IsY&& is_y) {
  const std::size_t n = alg.size();
  TermCondition c;
  c.variables = variables;
  c.rows = rows;
  const std::size_t columns = n * n * rows;
  c.generators.assign(variables, Tuple(columns));
  c.target.resize(columns);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t col = (x * n + y) * rows + r;
        c.target[col] = x;
        for (std::size_t j = 0; j < variables; ++j)
          c.generators[j][col] = is_y(r, j) ? y : x;
      }
  return c;
}

bool edge_row_is_y(std::size_t row, std::size_t arg) {
  if (row == 0) return arg == 0 || arg == 1;
  if (row == 1) return arg == 0 || arg == 2;
  return arg == row + 1;
}

// Every row instantiated at every (x, y) evaluates to x.
template <class IsY>
bool rows_hold(const FiniteAlgebra& alg, const Term& t, std::size_t variables,
               std::size_t rows, IsY&& is_y) {
  if (t.max_variable() > variables) return false;
  check_term(t, alg.signature());
  const Table table = term_table(alg, t, variables);
  const std::size_t n = alg.size();
  Tuple args(variables);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t j = 0; j < variables; ++j)
          args[j] = is_y(r, j) ? y : x;
        if (table[table_index(args, n)] != x) return false;
      }
  return true;
}

std::optional<Term> solve(const FiniteAlgebra& alg, const TermCondition& c,
                          Budget& budget) {
  const auto domain = PowerDomain::power(alg, c.columns());
  return find_generating_term(domain, c.generators, c.target, budget);
}

}  // namespace

TermCondition edge_condition(const FiniteAlgebra& alg, std::size_t k) {
  if (k < 2) throw InvalidArgument("edge terms need k >= 2");
  return build_condition(alg, k + 1, k, edge_row_is_y);
}

TermCondition near_unanimity_condition(const FiniteAlgebra& alg,
                                       std::size_t k) {
  if (k < 3) throw InvalidArgument("near-unanimity terms need k >= 3");
  return build_condition(alg, k, k,
                         [](std::size_t r, std::size_t j) { return r == j; });
}

bool is_edge_term(const FiniteAlgebra& alg, const Term& t, std::size_t k) {
  if (k < 2) throw InvalidArgument("edge terms need k >= 2");
  return rows_hold(alg, t, k + 1, k, edge_row_is_y);
}

bool is_malcev_term(const FiniteAlgebra& alg, const Term& t) {
  // d(x,x,y) = y and d(y,x,x) = y, written with x as the returned value.
  return rows_hold(alg, t, 3, 2, [](std::size_t r, std::size_t j) {
    return r == 0 ? j != 2 : j != 0;
  });
}

bool is_nu_term(const FiniteAlgebra& alg, const Term& t, std::size_t k) {
  if (k < 3) throw InvalidArgument("near-unanimity terms need k >= 3");
  return rows_hold(alg, t, k, k,
                   [](std::size_t r, std::size_t j) { return r == j; });
}

std::optional<Term> has_edge_term(const FiniteAlgebra& alg, std::size_t k,
                                  Budget& budget) {
  auto t = solve(alg, edge_condition(alg, k), budget);
  if (t && !is_edge_term(alg, *t, k))
    throw Error("edge term witness failed verification");
  return t;
}

std::optional<Term> has_malcev_term(const FiniteAlgebra& alg, Budget& budget) {
  auto t = has_edge_term(alg, 2, budget);
  if (!t) return std::nullopt;
  const std::vector<Term> swap = {Term::variable(2), Term::variable(1),
                                  Term::variable(3)};
  Term d = t->substitute(swap);
  if (!is_malcev_term(alg, d))
    throw Error("Mal'cev witness failed verification");
  return d;
}

std::optional<Term> has_nu_term(const FiniteAlgebra& alg, std::size_t k,
                                Budget& budget) {
  auto t = solve(alg, near_unanimity_condition(alg, k), budget);
  if (t && !is_nu_term(alg, *t, k))
    throw Error("near-unanimity witness failed verification");
  return t;
}

std::optional<EdgeArity> min_edge_arity(const FiniteAlgebra& alg,
                                        std::size_t k_max, Budget& budget) {
  if (k_max < 2) throw InvalidArgument("k_max must be >= 2");
  for (std::size_t k = 2; k <= k_max; ++k)
    if (auto t = has_edge_term(alg, k, budget)) return EdgeArity{k, *t};
  return std::nullopt;
}

}  // namespace ucaw
