#pragma once

#include <random>
#include <string>
#include <vector>

#include "ucaw/algebra.hpp"
#include "ucaw/budget.hpp"

namespace testing {

inline ucaw::FiniteAlgebra z2() { return ucaw::algebras::cyclic_group(2); }
inline ucaw::FiniteAlgebra z3() { return ucaw::algebras::cyclic_group(3); }
inline ucaw::FiniteAlgebra z4() { return ucaw::algebras::cyclic_group(4); }
inline ucaw::FiniteAlgebra trivial() {
  return ucaw::algebras::cyclic_group(1);
}
inline ucaw::FiniteAlgebra z2xz2() {
  const std::vector<ucaw::FiniteAlgebra> f{z2(), z2()};
  return ucaw::direct_product(f, "Z2xZ2");
}
inline ucaw::FiniteAlgebra lattice() {
  return ucaw::algebras::two_element_lattice();
}

// Algebra on n elements with the given arities and uniformly random tables.
inline ucaw::FiniteAlgebra random_algebra(std::size_t n,
                                          const std::vector<std::size_t>& arities,
                                          std::mt19937_64& rng) {
  std::vector<ucaw::OperationSymbol> syms;
  std::vector<ucaw::Table> tables;
  std::uniform_int_distribution<ucaw::Element> pick(0, n - 1);
  for (std::size_t i = 0; i < arities.size(); ++i) {
    syms.push_back({"f" + std::to_string(i), arities[i]});
    std::size_t len = 1;
    for (std::size_t j = 0; j < arities[i]; ++j) len *= n;
    ucaw::Table t(len);
    for (auto& v : t) v = pick(rng);
    tables.push_back(std::move(t));
  }
  return ucaw::FiniteAlgebra("R", n, ucaw::Signature(std::move(syms)),
                             std::move(tables));
}

inline ucaw::Budget big_budget() {
  ucaw::BudgetLimits l;
  l.max_tuples = 100'000'000;
  return ucaw::Budget(l);
}

}  // namespace testing
