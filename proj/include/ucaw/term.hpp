#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ucaw/algebra.hpp"
#include "ucaw/error.hpp"

namespace ucaw {

/// Term over a signature: a variable x_i (1-based) or a symbol applied to
/// subterms. Terms are immutable and share subterms, so closures can build
/// witness terms in constant time per step.
class Term {
 public:
  static Term variable(std::size_t index);
  static Term apply(std::size_t symbol, std::vector<Term> args);

  bool is_variable() const noexcept;
  std::size_t variable_index() const;
  std::size_t symbol() const;
  std::span<const Term> args() const;

  /// Largest variable index occurring in the term, 0 for ground terms.
  std::size_t max_variable() const noexcept;
  /// Nesting depth; variables and constants count 0.
  std::size_t depth() const noexcept;

  /// Replace x_i by replacement[i-1].
  Term substitute(std::span<const Term> replacement) const;

  /// Address of the shared node; equal for copies of the same term.
  const void* identity() const noexcept { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Throws InvalidArgument unless every symbol exists with matching child count.
void check_term(const Term& t, const Signature& sig);

/// Prefix notation, e.g. `mul(x1,inv(x2))`; constants print as bare names.
std::string to_string(const Term& t, const Signature& sig);

/// Inverse of to_string. `x<digits>` denotes a variable unless the signature
/// has a symbol of that name. Constants may be written with or without `()`.
Term parse_term(std::string_view text, const Signature& sig);

Element eval_term(const FiniteAlgebra& alg, const Term& t,
                  std::span<const Element> assignment);

/// Term function of arity m as a table in rank order.
Table term_table(const FiniteAlgebra& alg, const Term& t, std::size_t arity);

namespace detail {

/// Evaluate `t` simultaneously at `columns` points. `variables[i]` holds the
/// values of x_{i+1} at every point; `apply(op, column, args)` evaluates a
/// basic operation at one point. Shared subterms are evaluated once.
template <class Apply>
Table evaluate_columns(const Term& t, std::span<const Table> variables,
                       std::size_t columns, Apply&& apply) {
  std::unordered_map<const void*, Table> memo;
  std::vector<Element> args;
  auto rec = [&](auto&& self, const Term& s) -> const Table& {
    if (auto it = memo.find(s.identity()); it != memo.end()) return it->second;
    Table out(columns);
    if (s.is_variable()) {
      const std::size_t v = s.variable_index();
      if (v == 0 || v > variables.size())
        throw InvalidArgument("unbound variable x" + std::to_string(v));
      out = variables[v - 1];
    } else {
      std::vector<const Table*> children;
      children.reserve(s.args().size());
      for (const Term& c : s.args()) children.push_back(&self(self, c));
      args.resize(children.size());
      for (std::size_t col = 0; col < columns; ++col) {
        for (std::size_t i = 0; i < children.size(); ++i)
          args[i] = (*children[i])[col];
        out[col] = apply(s.symbol(), col, std::span<const Element>(args));
      }
    }
    return memo.emplace(s.identity(), std::move(out)).first->second;
  };
  return rec(rec, t);
}

}  // namespace detail

}  // namespace ucaw
