#include "ucaw/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace ucaw {

struct Term::Node {
  // Variables use symbol == npos.
  std::size_t symbol = npos;
  std::size_t variable = 0;
  std::vector<Term> args;
  std::size_t max_variable = 0;
  std::size_t depth = 0;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

Term Term::variable(std::size_t index) {
  if (index == 0) throw InvalidArgument("variable indices start at 1");
  auto node = std::make_shared<Node>();
  node->variable = index;
  node->max_variable = index;
  return Term(std::move(node));
}

Term Term::apply(std::size_t symbol, std::vector<Term> args) {
  auto node = std::make_shared<Node>();
  node->symbol = symbol;
  for (const auto& a : args) {
    node->max_variable = std::max(node->max_variable, a.max_variable());
    node->depth = std::max(node->depth, a.depth() + 1);
  }
  node->args = std::move(args);
  return Term(std::move(node));
}

bool Term::is_variable() const noexcept { return node_->symbol == Node::npos; }

std::size_t Term::variable_index() const {
  if (!is_variable()) throw InvalidArgument("term is not a variable");
  return node_->variable;
}

std::size_t Term::symbol() const {
  if (is_variable()) throw InvalidArgument("variable has no symbol");
  return node_->symbol;
}

std::span<const Term> Term::args() const { return node_->args; }

std::size_t Term::max_variable() const noexcept { return node_->max_variable; }

std::size_t Term::depth() const noexcept { return node_->depth; }

Term Term::substitute(std::span<const Term> replacement) const {
  std::unordered_map<const void*, Term> memo;
  std::function<Term(const Term&)> rec = [&](const Term& t) -> Term {
    if (auto it = memo.find(t.identity()); it != memo.end()) return it->second;
    Term out = t;
    if (t.is_variable()) {
      const std::size_t v = t.variable_index();
      if (v > replacement.size())
        throw InvalidArgument("substitute: no replacement for x" +
                              std::to_string(v));
      out = replacement[v - 1];
    } else {
      std::vector<Term> args;
      for (const Term& a : t.args()) args.push_back(rec(a));
      out = Term::apply(t.symbol(), std::move(args));
    }
    memo.emplace(t.identity(), out);
    return out;
  };
  return rec(*this);
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_variable() != b.is_variable()) return false;
  if (a.is_variable()) return a.variable_index() == b.variable_index();
  if (a.symbol() != b.symbol() || a.args().size() != b.args().size())
    return false;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!(a.args()[i] == b.args()[i])) return false;
  return true;
}

void check_term(const Term& t, const Signature& sig) {
  if (t.is_variable()) return;
  if (t.symbol() >= sig.size())
    throw InvalidArgument("term uses symbol #" + std::to_string(t.symbol()) +
                          " not in the signature");
  if (t.args().size() != sig[t.symbol()].arity)
    throw InvalidArgument("symbol '" + sig[t.symbol()].name + "' expects " +
                          std::to_string(sig[t.symbol()].arity) +
                          " arguments, got " +
                          std::to_string(t.args().size()));
  for (const Term& a : t.args()) check_term(a, sig);
}

namespace {

void print(const Term& t, const Signature& sig, std::string& out) {
  if (t.is_variable()) {
    out += 'x';
    out += std::to_string(t.variable_index());
    return;
  }
  out += sig[t.symbol()].name;
  if (t.args().empty()) return;
  out += '(';
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ',';
    print(t.args()[i], sig, out);
  }
  out += ')';
}

class TermParser {
 public:
  TermParser(std::string_view text, const Signature& sig)
      : text_(text), sig_(sig) {}

  Term parse() {
    Term t = term();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  static bool is_name_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '(' &&
           c != ')' && c != ',';
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("term: " + what + " at offset " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  Term term() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    if (pos_ == start) fail("expected a symbol or variable");
    const std::string_view name = text_.substr(start, pos_ - start);
    skip_space();
    const bool has_parens = pos_ < text_.size() && text_[pos_] == '(';

    auto symbol = sig_.find(name);
    if (!symbol) {
      if (has_parens || name.size() < 2 || name[0] != 'x' ||
          !std::all_of(name.begin() + 1, name.end(), [](char c) {
            return std::isdigit(static_cast<unsigned char>(c));
          }))
        fail("unknown symbol '" + std::string(name) + "'");
      const auto index = std::stoull(std::string(name.substr(1)));
      if (index == 0) fail("variable indices start at 1");
      return Term::variable(index);
    }

    std::vector<Term> args;
    if (has_parens) {
      ++pos_;
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == ')') {
        ++pos_;
      } else {
        for (;;) {
          args.push_back(term());
          skip_space();
          if (pos_ >= text_.size()) fail("unterminated argument list");
          if (text_[pos_] == ',') {
            ++pos_;
            continue;
          }
          if (text_[pos_] == ')') {
            ++pos_;
            break;
          }
          fail("expected ',' or ')'");
        }
      }
    }
    if (args.size() != sig_[*symbol].arity)
      fail("symbol '" + std::string(name) + "' expects " +
           std::to_string(sig_[*symbol].arity) + " arguments, got " +
           std::to_string(args.size()));
    return Term::apply(*symbol, std::move(args));
  }

  std::string_view text_;
  const Signature& sig_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const Term& t, const Signature& sig) {
  std::string out;
  print(t, sig, out);
  return out;
}

Term parse_term(std::string_view text, const Signature& sig) {
  return TermParser(text, sig).parse();
}

Element eval_term(const FiniteAlgebra& alg, const Term& t,
                  std::span<const Element> assignment) {
  check_term(t, alg.signature());
  std::vector<Table> variables;
  for (Element a : assignment) {
    if (a >= alg.size())
      throw InvalidArgument("assignment value " + std::to_string(a) +
                            " out of range");
    variables.push_back(Table{a});
  }
  auto out = detail::evaluate_columns(
      t, variables, 1,
      [&](std::size_t op, std::size_t, std::span<const Element> args) {
        return alg.apply(op, args);
      });
  return out[0];
}

Table term_table(const FiniteAlgebra& alg, const Term& t, std::size_t arity) {
  check_term(t, alg.signature());
  if (t.max_variable() > arity)
    throw InvalidArgument("term uses x" + std::to_string(t.max_variable()) +
                          " beyond arity " + std::to_string(arity));
  const TupleRank rank(arity, alg.size());
  std::vector<Table> variables(arity, Table(rank.count()));
  Tuple point(arity);
  for (std::uint64_t r = 0; r < rank.count(); ++r) {
    rank.unrank_into(r, point);
    for (std::size_t i = 0; i < arity; ++i) variables[i][r] = point[i];
  }
  return detail::evaluate_columns(
      t, variables, rank.count(),
      [&](std::size_t op, std::size_t, std::span<const Element> args) {
        return alg.apply(op, args);
      });
}

}  // namespace ucaw
