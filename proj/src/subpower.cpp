#include "ucaw/subpower.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "tuple_store.hpp"
#include "ucaw/error.hpp"

namespace ucaw {

// ---------------------------------------------------------------------------
// PowerDomain

PowerDomain PowerDomain::power(FiniteAlgebra base, std::size_t width) {
  return product({{std::move(base), width}});
}

PowerDomain PowerDomain::product(
    std::vector<std::pair<FiniteAlgebra, std::size_t>> blocks) {
  if (blocks.empty()) throw InvalidArgument("product domain without factors");
  PowerDomain d;
  for (auto& [alg, count] : blocks) {
    if (alg.signature() != blocks.front().first.signature())
      throw InvalidArgument("product domain: signature mismatch between '" +
                            blocks.front().first.name() + "' and '" +
                            alg.name() + "'");
    std::size_t index = d.factors_.size();
    for (std::size_t i = 0; i < d.factors_.size(); ++i)
      if (d.factors_[i] == alg) index = i;
    if (index == d.factors_.size()) d.factors_.push_back(alg);
    d.factor_of_.insert(d.factor_of_.end(), count, index);
  }
  if (d.factor_of_.empty()) throw InvalidArgument("product domain of width 0");
  return d;
}

Tuple PowerDomain::constant_tuple(std::size_t op) const {
  Tuple out(width());
  for (std::size_t j = 0; j < width(); ++j) out[j] = factor_at(j).table(op)[0];
  return out;
}

void PowerDomain::apply(std::size_t op, std::span<const Element* const> args,
                        Element* out) const {
  for (std::size_t j = 0; j < width(); ++j) {
    const FiniteAlgebra& f = factor_at(j);
    std::size_t index = 0;
    for (const Element* a : args) index = index * f.size() + a[j];
    out[j] = f.table(op)[index];
  }
}

bool PowerDomain::contains(std::span<const Element> tuple) const {
  if (tuple.size() != width()) return false;
  for (std::size_t j = 0; j < width(); ++j)
    if (tuple[j] >= factor_at(j).size()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Closure engine

namespace {

class Closure {
 public:
  Closure(const PowerDomain& domain, bool provenance, Budget& budget)
      : domain_(domain),
        store_(domain.width()),
        provenance_(provenance),
        budget_(budget) {
    const auto& sig = domain.signature();
    tables_.resize(sig.size());
    bases_.resize(domain.width());
    for (std::size_t j = 0; j < domain.width(); ++j)
      bases_[j] = domain.factor_at(j).size();
    for (std::size_t op = 0; op < sig.size(); ++op) {
      tables_[op].resize(domain.width());
      for (std::size_t j = 0; j < domain.width(); ++j)
        tables_[op][j] = domain.factor_at(j).table(op).data();
    }
  }

  /// Returns true as soon as `target` is present (when one is given).
  bool run(std::span<const Tuple> generators,
           std::optional<std::span<const Element>> target) {
    target_ = target;
    for (std::size_t g = 0; g < generators.size(); ++g) {
      if (!domain_.contains(generators[g]))
        throw InvalidArgument("generator " + std::to_string(g + 1) +
                              " does not lie in the domain");
      if (add(generators[g].data(), [&] { return Term::variable(g + 1); }))
        return true;
    }
    const auto& sig = domain_.signature();
    for (std::size_t op = 0; op < sig.size(); ++op) {
      if (sig[op].arity != 0) continue;
      const Tuple c = domain_.constant_tuple(op);
      if (add(c.data(), [&] { return Term::apply(op, {}); })) return true;
    }
    if (target_ && found()) return true;

    std::size_t lo = 0, hi = store_.size();
    Tuple result(domain_.width());
    std::vector<std::size_t> idx;
    std::vector<const Element*> args;
    while (lo < hi) {
      for (std::size_t op = 0; op < sig.size(); ++op) {
        const std::size_t r = sig[op].arity;
        if (r == 0) continue;
        idx.resize(r);
        args.resize(r);
        // Position p holds the first argument from the newest round.
        for (std::size_t p = 0; p < r; ++p) {
          if (p > 0 && lo == 0) break;
          auto start = [&](std::size_t q) { return q == p ? lo : 0; };
          auto stop = [&](std::size_t q) { return q < p ? lo : hi; };
          for (std::size_t q = 0; q < r; ++q) idx[q] = start(q);
          for (;;) {
            for (std::size_t q = 0; q < r; ++q) args[q] = store_.row(idx[q]);
            apply(op, args, result.data());
            if (add(result.data(), [&] { return derived(op, idx); }))
              return true;
            if ((++steps_ & 0xFFF) == 0) budget_.poll();
            bool done = true;
            for (std::size_t q = r; q-- > 0;) {
              if (++idx[q] < stop(q)) {
                done = false;
                break;
              }
              idx[q] = start(q);
            }
            if (done) break;
          }
        }
      }
      lo = hi;
      hi = store_.size();
    }
    return false;
  }

  const detail::TupleStore& store() const { return store_; }
  std::vector<Term>& terms() { return terms_; }

 private:
  bool found() const {
    return target_ && store_.find(target_->data()).has_value();
  }

  Term derived(std::size_t op, const std::vector<std::size_t>& idx) const {
    std::vector<Term> children;
    children.reserve(idx.size());
    for (auto i : idx) children.push_back(terms_[i]);
    return Term::apply(op, std::move(children));
  }

  template <class MakeTerm>
  bool add(const Element* t, MakeTerm&& make_term) {
    auto [index, inserted] = store_.insert(t);
    if (!inserted) return false;
    budget_.charge();
    if (provenance_) terms_.push_back(make_term());
    return target_ && std::equal(target_->begin(), target_->end(), t);
  }

  void apply(std::size_t op, const std::vector<const Element*>& args,
             Element* out) const {
    const auto& tabs = tables_[op];
    if (args.size() == 2) {
      const Element *a = args[0], *b = args[1];
      for (std::size_t j = 0; j < bases_.size(); ++j)
        out[j] = tabs[j][a[j] * bases_[j] + b[j]];
      return;
    }
    for (std::size_t j = 0; j < bases_.size(); ++j) {
      std::size_t index = 0;
      for (const Element* a : args) index = index * bases_[j] + a[j];
      out[j] = tabs[j][index];
    }
  }

  const PowerDomain& domain_;
  detail::TupleStore store_;
  bool provenance_;
  Budget& budget_;
  std::vector<std::vector<const Element*>> tables_;
  std::vector<std::size_t> bases_;
  std::vector<Term> terms_;
  std::optional<std::span<const Element>> target_;
  std::uint64_t steps_ = 0;
};

}  // namespace

Subpower generate_subpower(const PowerDomain& domain,
                           std::span<const Tuple> generators,
                           bool with_provenance, Budget& budget) {
  Closure closure(domain, with_provenance, budget);
  closure.run(generators, std::nullopt);

  const auto& store = closure.store();
  const std::size_t width = domain.width();
  std::vector<std::size_t> order(store.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto ra = store[a], rb = store[b];
    return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(),
                                        rb.end());
  });
  std::vector<Element> flat;
  flat.reserve(store.size() * width);
  for (auto i : order) flat.insert(flat.end(), store[i].begin(), store[i].end());

  Subpower out(domain);
  out.tuples_ = TupleSet::from_flat(width, std::move(flat));
  out.generators_.assign(generators.begin(), generators.end());
  out.with_provenance_ = with_provenance;
  if (with_provenance) {
    out.provenance_.reserve(order.size());
    for (auto i : order) out.provenance_.push_back(closure.terms()[i]);
  }
  out.empty_flag_ = store.size() == 0;
  return out;
}

Subpower generate_subpower(const FiniteAlgebra& alg, std::size_t width,
                           std::span<const Tuple> generators,
                           bool with_provenance, Budget& budget) {
  if (width == 0) throw InvalidArgument("subpower width must be >= 1");
  return generate_subpower(PowerDomain::power(alg, width), generators,
                           with_provenance, budget);
}

const Term& Subpower::witness(std::size_t i) const {
  if (!with_provenance_)
    throw InvalidArgument("subpower was generated without provenance");
  return provenance_.at(i);
}

std::optional<Term> find_generating_term(const PowerDomain& domain,
                                         std::span<const Tuple> generators,
                                         std::span<const Element> target,
                                         Budget& budget) {
  if (!domain.contains(target))
    throw InvalidArgument("target does not lie in the domain");
  Closure closure(domain, true, budget);
  if (!closure.run(generators, target)) return std::nullopt;
  auto index = closure.store().find(target.data());
  return closure.terms()[*index];
}

Tuple evaluate_on_generators(const PowerDomain& domain, const Term& t,
                             std::span<const Tuple> generators) {
  check_term(t, domain.signature());
  for (const auto& g : generators)
    if (!domain.contains(g))
      throw InvalidArgument("generator does not lie in the domain");
  std::vector<Table> variables(generators.begin(), generators.end());
  return detail::evaluate_columns(
      t, variables, domain.width(),
      [&](std::size_t op, std::size_t column, std::span<const Element> args) {
        return domain.factor_at(column).apply(op, args);
      });
}

bool is_closed(const PowerDomain& domain, const TupleSet& set) {
  const auto& sig = domain.signature();
  Tuple result(domain.width());
  for (std::size_t op = 0; op < sig.size(); ++op) {
    const std::size_t r = sig[op].arity;
    if (r == 0) {
      if (!set.contains(domain.constant_tuple(op))) return false;
      continue;
    }
    if (set.empty()) continue;
    std::vector<std::size_t> idx(r, 0);
    std::vector<const Element*> args(r);
    for (;;) {
      for (std::size_t q = 0; q < r; ++q) args[q] = set[idx[q]].data();
      domain.apply(op, args, result.data());
      if (!set.contains(result)) return false;
      std::size_t q = r;
      while (q > 0 && ++idx[q - 1] == set.size()) idx[--q] = 0;
      if (q == 0) break;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Forks and projections

ForkRelation fork(const TupleSet& set, std::size_t place) {
  if (place == 0 || place > set.width())
    throw InvalidArgument("fork place " + std::to_string(place) +
                          " out of range 1.." + std::to_string(set.width()));
  ForkRelation out{place, {}};
  const std::size_t prefix = place - 1;
  // Sorted order makes tuples with a common prefix contiguous.
  std::size_t begin = 0;
  std::vector<Element> values;
  while (begin < set.size()) {
    std::size_t end = begin + 1;
    while (end < set.size() &&
           std::equal(set[begin].begin(), set[begin].begin() + prefix,
                      set[end].begin()))
      ++end;
    values.clear();
    for (std::size_t i = begin; i < end; ++i) values.push_back(set[i][prefix]);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (Element a : values)
      for (Element b : values) out.pairs.emplace_back(a, b);
    begin = end;
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  out.pairs.erase(std::unique(out.pairs.begin(), out.pairs.end()),
                  out.pairs.end());
  return out;
}

TupleSet project(const TupleSet& set, std::span<const std::size_t> indices) {
  std::vector<std::size_t> t(indices.begin(), indices.end());
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  if (t.empty()) throw InvalidArgument("projection onto no coordinates");
  for (auto i : t)
    if (i == 0 || i > set.width())
      throw InvalidArgument("projection index " + std::to_string(i) +
                            " out of range 1.." + std::to_string(set.width()));
  std::vector<Element> flat;
  flat.reserve(set.size() * t.size());
  for (std::size_t r = 0; r < set.size(); ++r)
    for (auto i : t) flat.push_back(set[r][i - 1]);
  return TupleSet::from_flat(t.size(), std::move(flat));
}

FgReport fg_compare(const Subpower& f, const Subpower& g, std::size_t k) {
  if (f.width() != g.width())
    throw InvalidArgument("fg_equal: width mismatch");
  if (!(f.domain() == g.domain()))
    throw InvalidArgument("fg_equal: subpowers live in different domains");
  if (!f.is_subset_of(g)) throw InvalidArgument("fg_equal: F is not inside G");
  if (k < 2) throw InvalidArgument("fg_equal: edge arity must be >= 2");
  FgReport report;
  const std::size_t m = f.width();
  for (std::size_t i = 1; i <= m; ++i) {
    if (!(fork(f, i) == fork(g, i))) {
      report.equal = false;
      report.fork_place = i;
      return report;
    }
  }
  if (f.size() == 0 || g.size() == 0) {
    report.equal = f.size() == g.size();
    return report;
  }
  // Index sets of size 1..k-1 in lexicographic order.
  std::vector<std::size_t> set;
  for (std::size_t size = 1; size < k && size <= m; ++size) {
    set.resize(size);
    std::iota(set.begin(), set.end(), std::size_t{1});
    for (;;) {
      if (!(project(f, set) == project(g, set))) {
        report.equal = false;
        report.projection = set;
        return report;
      }
      std::size_t i = size;
      while (i > 0 && set[i - 1] == m - size + i) --i;
      if (i == 0) break;
      ++set[i - 1];
      for (std::size_t j = i; j < size; ++j) set[j] = set[j - 1] + 1;
    }
  }
  return report;
}

bool fg_equal(const Subpower& f, const Subpower& g, std::size_t k) {
  return fg_compare(f, g, k).equal;
}

// ---------------------------------------------------------------------------
// Brute-force enumeration

std::vector<TupleSet> enumerate_subpowers(const FiniteAlgebra& alg,
                                          std::size_t width,
                                          std::uint64_t limit) {
  if (width == 0) throw InvalidArgument("subpower width must be >= 1");
  const TupleRank rank(width, alg.size());
  const std::uint64_t points = rank.count();
  if (points >= 63 || (std::uint64_t{1} << points) > limit)
    throw BudgetExceeded("enumerating 2^" + std::to_string(points) +
                         " subsets exceeds the limit of " +
                         std::to_string(limit));
  const auto& sig = alg.signature();
  // Result table of every operation on ranks, to test closure on bitmasks.
  std::vector<std::vector<std::uint64_t>> op_rank(sig.size());
  for (std::size_t op = 0; op < sig.size(); ++op) {
    const std::size_t r = sig[op].arity;
    const TupleRank args(r, points);
    op_rank[op].resize(args.count());
    Tuple arg_ranks(r), out(width);
    std::vector<Tuple> tuples(r);
    for (std::uint64_t a = 0; a < args.count(); ++a) {
      args.unrank_into(a, arg_ranks);
      for (std::size_t q = 0; q < r; ++q) tuples[q] = rank.unrank(arg_ranks[q]);
      Tuple point(r);
      for (std::size_t j = 0; j < width; ++j) {
        for (std::size_t q = 0; q < r; ++q) point[q] = tuples[q][j];
        out[j] = alg.apply(op, point);
      }
      op_rank[op][a] = rank.rank(out);
    }
  }

  std::vector<TupleSet> result;
  const std::uint64_t subsets = std::uint64_t{1} << points;
  std::vector<std::uint64_t> members;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    members.clear();
    for (std::uint64_t p = 0; p < points; ++p)
      if (mask >> p & 1) members.push_back(p);
    bool closed = true;
    for (std::size_t op = 0; op < sig.size() && closed; ++op) {
      const std::size_t r = sig[op].arity;
      if (r == 0) {
        closed = mask >> op_rank[op][0] & 1;
        continue;
      }
      if (members.empty()) continue;
      std::vector<std::size_t> idx(r, 0);
      for (;;) {
        std::uint64_t a = 0;
        for (std::size_t q = 0; q < r; ++q) a = a * points + members[idx[q]];
        if (!(mask >> op_rank[op][a] & 1)) {
          closed = false;
          break;
        }
        std::size_t q = r;
        while (q > 0 && ++idx[q - 1] == members.size()) idx[--q] = 0;
        if (q == 0) break;
      }
    }
    if (!closed) continue;
    std::vector<Element> flat;
    for (auto p : members) {
      auto t = rank.unrank(p);
      flat.insert(flat.end(), t.begin(), t.end());
    }
    result.push_back(TupleSet::from_flat(width, std::move(flat)));
  }
  return result;
}

std::vector<Tuple> parse_tuple_list(std::string_view text) {
  std::vector<Tuple> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view part = text.substr(start, end - start);
    Tuple t;
    std::size_t i = 0;
    while (i < part.size()) {
      if (std::isspace(static_cast<unsigned char>(part[i]))) {
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(part[i])))
        throw ParseError("tuple list: unexpected character '" +
                         std::string(1, part[i]) + "'");
      std::uint64_t value = 0;
      while (i < part.size() && std::isdigit(static_cast<unsigned char>(part[i]))) {
        value = value * 10 + static_cast<std::uint64_t>(part[i] - '0');
        if (value > UINT32_MAX) throw ParseError("tuple list: value too large");
        ++i;
      }
      t.push_back(static_cast<Element>(value));
    }
    if (!t.empty()) {
      if (!out.empty() && out.front().size() != t.size())
        throw ParseError("tuple list: tuples of different widths");
      out.push_back(std::move(t));
    }
    start = end + 1;
  }
  return out;
}

}  // namespace ucaw
