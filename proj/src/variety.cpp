#include "ucaw/variety.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "ucaw/error.hpp"

namespace ucaw {

// ---------------------------------------------------------------------------
// Identities

void check_identity(const Identity& id, const Signature& sig) {
  check_term(id.lhs, sig);
  check_term(id.rhs, sig);
  const std::size_t used = std::max(id.lhs.max_variable(), id.rhs.max_variable());
  if (used > id.variables)
    throw InvalidArgument("identity uses x" + std::to_string(used) +
                          " but declares " + std::to_string(id.variables) +
                          " variables");
}

std::optional<Tuple> find_violation(const FiniteAlgebra& alg,
                                    const Identity& id) {
  check_identity(id, alg.signature());
  const Table lhs = term_table(alg, id.lhs, id.variables);
  const Table rhs = term_table(alg, id.rhs, id.variables);
  for (std::size_t r = 0; r < lhs.size(); ++r)
    if (lhs[r] != rhs[r]) return TupleRank(id.variables, alg.size()).unrank(r);
  return std::nullopt;
}

bool satisfies(const FiniteAlgebra& alg, const Identity& id) {
  return !find_violation(alg, id).has_value();
}

// ---------------------------------------------------------------------------
// Free algebras

namespace {

std::vector<Tuple> projections(std::size_t n, std::size_t k) {
  const TupleRank rank(k, n);
  std::vector<Tuple> out(k, Tuple(rank.count()));
  Tuple point(k);
  for (std::uint64_t r = 0; r < rank.count(); ++r) {
    rank.unrank_into(r, point);
    for (std::size_t i = 0; i < k; ++i) out[i][r] = point[i];
  }
  return out;
}

std::size_t power_width(std::size_t n, std::size_t k, const Budget& budget) {
  auto w = checked_power(n, k);
  if (!w || *w > budget.limits().max_tuples)
    throw BudgetExceeded(std::to_string(n) + "^" + std::to_string(k) +
                         " coordinates exceed the tuple budget");
  return static_cast<std::size_t>(*w);
}

// Operation tables of a subpower viewed as an algebra on its sorted indices.
FiniteAlgebra subpower_algebra(const Subpower& s, std::string name) {
  const auto& sig = s.domain().signature();
  const std::size_t size = s.size();
  std::vector<Table> tables;
  Tuple result(s.width());
  for (std::size_t op = 0; op < sig.size(); ++op) {
    const std::size_t r = sig[op].arity;
    const TupleRank rank(r, size);
    Table table(rank.count());
    Tuple idx(r);
    std::vector<const Element*> args(r);
    for (std::uint64_t a = 0; a < rank.count(); ++a) {
      rank.unrank_into(a, idx);
      for (std::size_t q = 0; q < r; ++q) args[q] = s[idx[q]].data();
      s.domain().apply(op, args, result.data());
      table[a] = static_cast<Element>(*s.find(result));
    }
    tables.push_back(std::move(table));
  }
  return FiniteAlgebra(std::move(name), size, sig, std::move(tables));
}

}  // namespace

FreeAlgebra free_algebra(const FiniteAlgebra& alg, std::size_t k,
                         Budget& budget) {
  const std::size_t width = power_width(alg.size(), k, budget);
  (void)width;
  const auto gens = projections(alg.size(), k);
  auto domain = PowerDomain::power(alg, gens.empty() ? 1 : gens[0].size());
  Subpower carrier = generate_subpower(domain, gens, true, budget);
  if (carrier.size() == 0)
    throw InvalidArgument("free algebra on 0 generators is empty without "
                          "constants");
  auto algebra = subpower_algebra(
      carrier, "F_" + alg.name() + "(" + std::to_string(k) + ")");
  return FreeAlgebra(alg, k, std::move(carrier), std::move(algebra));
}

std::size_t FreeAlgebra::generator(std::size_t i) const {
  if (i == 0 || i > k_)
    throw InvalidArgument("free generator index " + std::to_string(i) +
                          " out of range 1.." + std::to_string(k_));
  return *carrier_.find(projections(base_.size(), k_)[i - 1]);
}

// ---------------------------------------------------------------------------
// Congruences

CongruencePartition CongruencePartition::from_labels(
    std::span<const std::size_t> labels) {
  CongruencePartition p;
  std::map<std::size_t, std::size_t> renumber;
  p.block_of_.reserve(labels.size());
  for (auto l : labels) {
    auto [it, inserted] = renumber.emplace(l, renumber.size());
    p.block_of_.push_back(it->second);
  }
  p.blocks_ = renumber.size();
  return p;
}

CongruencePartition CongruencePartition::discrete(std::size_t n) {
  std::vector<std::size_t> labels(n);
  std::iota(labels.begin(), labels.end(), std::size_t{0});
  return from_labels(labels);
}

std::vector<std::vector<Element>> CongruencePartition::blocks() const {
  std::vector<std::vector<Element>> out(blocks_);
  for (std::size_t a = 0; a < block_of_.size(); ++a)
    out[block_of_[a]].push_back(static_cast<Element>(a));
  return out;
}

bool CongruencePartition::refines(const CongruencePartition& coarser) const {
  if (coarser.size() != size()) return false;
  std::vector<std::size_t> image(blocks_, static_cast<std::size_t>(-1));
  for (std::size_t a = 0; a < size(); ++a) {
    auto& i = image[block_of_[a]];
    if (i == static_cast<std::size_t>(-1))
      i = coarser.block_of_[a];
    else if (i != coarser.block_of_[a])
      return false;
  }
  return true;
}

bool CongruencePartition::is_compatible_with(const FiniteAlgebra& alg) const {
  if (alg.size() != size()) return false;
  const auto& sig = alg.signature();
  const auto members = blocks();
  for (std::size_t op = 0; op < sig.size(); ++op) {
    const std::size_t r = sig[op].arity;
    const TupleRank rank(r, size());
    Tuple args(r);
    for (std::uint64_t a = 0; a < rank.count(); ++a) {
      rank.unrank_into(a, args);
      const auto value = block_of_[alg.apply(op, args)];
      for (std::size_t q = 0; q < r; ++q) {
        const Element keep = args[q];
        for (Element b : members[block_of_[keep]]) {
          args[q] = b;
          if (block_of_[alg.apply(op, args)] != value) return false;
        }
        args[q] = keep;
      }
    }
  }
  return true;
}

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
  std::vector<std::size_t> parent;
};

}  // namespace

CongruencePartition congruence_generate(
    const FiniteAlgebra& alg,
    std::span<const std::pair<Element, Element>> pairs) {
  const std::size_t n = alg.size();
  UnionFind uf(n);
  std::vector<std::pair<Element, Element>> work;
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n)
      throw InvalidArgument("congruence pair outside the universe");
    if (uf.unite(a, b)) work.emplace_back(a, b);
  }
  const auto& sig = alg.signature();
  // Merging generating pairs suffices: translations of the rest of the
  // equivalence follow by transitivity.
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    for (std::size_t op = 0; op < sig.size(); ++op) {
      const std::size_t r = sig[op].arity;
      if (r == 0) continue;
      const TupleRank rest(r - 1, n);
      Tuple others(r - 1), args(r);
      for (std::uint64_t o = 0; o < rest.count(); ++o) {
        rest.unrank_into(o, others);
        for (std::size_t q = 0; q < r; ++q) {
          std::copy(others.begin(), others.begin() + q, args.begin());
          std::copy(others.begin() + q, others.end(), args.begin() + q + 1);
          args[q] = a;
          const Element fa = alg.apply(op, args);
          args[q] = b;
          const Element fb = alg.apply(op, args);
          if (uf.unite(fa, fb)) work.emplace_back(fa, fb);
        }
      }
    }
  }
  std::vector<std::size_t> labels(n);
  for (std::size_t a = 0; a < n; ++a) labels[a] = uf.find(a);
  return CongruencePartition::from_labels(labels);
}

FiniteAlgebra quotient(const FiniteAlgebra& alg,
                       const CongruencePartition& theta) {
  if (theta.size() != alg.size())
    throw InvalidArgument("partition and algebra differ in size");
  const auto blocks = theta.blocks();
  const std::size_t m = blocks.size();
  const auto& sig = alg.signature();
  std::vector<Table> tables;
  for (std::size_t op = 0; op < sig.size(); ++op) {
    const std::size_t r = sig[op].arity;
    const TupleRank rank(r, m);
    Table table(rank.count());
    Tuple idx(r), args(r);
    for (std::uint64_t a = 0; a < rank.count(); ++a) {
      rank.unrank_into(a, idx);
      for (std::size_t q = 0; q < r; ++q) args[q] = blocks[idx[q]].front();
      table[a] = static_cast<Element>(theta.block_of(alg.apply(op, args)));
    }
    tables.push_back(std::move(table));
  }
  return FiniteAlgebra(alg.name() + "/theta", m, sig, std::move(tables));
}

CongruencePartition fully_invariant_congruence(const FreeAlgebra& free,
                                               std::span<const Identity> sigma,
                                               Budget& budget) {
  const FiniteAlgebra& f = free.as_algebra();
  std::vector<std::pair<Element, Element>> pairs;
  for (const auto& id : sigma) {
    check_identity(id, f.signature());
    auto count = checked_power(f.size(), id.variables);
    if (!count || *count > budget.limits().max_tuples)
      throw BudgetExceeded("too many substitution instances of an identity");
    // term_table over F enumerates every substitution of F-elements at once.
    const Table lhs = term_table(f, id.lhs, id.variables);
    const Table rhs = term_table(f, id.rhs, id.variables);
    for (std::size_t r = 0; r < lhs.size(); ++r)
      if (lhs[r] != rhs[r]) pairs.emplace_back(lhs[r], rhs[r]);
    budget.poll();
  }
  return congruence_generate(f, pairs);
}

RelativelyFreeAlgebra rel_free_quotient(const FiniteAlgebra& alg,
                                        std::size_t m,
                                        std::span<const Identity> sigma,
                                        Budget& budget) {
  FreeAlgebra free = free_algebra(alg, m, budget);
  CongruencePartition theta = fully_invariant_congruence(free, sigma, budget);
  FiniteAlgebra q = quotient(free.as_algebra(), theta);
  return {std::move(free), std::move(theta), std::move(q)};
}

// ---------------------------------------------------------------------------
// Generators and membership

GeneratingSet min_generators(const FiniteAlgebra& alg) {
  const std::size_t n = alg.size();
  Budget unlimited(BudgetLimits{UINT64_MAX, std::nullopt});
  std::vector<Element> subset;
  for (std::size_t k = 0; k <= n; ++k) {
    subset.resize(k);
    std::iota(subset.begin(), subset.end(), Element{0});
    for (;;) {
      std::vector<Tuple> gens;
      for (Element e : subset) gens.push_back({e});
      if (generate_subpower(alg, 1, gens, false, unlimited).size() == n)
        return {subset};
      std::size_t i = k;
      while (i > 0 && subset[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++subset[i - 1];
      for (std::size_t j = i; j < k; ++j) subset[j] = subset[j - 1] + 1;
    }
  }
  throw Error("algebra is not generated by its universe");
}

MembershipResult var_member(const FiniteAlgebra& b, const FiniteAlgebra& a,
                            Budget& budget) {
  if (b.signature() != a.signature())
    throw InvalidArgument("membership: '" + b.name() + "' and '" + a.name() +
                          "' have different signatures");
  MembershipResult result;
  result.generators = min_generators(b).elements;
  const std::size_t k = result.generators.size();
  const std::size_t width = power_width(a.size(), k, budget);
  auto domain = PowerDomain::product({{a, width}, {b, 1}});
  std::vector<Tuple> gens;
  const auto pis = projections(a.size(), k);
  for (std::size_t i = 0; i < k; ++i) {
    Tuple g = pis[i];
    g.push_back(result.generators[i]);
    gens.push_back(std::move(g));
  }
  const Subpower graph = generate_subpower(domain, gens, true, budget);
  result.closure_size = graph.size();
  result.member = true;
  // Sorted order puts tuples with equal A-part next to each other.
  for (std::size_t i = 1; i < graph.size(); ++i) {
    auto u = graph[i - 1], v = graph[i];
    if (std::equal(u.begin(), u.begin() + width, v.begin())) {
      result.member = false;
      result.witness = Identity{graph.witness(i - 1), graph.witness(i), k};
      break;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Subcovers

SubcoverReport subcovers(const FiniteAlgebra& a, std::size_t m_bound,
                         Budget& budget) {
  if (m_bound == 0) throw InvalidArgument("subcover bound must be >= 1");
  SubcoverReport report;
  report.bound = m_bound;
  if (a.size() == 1) return report;
  report.generators = min_generators(a).count();
  const std::size_t k = std::max<std::size_t>(report.generators, 1);
  const FreeAlgebra fk = free_algebra(a, k, budget);

  std::vector<FreeAlgebra> frees;
  for (std::size_t m = 1; m <= m_bound; ++m)
    frees.push_back(m == k ? fk : free_algebra(a, m, budget));

  struct Class {
    Identity representative;
    std::size_t candidates = 0;
    std::vector<CongruencePartition> thetas;
  };
  std::vector<Class> classes;
  std::map<std::vector<CongruencePartition>, std::size_t> index;
  for (std::size_t i = 0; i < fk.size(); ++i)
    for (std::size_t j = i + 1; j < fk.size(); ++j) {
      Identity id{fk.term(i), fk.term(j), k};
      std::vector<CongruencePartition> thetas;
      for (const auto& f : frees)
        thetas.push_back(fully_invariant_congruence(
            f, std::span<const Identity>(&id, 1), budget));
      ++report.candidate_count;
      auto [it, inserted] = index.emplace(thetas, classes.size());
      if (inserted) classes.push_back({id, 0, std::move(thetas)});
      ++classes[it->second].candidates;
    }
  report.class_count = classes.size();

  // W1 <= W2 at the bound when theta_m(W2) refines theta_m(W1) for every m.
  auto below = [](const Class& w1, const Class& w2) {
    for (std::size_t m = 0; m < w1.thetas.size(); ++m)
      if (!w2.thetas[m].refines(w1.thetas[m])) return false;
    return true;
  };
  for (const auto& c : classes) {
    bool maximal = true;
    for (const auto& other : classes)
      if (&other != &c && below(c, other)) maximal = false;
    if (!maximal) continue;
    SubcoverClass out{c.representative, c.candidates, {}};
    for (const auto& theta : c.thetas)
      out.quotient_sizes.push_back(theta.block_count());
    report.maximal.push_back(std::move(out));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Member enumeration and criticality

namespace {

// Decides whether x_i -> images[i] extends to a homomorphism from a free
// algebra into a candidate given by raw tables. Elements are evaluated along
// their witness terms in order of depth, then every operation is checked.
class HomomorphismTest {
 public:
  explicit HomomorphismTest(const FreeAlgebra& free)
      : f_(free.as_algebra()), k_(free.generator_count()) {
    const auto& sig = f_.signature();
    std::vector<std::size_t> order(free.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) {
      return free.term(x).depth() < free.term(y).depth();
    });
    const auto domain = free.carrier().domain();
    for (auto e : order) {
      const Term& t = free.term(e);
      Step step{e, 0, 0, {}};
      if (t.is_variable()) {
        step.variable = t.variable_index();
      } else {
        step.op = t.symbol();
        for (const Term& c : t.args()) {
          Tuple value = evaluate_on_generators(
              domain, c, free.carrier().generators());
          step.args.push_back(*free.find(value));
        }
      }
      steps_.push_back(std::move(step));
    }
    arity_.resize(sig.size());
    for (std::size_t op = 0; op < sig.size(); ++op) arity_[op] = sig[op].arity;
  }

  bool extends(const std::vector<Table>& tables, std::size_t s,
               std::span<const Element> images) {
    psi_.assign(f_.size(), 0);
    for (const auto& step : steps_) {
      if (step.variable) {
        psi_[step.element] = images[step.variable - 1];
        continue;
      }
      std::size_t index = 0;
      for (auto a : step.args) index = index * s + psi_[a];
      psi_[step.element] = tables[step.op][index];
    }
    for (std::size_t op = 0; op < arity_.size(); ++op) {
      const auto& ftable = f_.table(op);
      const std::size_t r = arity_[op];
      const std::size_t fsize = f_.size();
      for (std::size_t a = 0; a < ftable.size(); ++a) {
        std::size_t rest = a, index = 0, scale = 1;
        for (std::size_t q = 0; q < r; ++q) {
          index += psi_[rest % fsize] * scale;
          rest /= fsize;
          scale *= s;
        }
        if (tables[op][index] != psi_[ftable[a]]) return false;
      }
    }
    return true;
  }

  std::size_t generator_count() const { return k_; }

 private:
  struct Step {
    std::size_t element;
    std::size_t variable;  // 0 unless the witness is a variable
    std::size_t op;
    std::vector<std::size_t> args;
  };
  FiniteAlgebra f_;
  std::size_t k_;
  std::vector<Step> steps_;
  std::vector<std::size_t> arity_;
  std::vector<Element> psi_;
};

bool all_assignments_extend(HomomorphismTest& test,
                            const std::vector<Table>& tables, std::size_t s) {
  const TupleRank rank(test.generator_count(), s);
  Tuple images(test.generator_count());
  for (std::uint64_t r = 0; r < rank.count(); ++r) {
    rank.unrank_into(r, images);
    if (!test.extends(tables, s, images)) return false;
  }
  return true;
}

}  // namespace

std::vector<FiniteAlgebra> enumerate_members(const FiniteAlgebra& a,
                                             std::size_t s,
                                             std::uint64_t candidate_limit,
                                             Budget& budget) {
  if (s == 0) throw InvalidArgument("member size must be >= 1");
  const auto& sig = a.signature();
  std::vector<std::size_t> lengths;
  std::uint64_t candidates = 1;
  for (const auto& sym : sig) {
    auto len = checked_power(s, sym.arity);
    auto count = len ? checked_power(s, *len) : std::nullopt;
    if (!count || *count > candidate_limit ||
        candidates > candidate_limit / *count)
      throw BudgetExceeded("more than " + std::to_string(candidate_limit) +
                           " operation tables of size " + std::to_string(s));
    candidates *= *count;
    lengths.push_back(static_cast<std::size_t>(*len));
  }

  // Identities of A in one and two variables prune most candidates before
  // the exact membership test.
  std::vector<HomomorphismTest> tests;
  for (std::size_t k = 1; k <= 2; ++k) {
    auto w = checked_power(a.size(), k);
    if (!w || *w > 4096) break;
    tests.emplace_back(free_algebra(a, k, budget));
  }

  std::vector<Table> tables;
  for (auto len : lengths) tables.emplace_back(len, 0);
  std::set<std::vector<Table>> seen;
  std::vector<FiniteAlgebra> members;
  for (std::uint64_t c = 0; c < candidates; ++c) {
    if (c > 0) {
      // Odometer over all table entries, last operation fastest.
      for (std::size_t op = tables.size(); op-- > 0;) {
        bool carry = false;
        for (std::size_t e = tables[op].size(); e-- > 0;) {
          if (++tables[op][e] < s) {
            carry = false;
            break;
          }
          tables[op][e] = 0;
          carry = true;
        }
        if (!carry) break;
      }
    }
    if ((c & 0xFFF) == 0) budget.poll();
    bool pass = true;
    for (auto& test : tests)
      if (!(pass = all_assignments_extend(test, tables, s))) break;
    if (!pass) continue;
    FiniteAlgebra candidate("", s, sig, tables);
    FiniteAlgebra canon = canonical_form(candidate);
    if (!seen.insert(canon.tables()).second) continue;
    if (!var_member(canon, a, budget).member) continue;
    members.push_back(std::move(canon));
  }
  std::sort(members.begin(), members.end(),
            [](const FiniteAlgebra& x, const FiniteAlgebra& y) {
              return x.tables() < y.tables();
            });
  for (std::size_t i = 0; i < members.size(); ++i)
    members[i] = members[i].renamed("M" + std::to_string(s) + "_" +
                                    std::to_string(i + 1));
  return members;
}

CriticalityReport is_cardinality_critical(const FiniteAlgebra& b,
                                          std::uint64_t candidate_limit,
                                          Budget& budget) {
  CriticalityReport report;
  if (b.size() == 1) {
    report.critical = true;
    report.by_convention = true;
    return report;
  }
  for (std::size_t s = 1; s < b.size(); ++s) {
    auto found = enumerate_members(b, s, candidate_limit, budget);
    report.smaller_members.insert(report.smaller_members.end(), found.begin(),
                                  found.end());
  }
  // Trivial factors do not change the generated variety.
  std::vector<FiniteAlgebra> factors;
  for (const auto& m : report.smaller_members)
    if (m.size() > 1) factors.push_back(m);
  if (factors.empty()) factors.push_back(report.smaller_members.front());
  const FiniteAlgebra product = direct_product(factors);
  auto membership = var_member(b, product, budget);
  report.critical = !membership.member;
  report.witness = membership.witness;
  return report;
}

}  // namespace ucaw
