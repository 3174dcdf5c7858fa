#include "ucaw/clonoid.hpp"

#include <algorithm>
#include <set>

#include "ucaw/error.hpp"
#include "ucaw/subpower.hpp"
#include "ucaw/variety.hpp"

namespace ucaw {

namespace {

std::size_t layer_width(std::size_t t, std::size_t n) {
  auto w = checked_power(t, n);
  if (!w || *w > (std::uint64_t{1} << 24))
    throw InvalidArgument("layer width " + std::to_string(t) + "^" +
                          std::to_string(n) + " is too large");
  return static_cast<std::size_t>(*w);
}

// Calls visit(sigma) for every map {1..k} -> {1..n}, in rank order.
template <class Visit>
void for_each_map(std::size_t k, std::size_t n, Visit&& visit) {
  std::vector<std::size_t> sigma(k, 1);
  for (;;) {
    visit(std::span<const std::size_t>(sigma));
    std::size_t q = k;
    while (q > 0 && sigma[q - 1] == n) sigma[--q] = 1;
    if (q == 0) return;
    ++sigma[q - 1];
  }
}

bool pairs_included(const PairSet& small, const PairSet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

Clonoid Clonoid::from_layers(FiniteAlgebra target, std::size_t source_size,
                             std::vector<TupleSet> layers) {
  if (source_size == 0) throw InvalidArgument("source set must be nonempty");
  for (std::size_t n = 1; n <= layers.size(); ++n) {
    const std::size_t w = layer_width(source_size, n);
    if (layers[n - 1].width() == 0) layers[n - 1] = TupleSet(w);
    if (layers[n - 1].width() != w)
      throw InvalidArgument("layer " + std::to_string(n) + " has width " +
                            std::to_string(layers[n - 1].width()) +
                            ", expected " + std::to_string(w));
    for (Element v : layers[n - 1].flat())
      if (v >= target.size())
        throw InvalidArgument("layer " + std::to_string(n) +
                              " has a value outside the target");
  }
  Clonoid c(std::move(target), source_size);
  c.layers_ = std::move(layers);
  return c;
}

const TupleSet& Clonoid::layer(std::size_t n) const {
  if (n == 0 || n > layers_.size())
    throw InvalidArgument("arity " + std::to_string(n) + " outside 1.." +
                          std::to_string(layers_.size()));
  return layers_[n - 1];
}

bool Clonoid::has_empty_layer() const {
  return std::any_of(layers_.begin(), layers_.end(),
                     [](const TupleSet& l) { return l.empty(); });
}

bool Clonoid::seeds_inside(const Clonoid& other) const {
  if (t_ != other.t_ || !target_.same_structure(other.target_)) return false;
  for (const auto& s : seeds_) {
    if (s.arity > other.arity_bound()) return false;
    if (!other.layer(s.arity).contains(s.table)) return false;
  }
  return true;
}

Table minor(std::span<const Element> f, std::size_t source_size,
            std::span<const std::size_t> sigma, std::size_t n) {
  const std::size_t k = sigma.size();
  if (f.size() != layer_width(source_size, k))
    throw InvalidArgument("minor: table length " + std::to_string(f.size()) +
                          " does not match arity " + std::to_string(k));
  for (auto i : sigma)
    if (i == 0 || i > n)
      throw InvalidArgument("minor: index " + std::to_string(i) +
                            " outside 1.." + std::to_string(n));
  const TupleRank rank(n, source_size);
  Table out(rank.count());
  Tuple point(n);
  for (std::uint64_t r = 0; r < rank.count(); ++r) {
    rank.unrank_into(r, point);
    std::size_t index = 0;
    for (auto i : sigma) index = index * source_size + point[i - 1];
    out[r] = f[index];
  }
  return out;
}

Clonoid generate_clonoid(const FiniteAlgebra& target, std::size_t source_size,
                         std::span<const Seed> seeds, std::size_t arity_bound,
                         Budget& budget) {
  if (source_size == 0) throw InvalidArgument("source set must be nonempty");
  if (arity_bound == 0) throw InvalidArgument("arity bound must be >= 1");
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const auto& s = seeds[i];
    const std::string where = "seed " + std::to_string(i + 1);
    if (s.arity == 0 || s.arity > arity_bound)
      throw InvalidArgument(where + ": arity " + std::to_string(s.arity) +
                            " outside 1.." + std::to_string(arity_bound));
    if (s.table.size() != layer_width(source_size, s.arity))
      throw InvalidArgument(where + ": table length " +
                            std::to_string(s.table.size()) + ", expected " +
                            std::to_string(layer_width(source_size, s.arity)));
    for (Element v : s.table)
      if (v >= target.size())
        throw InvalidArgument(where + ": value " + std::to_string(v) +
                              " outside the target");
  }
  Clonoid c(target, source_size);
  c.seeds_.assign(seeds.begin(), seeds.end());
  c.generated_ = true;
  for (std::size_t n = 1; n <= arity_bound; ++n) {
    std::set<Tuple> minors;
    for (const auto& s : seeds)
      for_each_map(s.arity, n, [&](std::span<const std::size_t> sigma) {
        minors.insert(minor(s.table, source_size, sigma, n));
      });
    std::vector<Tuple> gens(minors.begin(), minors.end());
    auto domain = PowerDomain::power(target, layer_width(source_size, n));
    c.layers_.push_back(
        generate_subpower(domain, gens, false, budget).tuples());
    if (c.layers_.back().width() == 0)
      c.layers_.back() = TupleSet(layer_width(source_size, n));
  }
  return c;
}

bool is_clonoid(const Clonoid& c) {
  const std::size_t t = c.source_size();
  for (std::size_t n = 1; n <= c.arity_bound(); ++n)
    if (!is_closed(PowerDomain::power(c.target(), layer_width(t, n)),
                   c.layer(n)))
      return false;
  for (std::size_t k = 1; k <= c.arity_bound(); ++k) {
    const TupleSet& from = c.layer(k);
    for (std::size_t n = 1; n <= c.arity_bound(); ++n) {
      const TupleSet& to = c.layer(n);
      bool closed = true;
      for (std::size_t i = 0; i < from.size() && closed; ++i)
        for_each_map(k, n, [&](std::span<const std::size_t> sigma) {
          if (closed && !to.contains(minor(from[i], t, sigma, n)))
            closed = false;
        });
      if (!closed) return false;
    }
  }
  return true;
}

PairSet phi_forks(const Clonoid& c, const Word& a) {
  if (a.alphabet() != c.source_size())
    throw InvalidArgument("word alphabet differs from the source set");
  const TupleSet& layer = c.layer(a.length());
  if (layer.empty()) return {};
  // Tables are sorted, so functions agreeing below rank(a) are contiguous:
  // these are the forks of the layer at place rank(a) + 1.
  const auto r = TupleRank(a.length(), c.source_size()).rank(a.letters());
  return fork(layer, static_cast<std::size_t>(r) + 1).pairs;
}

std::vector<Word> psi(const Clonoid& c, const PairSet& alpha,
                      std::size_t max_length) {
  if (max_length > c.arity_bound())
    throw InvalidArgument("word length bound exceeds the arity bound");
  PairSet sorted = alpha;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Word> out;
  for (auto& w : all_words(c.source_size(), max_length))
    if (pairs_included(phi_forks(c, w), sorted)) out.push_back(std::move(w));
  return out;
}

namespace {

void check_comparable(const Clonoid& c, const Clonoid& d,
                      std::size_t max_length) {
  if (c.source_size() != d.source_size() ||
      !c.target().same_structure(d.target()))
    throw InvalidArgument("clonoids differ in source set or target");
  if (max_length > c.arity_bound() || max_length > d.arity_bound())
    throw InvalidArgument("word length bound exceeds an arity bound");
}

std::size_t low_arity(const Clonoid& c, std::size_t k) {
  if (k < 2) throw InvalidArgument("edge arity must be >= 2");
  auto n = checked_power(c.source_size(), k - 1);
  if (!n || *n > c.arity_bound())
    throw InvalidArgument("arity bound " + std::to_string(c.arity_bound()) +
                          " is below t^(k-1)");
  return static_cast<std::size_t>(*n);
}

}  // namespace

CriterionResult clonoid_leq_criterion(const Clonoid& c, const Clonoid& d,
                                      std::size_t k, std::size_t max_length) {
  check_comparable(c, d, max_length);
  const std::size_t n0 = low_arity(c, k);
  low_arity(d, k);
  CriterionResult result;
  const TupleSet& low_c = c.layer(n0);
  const TupleSet& low_d = d.layer(n0);
  for (std::size_t i = 0; i < low_c.size(); ++i)
    if (!low_d.contains(low_c[i])) {
      result.verdict = CriterionVerdict::fails;
      result.low_arity_witness = Table(low_c[i].begin(), low_c[i].end());
      return result;
    }
  for (const auto& w : all_words(c.source_size(), max_length)) {
    ++result.words_checked;
    const PairSet fc = phi_forks(c, w), fd = phi_forks(d, w);
    for (const auto& p : fc)
      if (!std::binary_search(fd.begin(), fd.end(), p)) {
        result.verdict = CriterionVerdict::fails;
        result.word = w;
        result.pair = p;
        return result;
      }
  }
  result.verdict = c.is_generated() && c.seeds_inside(d)
                       ? CriterionVerdict::holds
                       : CriterionVerdict::holds_up_to_bound;
  return result;
}

bool psi_condition_all_relations(const Clonoid& c, const Clonoid& d,
                                 std::size_t max_length) {
  check_comparable(c, d, max_length);
  const std::size_t b = c.target().size();
  if (b > 3) throw InvalidArgument("all-relation check needs |B| <= 3");
  auto mask = [&](const PairSet& s) {
    std::uint32_t m = 0;
    for (auto [x, y] : s) m |= std::uint32_t{1} << (x * b + y);
    return m;
  };
  std::vector<std::pair<std::uint32_t, std::uint32_t>> forks;
  for (const auto& w : all_words(c.source_size(), max_length))
    forks.emplace_back(mask(phi_forks(c, w)), mask(phi_forks(d, w)));
  const std::uint32_t relations = std::uint32_t{1} << (b * b);
  for (std::uint32_t alpha = 0; alpha < relations; ++alpha)
    for (auto [fc, fd] : forks) {
      const bool in_d = (fd & ~alpha) == 0;
      const bool in_c = (fc & ~alpha) == 0;
      if (in_d && !in_c) return false;
    }
  return true;
}

ClonoidKey clonoid_key(const Clonoid& c, std::size_t k,
                       std::size_t max_length) {
  const std::size_t n0 = low_arity(c, k);
  if (max_length > c.arity_bound())
    throw InvalidArgument("word length bound exceeds the arity bound");
  ClonoidKey key{c.layer(n0), {}};
  for (const auto& w : all_words(c.source_size(), max_length))
    key.forks.push_back(phi_forks(c, w));
  return key;
}

TupleSet th_clonoid(const FiniteAlgebra& a, const FiniteAlgebra& b,
                    std::size_t n, Budget& budget) {
  if (a.signature() != b.signature())
    throw InvalidArgument("th: '" + a.name() + "' and '" + b.name() +
                          "' have different signatures");
  if (n == 0) throw InvalidArgument("th: arity must be >= 1");
  auto wa_opt = checked_power(a.size(), n);
  auto wb_opt = checked_power(b.size(), n);
  if (!wa_opt || !wb_opt ||
      *wa_opt + *wb_opt > budget.limits().max_tuples)
    throw BudgetExceeded("th: power too large for the tuple budget");
  const std::size_t wa = *wa_opt, wb = *wb_opt;
  auto domain = PowerDomain::product({{a, wa}, {b, wb}});
  const TupleRank ra(n, a.size()), rb(n, b.size());
  std::vector<Tuple> gens(n, Tuple(wa + wb));
  Tuple point(n);
  for (std::size_t r = 0; r < wa; ++r) {
    ra.unrank_into(r, point);
    for (std::size_t i = 0; i < n; ++i) gens[i][r] = point[i];
  }
  for (std::size_t r = 0; r < wb; ++r) {
    rb.unrank_into(r, point);
    for (std::size_t i = 0; i < n; ++i) gens[i][wa + r] = point[i];
  }
  const Subpower g = generate_subpower(domain, gens, false, budget);

  // Group A-parts by their B-part.
  std::vector<std::size_t> order(g.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto b_part = [&](std::size_t i) { return g[i].subspan(wa); };
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) {
    auto bx = b_part(x), by = b_part(y);
    return std::lexicographical_compare(bx.begin(), bx.end(), by.begin(),
                                        by.end());
  });
  std::vector<Element> flat;
  std::size_t begin = 0;
  while (begin < order.size()) {
    std::size_t end = begin + 1;
    while (end < order.size() &&
           std::ranges::equal(b_part(order[begin]), b_part(order[end])))
      ++end;
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = begin; j < end; ++j) {
        auto u = g[order[i]].first(wa), v = g[order[j]].first(wa);
        flat.insert(flat.end(), u.begin(), u.end());
        flat.insert(flat.end(), v.begin(), v.end());
      }
    begin = end;
  }
  return TupleSet::from_flat(2 * wa, std::move(flat));
}

GaloisResult galois_check(const FiniteAlgebra& a, const FiniteAlgebra& b1,
                          const FiniteAlgebra& b2, std::size_t n_max,
                          Budget& budget) {
  if (n_max == 0) throw InvalidArgument("galois: arity bound must be >= 1");
  for (const auto* b : {&b1, &b2})
    if (!var_member(*b, a, budget).member)
      throw PreconditionFailed("galois: '" + b->name() +
                               "' does not lie in Var(" + a.name() + ")");
  GaloisResult result;
  result.contained = var_member(b1, b2, budget).member;
  result.th_included = true;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const TupleSet t1 = th_clonoid(a, b1, n, budget);
    const TupleSet t2 = th_clonoid(a, b2, n, budget);
    for (std::size_t i = 0; i < t2.size(); ++i)
      if (!t1.contains(t2[i])) {
        result.th_included = false;
        result.failing_arity = n;
        result.missing_pair = Tuple(t2[i].begin(), t2[i].end());
        break;
      }
    if (!result.th_included) break;
  }
  if (result.contained == result.th_included)
    result.verdict = GaloisVerdict::agreement;
  else if (result.contained)
    result.verdict = GaloisVerdict::discrepancy;
  else
    result.verdict = GaloisVerdict::consistent_up_to_bound;
  return result;
}

std::string to_string(CriterionVerdict v) {
  switch (v) {
    case CriterionVerdict::holds:
      return "holds";
    case CriterionVerdict::holds_up_to_bound:
      return "holds-up-to-bound";
    case CriterionVerdict::fails:
      return "fails";
  }
  return "unknown";
}

std::string to_string(GaloisVerdict v) {
  switch (v) {
    case GaloisVerdict::agreement:
      return "agreement";
    case GaloisVerdict::consistent_up_to_bound:
      return "consistent-up-to-bound";
    case GaloisVerdict::discrepancy:
      return "discrepancy";
  }
  return "unknown";
}

}  // namespace ucaw
