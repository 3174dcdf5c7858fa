#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "common.hpp"
#include "ucaw/algebra_io.hpp"
#include "ucaw/cache.hpp"
#include "ucaw/error.hpp"
#include "ucaw/maltsev.hpp"
#include "ucaw/subpower.hpp"

using namespace ucaw;
using namespace ucaw::capi;

namespace {

Json term_verdict(const FiniteAlgebra& alg, const std::optional<Term>& t,
                  bool verified) {
  Json doc;
  doc["verdict"] = t.has_value();
  if (t) {
    doc["witness"] = to_string(*t, alg.signature());
    doc["verified"] = verified;
  } else {
    doc["witness"] = nullptr;
  }
  return doc;
}

Json tuples_json(const TupleSet& set) {
  Json j = Json::array();
  for (std::size_t i = 0; i < set.size(); ++i)
    j.push_back(std::vector<Element>(set[i].begin(), set[i].end()));
  return j;
}

Json membership_json(const FiniteAlgebra& b, const MembershipResult& r) {
  Json doc;
  doc["verdict"] = r.member;
  doc["generators"] = r.generators;
  doc["closure_size"] = r.closure_size;
  if (r.witness) {
    Json w = identity_json(*r.witness, b.signature());
    // The identity fails in B at the chosen generators.
    w["fails_at"] = r.generators;
    doc["witness"] = std::move(w);
  } else {
    doc["witness"] = nullptr;
  }
  return doc;
}

}  // namespace

extern "C" {

ucaw_status ucaw_algebra_parse(const char* text, ucaw_algebra** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "output pointer");
    *out = new ucaw_algebra{parse_algebra(text)};
  });
}

ucaw_status ucaw_algebra_load(const char* path, ucaw_algebra** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output pointer");
    *out = new ucaw_algebra{load_algebra(path)};
  });
}

void ucaw_algebra_free(ucaw_algebra* alg) { delete alg; }

size_t ucaw_algebra_size(const ucaw_algebra* alg) {
  return alg ? alg->alg.size() : 0;
}

ucaw_status ucaw_algebra_serialize(const ucaw_algebra* alg, char** out) {
  return guarded([&] {
    require(alg, "algebra");
    require(out, "output pointer");
    const std::string text = serialize_algebra(alg->alg);
    char* buffer = static_cast<char*>(std::malloc(text.size() + 1));
    if (!buffer) throw std::bad_alloc();
    std::memcpy(buffer, text.c_str(), text.size() + 1);
    *out = buffer;
  });
}

ucaw_status ucaw_info(const ucaw_algebra* alg, char** json) {
  return guarded([&] {
    require(alg, "algebra");
    const auto& a = alg->alg;
    Json doc;
    doc["name"] = a.name();
    doc["size"] = a.size();
    Json ops = Json::array();
    for (const auto& s : a.signature()) {
      Json op;
      op["symbol"] = s.name;
      op["arity"] = s.arity;
      ops.push_back(std::move(op));
    }
    doc["operations"] = std::move(ops);
    doc["has_constants"] = a.signature().has_constants();
    const auto gens = min_generators(a);
    doc["min_generators"] = gens.count();
    doc["generating_set"] = gens.elements;
    finish(doc, Budget(), true);
    emit(doc, json);
  });
}

ucaw_status ucaw_edge_term(const ucaw_algebra* alg, size_t k,
                           const ucaw_options* options, char** json) {
  return guarded([&] {
    require(alg, "algebra");
    Budget budget = make_budget(options);
    auto t = has_edge_term(alg->alg, k, budget);
    Json doc;
    doc["property"] = "edge";
    doc["k"] = k;
    doc.update(term_verdict(alg->alg, t, t && is_edge_term(alg->alg, *t, k)));
    finish(doc, budget, true);
    emit(doc, json);
  });
}

ucaw_status ucaw_min_edge_arity(const ucaw_algebra* alg, size_t k_max,
                                const ucaw_options* options, char** json) {
  return guarded([&] {
    require(alg, "algebra");
    Budget budget = make_budget(options);
    auto r = min_edge_arity(alg->alg, k_max, budget);
    Json doc;
    doc["property"] = "min-edge-arity";
    doc["kmax"] = k_max;
    doc["verdict"] = r.has_value();
    if (r) {
      doc["k"] = r->k;
      doc["witness"] = to_string(r->witness, alg->alg.signature());
      doc["verified"] = is_edge_term(alg->alg, r->witness, r->k);
    } else {
      doc["k"] = nullptr;
      doc["witness"] = nullptr;
    }
    // "No edge term" is only known for arities up to k_max.
    finish(doc, budget, r.has_value());
    emit(doc, json);
  });
}

ucaw_status ucaw_malcev_term(const ucaw_algebra* alg,
                             const ucaw_options* options, char** json) {
  return guarded([&] {
    require(alg, "algebra");
    Budget budget = make_budget(options);
    auto t = has_malcev_term(alg->alg, budget);
    Json doc;
    doc["property"] = "malcev";
    doc.update(term_verdict(alg->alg, t, t && is_malcev_term(alg->alg, *t)));
    finish(doc, budget, true);
    emit(doc, json);
  });
}

ucaw_status ucaw_nu_term(const ucaw_algebra* alg, size_t k,
                         const ucaw_options* options, char** json) {
  return guarded([&] {
    require(alg, "algebra");
    Budget budget = make_budget(options);
    auto t = has_nu_term(alg->alg, k, budget);
    Json doc;
    doc["property"] = "near-unanimity";
    doc["k"] = k;
    doc.update(term_verdict(alg->alg, t, t && is_nu_term(alg->alg, *t, k)));
    finish(doc, budget, true);
    emit(doc, json);
  });
}

ucaw_status ucaw_clone_size(const ucaw_algebra* alg, size_t arity,
                            const ucaw_options* options, char** json) {
  return guarded([&] {
    require(alg, "algebra");
    if (arity == 0) throw InvalidArgument("arity must be >= 1");
    Budget budget = make_budget(options);
    const FreeAlgebra f = free_algebra(alg->alg, arity, budget);
    Json doc;
    doc["arity"] = arity;
    doc["size"] = f.size();
    finish(doc, budget, true);
    emit(doc, json);
  });
}

ucaw_status ucaw_free_algebra(const ucaw_algebra* alg, size_t k,
                              const char* cache_dir,
                              const ucaw_options* options, char** json) {
  return guarded([&] {
    require(alg, "algebra");
    const auto& a = alg->alg;
    Budget budget = make_budget(options);
    std::optional<FreeAlgebraRecord> record;
    std::optional<FreeAlgebraCache> cache;
    if (cache_dir && *cache_dir) {
      cache.emplace(cache_dir);
      std::string problem;
      record = cache->load(a, k, &problem);
      if (!problem.empty())
        std::fprintf(stderr, "ucaw: warning: %s; recomputing\n",
                     problem.c_str());
    }
    if (!record) {
      const FreeAlgebra f = free_algebra(a, k, budget);
      record = make_record(f, budget.used());
      if (cache) {
        try {
          cache->store(a, k, *record);
        } catch (const IoError& e) {
          std::fprintf(stderr, "ucaw: warning: %s\n", e.what());
        }
      }
    }
    Json doc;
    doc["generators"] = k;
    doc["size"] = record->size();
    Json elements = Json::array();
    for (std::size_t i = 0; i < record->size(); ++i) {
      Json e;
      e["term"] = record->terms[i];
      e["table"] = record->tables[i];
      elements.push_back(std::move(e));
    }
    doc["elements"] = std::move(elements);
    // Reported from the record so cache hits print the same counters.
    doc["tuples_used"] = record->tuples_used;
    doc["bound_status"] = "exact";
    emit(doc, json);
  });
}

ucaw_status ucaw_member(const ucaw_algebra* b, const ucaw_algebra* a,
                        const ucaw_options* options, char** json) {
  return guarded([&] {
    require(b, "algebra B");
    require(a, "algebra A");
    Budget budget = make_budget(options);
    const auto r = var_member(b->alg, a->alg, budget);
    Json doc;
    doc["algebra"] = b->alg.name();
    doc["variety_of"] = a->alg.name();
    doc.update(membership_json(b->alg, r));
    finish(doc, budget, true);
    emit(doc, json);
  });
}

ucaw_status ucaw_forks(const ucaw_algebra* alg, size_t width, const char* gens,
                       const char* super_gens, size_t k,
                       const ucaw_options* options, char** json) {
  return guarded([&] {
    require(alg, "algebra");
    require(gens, "generators");
    if (width == 0) throw InvalidArgument("width must be >= 1");
    Budget budget = make_budget(options);
    auto check_width = [&](const std::vector<Tuple>& list) {
      for (const auto& t : list)
        if (t.size() != width)
          throw InvalidArgument("generator of width " +
                                std::to_string(t.size()) + ", expected " +
                                std::to_string(width));
    };
    const auto f_gens = parse_tuple_list(gens);
    check_width(f_gens);
    const Subpower f = generate_subpower(alg->alg, width, f_gens, false, budget);
    Json doc;
    doc["width"] = width;
    doc["size"] = f.size();
    doc["empty_without_constants"] = f.is_empty_without_constants();
    doc["tuples"] = tuples_json(f.tuples());
    Json forks = Json::array();
    for (std::size_t i = 1; i <= width; ++i) {
      Json fj;
      fj["place"] = i;
      fj["pairs"] = pairs_json(fork(f, i).pairs);
      forks.push_back(std::move(fj));
    }
    doc["forks"] = std::move(forks);
    if (super_gens) {
      auto g_gens = f_gens;
      const auto extra = parse_tuple_list(super_gens);
      check_width(extra);
      g_gens.insert(g_gens.end(), extra.begin(), extra.end());
      const Subpower g =
          generate_subpower(alg->alg, width, g_gens, false, budget);
      const FgReport report = fg_compare(f, g, k);
      Json cmp;
      cmp["k"] = k;
      cmp["super_size"] = g.size();
      cmp["fg_equal"] = report.equal;
      cmp["sets_equal"] = f == g;
      cmp["fork_place"] =
          report.fork_place ? Json(*report.fork_place) : Json(nullptr);
      cmp["projection"] = report.projection.empty()
                              ? Json(nullptr)
                              : Json(report.projection);
      doc["comparison"] = std::move(cmp);
    }
    finish(doc, budget, true);
    emit(doc, json);
  });
}

ucaw_status ucaw_subcovers(const ucaw_algebra* alg, size_t bound,
                           const ucaw_options* options, char** json) {
  return guarded([&] {
    require(alg, "algebra");
    Budget budget = make_budget(options);
    const auto r = subcovers(alg->alg, bound, budget);
    const auto& sig = alg->alg.signature();
    Json doc;
    doc["generators"] = r.generators;
    doc["bound"] = r.bound;
    doc["candidates"] = r.candidate_count;
    doc["classes"] = r.class_count;
    Json maximal = Json::array();
    for (const auto& c : r.maximal) {
      Json cj;
      cj["identity"] = identity_json(c.representative, sig);
      cj["candidates"] = c.candidates;
      cj["quotient_sizes"] = c.quotient_sizes;
      maximal.push_back(std::move(cj));
    }
    doc["maximal"] = std::move(maximal);
    finish(doc, budget, false);
    emit(doc, json);
  });
}

ucaw_status ucaw_critical(const ucaw_algebra* b, uint64_t candidate_limit,
                          const ucaw_options* options, char** json) {
  return guarded([&] {
    require(b, "algebra");
    Budget budget = make_budget(options);
    const auto r = is_cardinality_critical(b->alg, candidate_limit, budget);
    Json doc;
    doc["algebra"] = b->alg.name();
    doc["verdict"] = r.critical;
    doc["by_convention"] = r.by_convention;
    Json members = Json::array();
    for (const auto& m : r.smaller_members) {
      Json mj;
      mj["size"] = m.size();
      mj["tables"] = m.tables();
      members.push_back(std::move(mj));
    }
    doc["smaller_members"] = std::move(members);
    doc["witness"] =
        r.witness ? identity_json(*r.witness, b->alg.signature()) : Json();
    finish(doc, budget, true);
    emit(doc, json);
  });
}

}  // extern "C"
