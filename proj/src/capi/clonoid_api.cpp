#include <algorithm>
#include <filesystem>

#include "common.hpp"
#include "ucaw/algebra_io.hpp"
#include "ucaw/error.hpp"

using namespace ucaw;
using namespace ucaw::capi;

namespace {

ucaw_clonoid_spec parse_spec(const std::string& text,
                             const std::filesystem::path& base_dir) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("seed file: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("seed file: expected an object");
  auto t = doc.find("source_size");
  if (t == doc.end() || !t->is_number_integer() || t->get<std::int64_t>() < 1)
    throw ParseError("seed file: \"source_size\" must be an integer >= 1");
  auto target = doc.find("target");
  if (target == doc.end())
    throw ParseError("seed file: missing \"target\"");
  std::optional<FiniteAlgebra> alg;
  if (target->is_string()) {
    std::filesystem::path p = target->get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    alg = load_algebra(p);
  } else if (target->is_object()) {
    alg = parse_algebra(target->dump());
  } else {
    throw ParseError("seed file: \"target\" must be a path or an algebra");
  }
  auto seeds = doc.find("seeds");
  if (seeds == doc.end() || !seeds->is_array())
    throw ParseError("seed file: \"seeds\" must be a list");
  std::vector<Seed> out;
  for (std::size_t i = 0; i < seeds->size(); ++i) {
    const Json& s = (*seeds)[i];
    const std::string where = "seed file: seed " + std::to_string(i + 1);
    if (!s.is_object() || !s.contains("arity") || !s.contains("table") ||
        !s["arity"].is_number_integer() || !s["table"].is_array())
      throw ParseError(where + ": expected {\"arity\": n, \"table\": [...]}");
    Seed seed;
    const auto arity = s["arity"].get<std::int64_t>();
    if (arity < 1) throw ParseError(where + ": arity must be >= 1");
    seed.arity = static_cast<std::size_t>(arity);
    for (const auto& v : s["table"]) {
      if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        throw ParseError(where + ": table entries must be elements");
      seed.table.push_back(static_cast<Element>(v.get<std::int64_t>()));
    }
    out.push_back(std::move(seed));
  }
  return ucaw_clonoid_spec{std::move(*alg),
                           static_cast<std::size_t>(t->get<std::int64_t>()),
                           std::move(out)};
}

Clonoid generate(const ucaw_clonoid_spec& spec, std::size_t bound,
                 Budget& budget) {
  return generate_clonoid(spec.target, spec.source_size, spec.seeds, bound,
                          budget);
}

}  // namespace

extern "C" {

ucaw_status ucaw_clonoid_parse(const char* text, const char* base_dir,
                               ucaw_clonoid_spec** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "output pointer");
    *out = new ucaw_clonoid_spec(parse_spec(text, base_dir ? base_dir : "."));
  });
}

ucaw_status ucaw_clonoid_load(const char* path, ucaw_clonoid_spec** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output pointer");
    const std::filesystem::path p(path);
    try {
      *out = new ucaw_clonoid_spec(
          parse_spec(read_text_file(p), p.parent_path()));
    } catch (const ParseError& e) {
      throw ParseError(p.string() + ": " + e.what());
    }
  });
}

void ucaw_clonoid_free(ucaw_clonoid_spec* spec) { delete spec; }

ucaw_status ucaw_clonoid_generate(const ucaw_clonoid_spec* spec, size_t bound,
                                  const ucaw_options* options, char** json) {
  return guarded([&] {
    require(spec, "clonoid");
    Budget budget = make_budget(options);
    const Clonoid c = generate(*spec, bound, budget);
    Json doc;
    doc["source_size"] = c.source_size();
    doc["target"] = c.target().name();
    doc["bound"] = bound;
    doc["seeds"] = spec->seeds.size();
    Json layers = Json::array();
    for (std::size_t n = 1; n <= bound; ++n) {
      Json l;
      l["arity"] = n;
      l["size"] = c.layer(n).size();
      layers.push_back(std::move(l));
    }
    doc["layers"] = std::move(layers);
    doc["has_empty_layer"] = c.has_empty_layer();
    doc["is_clonoid"] = is_clonoid(c);
    finish(doc, budget, false);
    emit(doc, json);
  });
}

ucaw_status ucaw_clonoid_forks(const ucaw_clonoid_spec* spec, size_t bound,
                               const char* word, const ucaw_options* options,
                               char** json) {
  return guarded([&] {
    require(spec, "clonoid");
    require(word, "word");
    const Word w = parse_word(word, spec->source_size);
    if (w.length() > bound)
      throw InvalidArgument("word length exceeds the arity bound");
    Budget budget = make_budget(options);
    const Clonoid c = generate(*spec, bound, budget);
    Json doc;
    doc["word"] = to_string(w);
    doc["layer_size"] = c.layer(w.length()).size();
    doc["pairs"] = pairs_json(phi_forks(c, w));
    finish(doc, budget, true);
    emit(doc, json);
  });
}

ucaw_status ucaw_clonoid_leq(const ucaw_clonoid_spec* c,
                             const ucaw_clonoid_spec* d, size_t k,
                             size_t max_length, size_t bound,
                             const ucaw_options* options, char** json) {
  return guarded([&] {
    require(c, "clonoid C");
    require(d, "clonoid D");
    if (bound == 0) {
      bound = max_length;
      std::size_t low = 1;
      for (std::size_t i = 1; i < k && low <= bound; ++i) low *= c->source_size;
      bound = std::max(bound, low);
    }
    Budget budget = make_budget(options);
    const Clonoid cc = generate(*c, bound, budget);
    const Clonoid dd = generate(*d, bound, budget);
    const auto r = clonoid_leq_criterion(cc, dd, k, max_length);
    Json doc;
    doc["k"] = k;
    doc["max_length"] = max_length;
    doc["bound"] = bound;
    doc["verdict"] = to_string(r.verdict);
    doc["words_checked"] = r.words_checked;
    doc["low_arity_witness"] =
        r.low_arity_witness ? Json(*r.low_arity_witness) : Json(nullptr);
    doc["word"] = r.word ? Json(to_string(*r.word)) : Json(nullptr);
    doc["pair"] = r.pair ? Json({r.pair->first, r.pair->second}) : Json(nullptr);
    finish(doc, budget, r.verdict != CriterionVerdict::holds_up_to_bound);
    emit(doc, json);
  });
}

ucaw_status ucaw_clonoid_th(const ucaw_algebra* a, const ucaw_algebra* b,
                            size_t arity, const ucaw_options* options,
                            char** json) {
  return guarded([&] {
    require(a, "algebra A");
    require(b, "algebra B");
    Budget budget = make_budget(options);
    const TupleSet th = th_clonoid(a->alg, b->alg, arity, budget);
    const std::size_t half = th.width() / 2;
    Json doc;
    doc["arity"] = arity;
    doc["size"] = th.size();
    Json pairs = Json::array();
    for (std::size_t i = 0; i < th.size(); ++i) {
      auto row = th[i];
      pairs.push_back(
          {std::vector<Element>(row.begin(), row.begin() + half),
           std::vector<Element>(row.begin() + half, row.end())});
    }
    doc["pairs"] = std::move(pairs);
    finish(doc, budget, true);
    emit(doc, json);
  });
}

ucaw_status ucaw_galois(const ucaw_algebra* a, const ucaw_algebra* b1,
                        const ucaw_algebra* b2, size_t n_max,
                        const ucaw_options* options, char** json) {
  return guarded([&] {
    require(a, "algebra A");
    require(b1, "algebra B1");
    require(b2, "algebra B2");
    Budget budget = make_budget(options);
    const auto r = galois_check(a->alg, b1->alg, b2->alg, n_max, budget);
    Json doc;
    doc["arity_bound"] = n_max;
    doc["verdict"] = to_string(r.verdict);
    doc["contained"] = r.contained;
    doc["th_included"] = r.th_included;
    doc["failing_arity"] =
        r.failing_arity ? Json(*r.failing_arity) : Json(nullptr);
    if (r.missing_pair) {
      const auto& p = *r.missing_pair;
      const std::size_t half = p.size() / 2;
      doc["missing_pair"] = {std::vector<Element>(p.begin(), p.begin() + half),
                             std::vector<Element>(p.begin() + half, p.end())};
    } else {
      doc["missing_pair"] = nullptr;
    }
    // An inclusion of theories is only checked up to n_max.
    finish(doc, budget, !r.th_included);
    emit(doc, json);
  });
}

}  // extern "C"
