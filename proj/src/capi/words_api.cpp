#include "common.hpp"
#include "ucaw/error.hpp"
#include "ucaw/words.hpp"

using namespace ucaw;
using namespace ucaw::capi;

namespace {

Json positions(const std::vector<std::size_t>& v) { return Json(v); }

}  // namespace

extern "C" {

ucaw_status ucaw_wpo_lea(const char* a, const char* b, size_t t, char** json) {
  return guarded([&] {
    require(a, "word a");
    require(b, "word b");
    const Word wa = parse_word(a, t), wb = parse_word(b, t);
    const auto w = lea_witness(wa, wb);
    Json doc;
    doc["a"] = to_string(wa);
    doc["b"] = to_string(wb);
    doc["verdict"] = w.has_value();
    doc["witness"] = w ? positions(w->h) : Json(nullptr);
    doc["bound_status"] = "exact";
    emit(doc, json);
  });
}

ucaw_status ucaw_wpo_tab(const char* a, const char* b, size_t t, char** json) {
  return guarded([&] {
    require(a, "word a");
    require(b, "word b");
    const Word wa = parse_word(a, t), wb = parse_word(b, t);
    const auto w = lea_witness(wa, wb);
    Json doc;
    doc["a"] = to_string(wa);
    doc["b"] = to_string(wb);
    doc["verdict"] = w.has_value();
    if (w) {
      const Tab tb = tab(wa, wb, *w);
      doc["witness"] = positions(w->h);
      doc["tab"] = positions(tb.map);
      doc["pullback"] = tab_apply(wa.letters(), tb);
    } else {
      doc["witness"] = nullptr;
      doc["tab"] = nullptr;
    }
    doc["bound_status"] = "exact";
    emit(doc, json);
  });
}

ucaw_status ucaw_wpo_antichain(const char* const* words, size_t count,
                               size_t t, char** json) {
  return guarded([&] {
    if (count > 0) require(words, "word list");
    std::vector<Word> list;
    for (size_t i = 0; i < count; ++i) {
      require(words[i], "word");
      list.push_back(parse_word(words[i], t));
    }
    UpSet up(t);
    for (const auto& w : list) up = up.insert(w);
    Json doc;
    Json in = Json::array();
    for (const auto& w : list) in.push_back(to_string(w));
    doc["words"] = std::move(in);
    doc["verdict"] = is_antichain(list);
    Json basis = Json::array();
    for (const auto& w : up.basis()) basis.push_back(to_string(w));
    doc["upset_basis"] = std::move(basis);
    doc["bound_status"] = "exact";
    emit(doc, json);
  });
}

}  // extern "C"
