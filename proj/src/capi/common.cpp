#include "common.hpp"

#include <cstdlib>
#include <cstring>
#include <new>

#include "ucaw/error.hpp"

namespace ucaw::capi {

namespace {
thread_local std::string last_error;
}

void set_last_error(std::string message) { last_error = std::move(message); }

ucaw_status status_of_current_exception() noexcept {
  try {
    throw;
  } catch (const BudgetExceeded& e) {
    set_last_error(e.what());
    return UCAW_ERR_BUDGET;
  } catch (const ParseError& e) {
    set_last_error(e.what());
    return UCAW_ERR_PARSE;
  } catch (const InvalidArgument& e) {
    set_last_error(e.what());
    return UCAW_ERR_INVALID_ARGUMENT;
  } catch (const PreconditionFailed& e) {
    set_last_error(e.what());
    return UCAW_ERR_PRECONDITION;
  } catch (const IoError& e) {
    set_last_error(e.what());
    return UCAW_ERR_IO;
  } catch (const std::bad_alloc&) {
    set_last_error("out of memory");
    return UCAW_ERR_BUDGET;
  } catch (const std::exception& e) {
    set_last_error(e.what());
    return UCAW_ERR_INTERNAL;
  } catch (...) {
    set_last_error("unknown error");
    return UCAW_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw InvalidArgument(std::string(what) + " is null");
}

void emit(const Json& doc, char** out) {
  require(out, "output pointer");
  const std::string text = doc.dump();
  char* buffer = static_cast<char*>(std::malloc(text.size() + 1));
  if (!buffer) throw std::bad_alloc();
  std::memcpy(buffer, text.c_str(), text.size() + 1);
  *out = buffer;
}

Budget make_budget(const ucaw_options* options) {
  ucaw_options o;
  ucaw_options_init(&o);
  if (options) o = *options;
  BudgetLimits limits;
  limits.max_tuples = o.max_tuples;
  if (o.max_millis > 0)
    limits.max_time = std::chrono::milliseconds(o.max_millis);
  return Budget(limits);
}

void finish(Json& doc, const Budget& budget, bool exact) {
  doc["tuples_used"] = budget.used();
  doc["bound_status"] = exact ? "exact" : "up-to-bound";
}

Json identity_json(const Identity& id, const Signature& sig) {
  Json j;
  j["lhs"] = to_string(id.lhs, sig);
  j["rhs"] = to_string(id.rhs, sig);
  j["variables"] = id.variables;
  return j;
}

Json pairs_json(const PairSet& pairs) {
  Json j = Json::array();
  for (auto [a, b] : pairs) j.push_back({a, b});
  return j;
}

}  // namespace ucaw::capi

extern "C" {

void ucaw_options_init(ucaw_options* options) {
  if (!options) return;
  options->max_tuples = ucaw::BudgetLimits{}.max_tuples;
  options->max_millis = 0;
}

const char* ucaw_version(void) { return "0.1.0"; }

const char* ucaw_last_error(void) { return ucaw::capi::last_error.c_str(); }

const char* ucaw_status_name(ucaw_status status) {
  switch (status) {
    case UCAW_OK:
      return "ok";
    case UCAW_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case UCAW_ERR_PARSE:
      return "parse error";
    case UCAW_ERR_PRECONDITION:
      return "precondition failed";
    case UCAW_ERR_BUDGET:
      return "budget exceeded";
    case UCAW_ERR_IO:
      return "i/o error";
    case UCAW_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

void ucaw_string_free(char* s) { std::free(s); }

}  // extern "C"
