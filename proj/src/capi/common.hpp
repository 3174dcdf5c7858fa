#pragma once

// Shared plumbing of the C interface: handle layouts, exception-to-status
// mapping and JSON helpers.

#include <json.hpp>
#include <string>
#include <vector>

#include "ucaw/algebra.hpp"
#include "ucaw/budget.hpp"
#include "ucaw/clonoid.hpp"
#include "ucaw/term.hpp"
#include "ucaw/ucaw.h"
#include "ucaw/variety.hpp"

struct ucaw_algebra {
  ucaw::FiniteAlgebra alg;
};

struct ucaw_clonoid_spec {
  ucaw::FiniteAlgebra target;
  std::size_t source_size;
  std::vector<ucaw::Seed> seeds;
};

namespace ucaw::capi {

using Json = nlohmann::ordered_json;

void set_last_error(std::string message);

ucaw_status status_of_current_exception() noexcept;

/// Maps exceptions thrown by `body` to status codes and the last error.
template <class Body>
ucaw_status guarded(Body&& body) noexcept {
  try {
    body();
    set_last_error({});
    return UCAW_OK;
  } catch (...) {
    return status_of_current_exception();
  }
}

/// Throws InvalidArgument for null pointers.
void require(const void* p, const char* what);

/// Allocates `doc.dump()` for the caller.
void emit(const Json& doc, char** out);

Budget make_budget(const ucaw_options* options);

/// Adds "tuples_used" and "bound_status" to a result document.
void finish(Json& doc, const Budget& budget, bool exact);

Json identity_json(const Identity& id, const Signature& sig);
Json pairs_json(const PairSet& pairs);

}  // namespace ucaw::capi
