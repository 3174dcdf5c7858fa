#include "ucaw/budget.hpp"

#include <string>

#include "ucaw/error.hpp"

namespace ucaw {

Budget::Budget(BudgetLimits limits, const std::atomic<bool>* cancel)
    : limits_(limits), cancel_(cancel), start_(std::chrono::steady_clock::now()) {}

void Budget::charge(std::uint64_t tuples) {
  used_ += tuples;
  if (used_ > limits_.max_tuples)
    throw BudgetExceeded("tuple budget of " +
                         std::to_string(limits_.max_tuples) + " exhausted");
}

void Budget::poll() {
  if (cancel_ && cancel_->load(std::memory_order_relaxed))
    throw BudgetExceeded("cancelled");
  if (limits_.max_time &&
      std::chrono::steady_clock::now() - start_ > *limits_.max_time)
    throw BudgetExceeded("time budget of " +
                         std::to_string(limits_.max_time->count()) +
                         " ms exhausted");
}

}  // namespace ucaw
