#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>

namespace ucaw {

struct BudgetLimits {
  /// Upper bound on the total number of tuples created by closures.
  std::uint64_t max_tuples = 10'000'000;
  /// Wall-clock limit; unset means no limit.
  std::optional<std::chrono::milliseconds> max_time;
};

/// Deterministic work counter shared by the closure engines of one command.
///
/// The tuple counter is cumulative over every computation charged to the
/// budget, so reported counts depend only on the inputs. The time limit and
/// the cancellation flag are the only non-deterministic failure sources.
class Budget {
 public:
  Budget() : Budget(BudgetLimits{}) {}
  explicit Budget(BudgetLimits limits,
                  const std::atomic<bool>* cancel = nullptr);

  /// Record `tuples` newly created tuples; throws BudgetExceeded past the limit.
  void charge(std::uint64_t tuples = 1);

  /// Check the deadline and the cancellation token.
  void poll();

  std::uint64_t used() const noexcept { return used_; }
  const BudgetLimits& limits() const noexcept { return limits_; }

 private:
  BudgetLimits limits_;
  const std::atomic<bool>* cancel_ = nullptr;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t used_ = 0;
};

}  // namespace ucaw
