#ifndef MOSP_SRC_ARITH_HPP
#define MOSP_SRC_ARITH_HPP

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "mosp/errors.hpp"
#include "mosp/instance.hpp"

namespace mosp::detail {

inline Time checked_add(Time a, Time b, const char* what = "addition") {
  Time out;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError(std::string(what) + " overflows 64 bits");
  return out;
}

inline Time checked_mul(Time a, Time b, const char* what = "multiplication") {
  Time out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError(std::string(what) + " overflows 64 bits");
  return out;
}

inline Time ceil_div(Time a, Time b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }
inline Time floor_div(Time a, Time b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

/// Work counter with an optional wall-clock deadline, polled every 1024 ticks.
class Budget {
 public:
  explicit Budget(const Limits& limits) : limit_(limits.node_budget) {
    if (limits.time_limit) deadline_ = std::chrono::steady_clock::now() + *limits.time_limit;
  }

  /// False once the node budget or the deadline is exhausted.
  bool tick() {
    ++used_;
    if (used_ > limit_) return false;
    if (deadline_ && (used_ & 1023U) == 0 && std::chrono::steady_clock::now() > *deadline_) {
      expired_ = true;
    }
    return !expired_;
  }
  std::uint64_t used() const { return used_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
  bool expired_ = false;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
};

}  // namespace mosp::detail

#endif  // MOSP_SRC_ARITH_HPP
