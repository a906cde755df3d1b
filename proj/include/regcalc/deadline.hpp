#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>

namespace regcalc {

struct ComputationTimeout : std::runtime_error {
  ComputationTimeout() : std::runtime_error("computation exceeded its time budget") {}
};

namespace detail {
inline thread_local std::optional<std::chrono::steady_clock::time_point> g_deadline;
}

/// Scoped per-thread time budget; Buchberger loops poll it. Nesting keeps
/// the tighter deadline.
class ScopedDeadline {
 public:
  explicit ScopedDeadline(std::chrono::milliseconds budget) : prev_(detail::g_deadline) {
    auto d = std::chrono::steady_clock::now() + budget;
    if (!prev_ || d < *prev_) detail::g_deadline = d;
  }
  ~ScopedDeadline() { detail::g_deadline = prev_; }
  ScopedDeadline(const ScopedDeadline&) = delete;
  ScopedDeadline& operator=(const ScopedDeadline&) = delete;

 private:
  std::optional<std::chrono::steady_clock::time_point> prev_;
};

inline void check_deadline() {
  if (detail::g_deadline && std::chrono::steady_clock::now() > *detail::g_deadline)
    throw ComputationTimeout{};
}

}  // namespace regcalc
