#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>

namespace netdomain {

enum class MissingReason { timeout, memory, undefined_on_graph };

inline const char* to_string(MissingReason r) {
  switch (r) {
    case MissingReason::timeout: return "timeout";
    case MissingReason::memory: return "memory";
    default: return "undefined-on-graph";
  }
}

// Per-run resource cap. wall_time 0 means "already expired" and is the
// conventional way to disable a measure class.
struct Budget {
  double wall_time_s = 60.0;
  std::uint64_t memory_bytes = 4ULL << 30;
};

struct BudgetExceeded {
  MissingReason reason;
};

// Cooperative enforcement: long-running loops call tick() (clock checked
// every 256 ticks) and charge() before large allocations.
class BudgetGate {
 public:
  explicit BudgetGate(const Budget& b)
      : deadline_(clock::now() + std::chrono::duration_cast<clock::duration>(
                                     std::chrono::duration<double>(b.wall_time_s))),
        limit_(b.memory_bytes),
        expired_(b.wall_time_s <= 0.0) {}

  void check() {
    if (expired_ || clock::now() > deadline_) {
      expired_ = true;
      throw BudgetExceeded{MissingReason::timeout};
    }
  }

  void tick() {
    if ((++ticks_ & 0xff) == 0) check();
  }

  void charge(std::uint64_t bytes) {
    used_ += bytes;
    if (used_ > limit_) throw BudgetExceeded{MissingReason::memory};
  }

  void release(std::uint64_t bytes) { used_ -= bytes < used_ ? bytes : used_; }

 private:
  using clock = std::chrono::steady_clock;
  clock::time_point deadline_;
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
  std::uint64_t ticks_ = 0;
  bool expired_;
};

}  // namespace netdomain
