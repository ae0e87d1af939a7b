#pragma once

// Shared plumbing of the two miners: deadline/limit bookkeeping and the
// emission comparator. Internal to the library.

#include <algorithm>
#include <atomic>
#include <chrono>

#include "osum/miner.hpp"
#include "osum/projection.hpp"
#include "osum/qmatrix.hpp"

namespace osum::detail {

using Clock = std::chrono::steady_clock;

inline double ms_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

struct RunLimits {
  Clock::time_point deadline;
  std::uint64_t memory_limit_bytes{0};
  StructBytes* bytes{nullptr};
  std::atomic<bool> aborted{false};
  std::atomic<int> reason{0};  // 1 = time, 2 = memory

  explicit RunLimits(const MiningOptions& options, StructBytes* counter)
      : deadline(Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                    std::chrono::duration<double>(options.time_limit_sec))),
        memory_limit_bytes(options.memory_limit_bytes),
        bytes(counter) {}

  // Cheap enough to call at every growth step.
  bool check() {
    if (aborted.load(std::memory_order_relaxed)) return true;
    if (memory_limit_bytes != 0 && bytes->current() > memory_limit_bytes) {
      trip(2);
      return true;
    }
    if (ticks_.fetch_add(1, std::memory_order_relaxed) % 64 == 0 && Clock::now() > deadline) {
      trip(1);
      return true;
    }
    return false;
  }

  void trip(int why) {
    aborted.store(true, std::memory_order_relaxed);
    int expected = 0;
    reason.compare_exchange_strong(expected, why);
  }

  const char* reason_text() const {
    switch (reason.load()) {
      case 1:
        return "time limit exceeded";
      case 2:
        return "memory limit exceeded";
      default:
        return "";
    }
  }

 private:
  std::atomic<std::uint64_t> ticks_{0};
};

inline void finalize_report(MiningReport& report, const StructBytes& bytes,
                            const RunLimits& limits) {
  std::sort(report.patterns.begin(), report.patterns.end(),
            [](const MinedPattern& a, const MinedPattern& b) {
              return pattern_less(a.pattern, b.pattern);
            });
  report.peak_struct_bytes = bytes.peak();
  report.peak_rss_bytes = process_peak_rss_bytes();
  if (limits.aborted.load()) {
    report.aborted = true;
    report.abort_reason = limits.reason_text();
  }
}

}  // namespace osum::detail
