#pragma once

#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

#include "osum/types.hpp"

namespace osum {

// Pruning strategies. Disabling any of them must never change the mined set,
// only the amount of work done.
struct StrategyFlags {
  bool ldp = true;  // two-phase, depth: per-period prefix-extension bound
  bool lwp = true;  // two-phase, width: per-period reduced sequence bound
  bool arc = true;  // two-phase, verification skip in phase 2
  bool gdp = true;  // one-phase, depth
  bool gwp = true;  // one-phase, width
};

struct MiningOptions {
  Ratio xi;
  StrategyFlags strategies;
  std::uint32_t max_length{0};           // 0 = unlimited pattern length
  double time_limit_sec{10000.0};        // wall-clock budget
  std::uint64_t memory_limit_bytes{0};   // live mining structures; 0 = unlimited
  unsigned threads{1};                   // phase-1 period workers (two-phase miner)
};

struct MiningReport {
  std::vector<MinedPattern> patterns;  // sorted: length, then lexicographic

  // Distinct patterns instantiated: trie registrations for the two-phase
  // miner, projected databases built for the one-phase miner.
  std::uint64_t candidates_generated{0};
  // Projected-database constructions, counting per-period rebuilds.
  std::uint64_t chains_built{0};
  // Growth calls, plus phase-2 node visits for the two-phase miner.
  std::uint64_t nodes_visited{0};
  // Phase-2 fresh containment scans (periods verified outside phase 1).
  std::uint64_t phase2_utility_scans{0};

  double wall_ms{0};
  double phase1_ms{0};
  double phase2_ms{0};

  // Peak bytes of live mining structures (chains + candidate trie),
  // maintained by an exact internal counter.
  std::uint64_t peak_struct_bytes{0};
  // Process peak RSS after the run, best effort (0 when unavailable).
  std::uint64_t peak_rss_bytes{0};

  bool aborted{false};
  std::string abort_reason;
};

// Two-phase miner: per-period searches buffer candidates in a trie, then a
// verification pass computes missing per-period utilities and emits.
MiningReport mine_osums(const TemporalDatabase& db, const MiningOptions& options);

// One-phase miner: a single search over multi-period projected databases,
// emitting patterns as soon as their exact on-shelf ratio clears xi.
MiningReport mine_osums_plus(const TemporalDatabase& db, const MiningOptions& options);

// Exact live-byte accounting for mining structures.
class StructBytes {
 public:
  void add(std::size_t n) {
    std::uint64_t now = current_.fetch_add(n, std::memory_order_relaxed) + n;
    std::uint64_t seen = peak_.load(std::memory_order_relaxed);
    while (now > seen && !peak_.compare_exchange_weak(seen, now, std::memory_order_relaxed)) {
    }
  }
  void sub(std::size_t n) { current_.fetch_sub(n, std::memory_order_relaxed); }
  std::uint64_t current() const { return current_.load(std::memory_order_relaxed); }
  std::uint64_t peak() const { return peak_.load(std::memory_order_relaxed); }

 private:
  std::atomic<std::uint64_t> current_{0};
  std::atomic<std::uint64_t> peak_{0};
};

// Best-effort process peak RSS in bytes; 0 when the platform offers none.
std::uint64_t process_peak_rss_bytes();

}  // namespace osum
