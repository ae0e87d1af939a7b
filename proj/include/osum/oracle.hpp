#pragma once

#include <cstdint>
#include <vector>

#include "osum/types.hpp"

namespace osum::oracle {

// Exhaustive reference miner. Deliberately shares no machinery with the
// miners: containment, instance enumeration, and utilities are recomputed
// from the raw sequences on every call. Intended for small inputs only.

struct OracleConfig {
  Ratio xi;
  std::uint32_t max_pattern_length{0};       // 0 = unlimited
  std::uint64_t budget{256};                 // refuse when items * max|s| exceeds this
  std::uint64_t max_candidates{5'000'000};   // emergency stop for runaway enumeration
  double time_limit_sec{10000.0};            // wall clock; LimitError when exceeded
};

struct OracleReport {
  std::vector<MinedPattern> patterns;  // sorted: length, then lexicographic
  std::uint64_t candidates{0};         // distinct contained patterns enumerated
};

// Recursive containment check (no shared code with find_instances).
bool contains(const Pattern& r, const QSequence& s);

// u(r, s) by explicit enumeration of every instance, grouping by extension
// position and maximizing. 0 when r is not contained in s.
Utility utility_by_instances(const Pattern& r, const QSequence& s, const UtilityTable& utilities);

// pu(r, t) over raw sequences.
Utility periodical_utility(const Pattern& r, const TemporalDatabase& db, PeriodId t);

// Every pattern of length <= cap (0 = unlimited) contained in at least one
// q-sequence, generated by exhaustive itemset-/sequence-extension with no
// pruning. Throws BudgetError when the upfront budget check fails or the
// enumeration exceeds max_candidates.
std::vector<Pattern> enumerate_all_patterns(const TemporalDatabase& db, const OracleConfig& config);

// Full reference mining run.
OracleReport mine(const TemporalDatabase& db, const OracleConfig& config);

}  // namespace osum::oracle
