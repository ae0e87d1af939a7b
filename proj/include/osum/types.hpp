#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "osum/errors.hpp"

namespace osum {

using ItemId = std::uint32_t;    // >= 1
using PeriodId = std::uint32_t;  // >= 1
using SequenceId = std::uint32_t;
using Utility = std::int64_t;    // exact utility units (quantity * unit profit)

// ---------------------------------------------------------------------------
// Exact rational threshold in (0, 1]. All threshold comparisons are integer
// cross-multiplications (128-bit intermediates); no floating point ever
// decides emission or pruning.
// ---------------------------------------------------------------------------
struct Ratio {
  std::int64_t num{0};
  std::int64_t den{1};

  // Accepts "0.3", ".5", "1", "1.0", or "a/b". At most 9 decimal digits.
  // Throws ValidationError unless 0 < value <= 1.
  static Ratio parse(std::string_view text);

  // value / base >= num/den, with value required positive (a zero-utility
  // pattern never clears a positive threshold; this also makes the base == 0
  // corner well-defined).
  bool admits(Utility value, Utility base) const {
    if (value <= 0) return false;
    return static_cast<__int128>(value) * den >= static_cast<__int128>(num) * base;
  }

  double as_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// ---------------------------------------------------------------------------
// Quantitative sequence data.
// ---------------------------------------------------------------------------
struct QItem {
  ItemId item{0};
  std::uint32_t quantity{0};

  bool operator==(const QItem&) const = default;
};

struct QItemset {
  std::vector<QItem> items;  // strictly ascending by item id

  bool operator==(const QItemset&) const = default;

  // Quantity of `item` in this itemset, 0 when absent.
  std::uint32_t quantity_of(ItemId item) const;
  bool contains(ItemId item) const { return quantity_of(item) != 0; }
};

struct QSequence {
  PeriodId tid{0};
  SequenceId sid{0};
  std::vector<QItemset> itemsets;  // non-empty; each itemset non-empty

  bool operator==(const QSequence&) const = default;

  // Total q-item count |s|.
  std::size_t length() const;
};

// item -> unit profit (>= 1). Lookup of an unknown item throws.
class UtilityTable {
 public:
  void set(ItemId item, Utility profit);
  Utility profit(ItemId item) const;
  bool contains(ItemId item) const { return profit_.count(item) != 0; }
  std::size_t size() const { return profit_.size(); }
  const std::map<ItemId, Utility>& entries() const { return profit_; }

  bool operator==(const UtilityTable&) const = default;

 private:
  std::map<ItemId, Utility> profit_;
};

// item -> sorted set of periods the item is on shelf in.
class ShelfTable {
 public:
  void add(ItemId item, PeriodId period);
  bool contains(ItemId item, PeriodId period) const;
  bool has_item(ItemId item) const { return periods_.count(item) != 0; }
  // Sorted periods of `item`; empty vector when the item is unknown.
  const std::vector<PeriodId>& of(ItemId item) const;
  std::size_t size() const { return periods_.size(); }
  const std::map<ItemId, std::vector<PeriodId>>& entries() const { return periods_; }

  bool operator==(const ShelfTable&) const = default;

 private:
  std::map<ItemId, std::vector<PeriodId>> periods_;
  static const std::vector<PeriodId> kEmpty;
};

struct TemporalDatabase {
  std::vector<QSequence> sequences;  // sorted by (tid, sid); (tid, sid) unique
  UtilityTable utilities;
  ShelfTable shelf;
  std::vector<PeriodId> periods;  // sorted universe: sequence periods U shelf periods

  bool operator==(const TemporalDatabase&) const = default;

  // Distinct items occurring in the sequences, ascending.
  std::vector<ItemId> items() const;

  // Enforces every structural rule: itemset ordering, positive quantities,
  // unique (tid, sid), utility entry for every item, non-empty shelf sets,
  // shelf consistency (an item never occurs off-shelf), and period coverage.
  // Throws ValidationError with a specific message on the first violation.
  void validate() const;

  // Recomputes `periods` from sequences and shelf entries.
  void refresh_periods();
};

// ---------------------------------------------------------------------------
// Patterns (sequences of plain itemsets, quantities abstracted away).
// ---------------------------------------------------------------------------
struct Pattern {
  std::vector<std::vector<ItemId>> itemsets;  // each strictly ascending, non-empty

  bool operator==(const Pattern&) const = default;

  bool empty() const { return itemsets.empty(); }
  std::size_t length() const;  // total item count
  ItemId last_item() const;    // last item of the last itemset (pattern non-empty)

  // Append `item` to the last itemset (requires item > last_item()).
  Pattern i_extended(ItemId item) const;
  // Open a new itemset containing `item`.
  Pattern s_extended(ItemId item) const;

  static Pattern single(ItemId item) { return Pattern{{{item}}}; }

  // "{1 2}{3}" style.
  std::string to_string() const;
};

// Canonical output order: shorter patterns first, then lexicographic.
bool pattern_less(const Pattern& a, const Pattern& b);

struct PatternLess {
  bool operator()(const Pattern& a, const Pattern& b) const { return pattern_less(a, b); }
};

// A mined pattern together with its on-shelf statistics. `shelf_ptsu` is the
// total sequence utility over the pattern's on-shelf periods (the denominator
// of the on-shelf utility ratio).
struct MinedPattern {
  Pattern pattern;
  Utility ou{0};
  Utility shelf_ptsu{0};
  std::vector<PeriodId> ot;  // ascending

  double our() const {
    return shelf_ptsu > 0 ? static_cast<double>(ou) / static_cast<double>(shelf_ptsu) : 0.0;
  }

  bool operator==(const MinedPattern&) const = default;
};

// ---------------------------------------------------------------------------
// Elementary utility operations.
// ---------------------------------------------------------------------------

// quantity * unit profit. Throws ValidationError for unknown items.
Utility item_utility(ItemId item, std::uint32_t quantity, const UtilityTable& utilities);

// Sum of item utilities over a whole q-sequence.
Utility q_sequence_utility(const QSequence& s, const UtilityTable& utilities);

// One instance = one strictly increasing tuple of itemset indices (0-based),
// one index per pattern itemset. The last index is the extension position.
using InstancePositions = std::vector<std::uint32_t>;

// All instances of `r` in `s`, in lexicographic order of the index tuples.
// Empty result <=> r is not contained in s. The empty pattern has no
// instances by convention.
std::vector<InstancePositions> find_instances(const Pattern& r, const QSequence& s);

// True when every item of `wanted` occurs in `have` (both strictly ascending).
bool itemset_covers(const QItemset& have, const std::vector<ItemId>& wanted);

}  // namespace osum
