#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "osum/qmatrix.hpp"
#include "osum/types.hpp"

namespace osum {

enum class ExtensionKind : std::uint8_t { I, S };

// One element per extension position of the pattern in one q-sequence:
// `acu` is the maximum utility over all instances ending at `pos`, `ru` the
// remaining utility behind the extension item there.
struct UtilityElement {
  std::uint32_t pos{0};
  Utility acu{0};
  Utility ru{0};
};

struct UtilityList {
  std::uint32_t seq_index{0};  // index into db.sequences / store.matrices
  PeriodId tid{0};
  Utility peu{0};  // cached prefix-extension utility of the pattern here
  std::vector<UtilityElement> elements;  // ascending pos, non-empty

  Utility max_acu() const;
  static Utility compute_peu(const std::vector<UtilityElement>& elements);
};

// Per-period rollup of a projected database.
struct PeriodSlice {
  PeriodId tid{0};
  Utility pu{0};    // sum over the period's lists of max_acu
  Utility tpeu{0};  // sum over the period's lists of peu
};

// Projected database ("utility chain") of one pattern: one utility list per
// containing q-sequence, ordered by sequence index — since sequences are
// sorted by (period, sequence id), lists are grouped by period.
struct ProjectedDatabase {
  Pattern pattern;
  std::vector<UtilityList> lists;

  bool empty() const { return lists.empty(); }
  std::vector<PeriodSlice> period_slices() const;
  // Approximate heap footprint, for the live-structure byte counter.
  std::size_t bytes() const;
};

// Builds the single-item projected databases straight from the matrices, in
// one pass. With `scope` set, only that period's sequences contribute.
// Returns (item, chain) pairs ascending by item; chains are non-empty.
std::vector<std::pair<ItemId, ProjectedDatabase>> build_single_item_chains(
    const MatrixStore& store, std::optional<PeriodId> scope);

// An extension candidate discovered by scanning a projected database, with
// its width bound accumulated per period: trsu_by_period sums the parent
// pattern's per-sequence peu over the sequences where this extension exists.
struct ExtensionCandidate {
  ItemId item{0};
  ExtensionKind kind{ExtensionKind::I};
  std::vector<std::pair<PeriodId, Utility>> trsu_by_period;  // ascending tid
  Utility trsu_total{0};
};

struct ExtensionScan {
  std::vector<ExtensionCandidate> i_candidates;  // ascending item
  std::vector<ExtensionCandidate> s_candidates;  // ascending item
};

// Enumerates itemset extensions (items greater than the pattern's last item,
// co-occurring at an extension position) and sequence extensions (items
// occurring strictly after the first extension position), restricted to
// items on shelf in each list's period.
ExtensionScan find_extension_items(const ProjectedDatabase& parent, const MatrixStore& store,
                                   const ShelfTable& shelf);

// Builds the child chain for one extension. Element sets shrink or stay per
// list; lists that lose all elements are dropped.
ProjectedDatabase extend_and_project(const ProjectedDatabase& parent, ItemId item,
                                     ExtensionKind kind, const MatrixStore& store);

// ---------------------------------------------------------------------------
// Direct (scan-based) counterparts, used by the two-phase verifier and as an
// internal cross-check for the chain algebra. All positions are 0-based.
// ---------------------------------------------------------------------------

// Max utility over instances of r ending at itemset `pos`; 0 when no
// instance ends there.
Utility utility_at_extension_position(const Pattern& r, std::uint32_t pos, const QSequence& s,
                                      const UtilityTable& utilities);

// u(r, s): max over all extension positions; 0 when r is not contained.
Utility pattern_utility(const Pattern& r, const QSequence& s, const UtilityTable& utilities);

// Remaining utility behind the extension item (the last item of r, placed at
// itemset `pos`): utilities of later itemsets plus same-itemset items with
// larger ids. 0 when the extension item is absent from itemset `pos`.
Utility rest_utility(const Pattern& r, std::uint32_t pos, const QSequence& s,
                     const UtilityTable& utilities);

// peu(r, s) = max over extension positions p of (u at p + ru at p when
// ru > 0, else 0).
Utility prefix_extension_utility(const Pattern& r, const QSequence& s,
                                 const UtilityTable& utilities);

// pu(r, t) = sum of u(r, s) over the q-sequences of period t.
Utility periodical_utility(const Pattern& r, const TemporalDatabase& db, PeriodId t);

// On-shelf periods of a pattern: intersection of its items' shelf sets.
std::vector<PeriodId> on_shelf_periods(const Pattern& r, const ShelfTable& shelf);

struct OnShelfStats {
  std::vector<PeriodId> ot;
  Utility ou{0};
  Utility denominator{0};  // sum of ptsu over ot
};

// Full on-shelf statistics of a pattern via direct scans.
OnShelfStats on_shelf_stats(const Pattern& r, const TemporalDatabase& db,
                            const PeriodAggregates& aggregates);

}  // namespace osum
